#pragma once

#include <string>
#include <vector>

#include "bbmstab/nonlinearity.hpp"

namespace bbmstab {

// Built-in coefficient families used by the example command and the golden
// tests.  Each pins analytically known values the generic pipeline must hit.

// b1 (u^(p+2) + v^(p+2))/(p+2) + b2 (u^(p+1) v + u v^(p+1))
HomogeneousNonlinearity symmetric_family(int p, double b1, double b2);

// odd-order family with det M = -1/q at mu = 1, p = 2q - 1:
//   -(u^(2q+1) + v^(2q+1)) / (2(2q+1)) + (u^(q+1) v^q + u^q v^(q+1)) / 2
HomogeneousNonlinearity negative_det_family(int q);

// u^(q+1) v^(q+1) / (q+1), p = 2q, det M = -1/(p+1) at mu = 1
HomogeneousNonlinearity product_family(int q);

// (a u^(p+2) + b v^(p+2)) / (p+2)
HomogeneousNonlinearity decoupled_family(int p, double a, double b);

// u^4/4 + beta u^2 v^2 / 2 + v^4/4  (p = 2)
HomogeneousNonlinearity quartic_family(double beta);

struct GoldenCheck {
    std::string label;
    double expected;
    double actual;
    double tolerance;  // absolute on O(1) quantities
    bool pass() const;
};

struct GoldenFlag {
    std::string label;
    bool pass;
    std::string detail;
};

struct ExampleReport {
    int example;
    std::vector<GoldenCheck> checks;
    std::vector<GoldenFlag> flags;
    bool all_pass() const;
    std::string render(bool failures_only = false) const;
};

ExampleReport run_example(int n);  // n in 1..4

}  // namespace bbmstab
