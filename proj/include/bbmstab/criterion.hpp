#pragma once

#include <array>
#include <optional>
#include <string>

#include "bbmstab/nonlinearity.hpp"

namespace bbmstab {

// M = Hess H(1,mu) / ((p+1) H_u(1,mu)).  Its eigenvalues are exactly
// {1, det M}, with eigenvector along (1,mu) for the eigenvalue 1; the
// orthogonal matrix O diagonalizes it, first column the unit (1,mu)
// direction, columns signed so their first nonzero component is positive.
struct CriterionMatrix {
    std::array<std::array<double, 2>, 2> entries;
    double det;
    std::array<double, 2> eigenvalues;  // {1, det}
    std::array<std::array<double, 2>, 2> orthogonal;
};

CriterionMatrix build_criterion_matrix(const HomogeneousNonlinearity& h,
                                       const ProportionalRatio& ratio);

double positivity_threshold(int p);  // 1/(p+1)

enum class VerdictKind {
    StableAllSpeeds,   // det < 1/(p+1), p <= 4
    ThresholdStable,   // det < 1/(p+1), p > 4: stable for speeds above omega_p
    CriterionFails,    // det >= 1/(p+1); no instability claim attached
    NotAdmissible,     // H_u(1,mu) <= 0
};

std::string verdict_name(VerdictKind kind);

struct StabilityVerdict {
    VerdictKind kind;
    double det;
    double bound;                   // 1/(p+1)
    std::optional<double> omega_p;  // present iff ThresholdStable
};

// omega_p must be supplied when p > 4 and the determinant condition holds
// (it comes from the moment analysis); a missing one throws
// MissingThresholdError.
StabilityVerdict classify(const CriterionMatrix& m, int p,
                          std::optional<double> omega_p = std::nullopt);

// Symmetric two-coefficient family
//   H = b1 (u^(p+2) + v^(p+2))/(p+2) + b2 (u^(p+1) v + u v^(p+1)),  mu = 1:
// det M = (b1 + (p-2) b2) / (b1 + (p+2) b2), admissible iff b1 > -(p+2) b2.
double symmetric_family_det(int p, double b1, double b2);
// det M < 1/(p+1) on the admissible side exactly when b1 < this value
double symmetric_family_boundary(int p, double b2);  // (4 + 2p - p^2) b2 / p
// classical closed form quoted for the same family
double symmetric_family_bound(int p, double b2);     // -(p+1)(p-3) b2 / p

}  // namespace bbmstab
