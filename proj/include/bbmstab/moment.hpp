#pragma once

#include <optional>
#include <vector>

namespace bbmstab {

// Conserved functionals of the two-component evolution on a periodic grid:
//   quadratic = 1/2 int u^2 + u_x^2 + v^2 + v_x^2 dx
//   energy    = -1/2 int u^2 + v^2 + 2 H(u,v) dx
// Derivatives are taken pseudo-spectrally, quadrature is the periodic
// trapezoid rule.
struct ConservedPair {
    double quadratic;
    double energy;
};

class HomogeneousNonlinearity;
ConservedPair conserved(const std::vector<double>& u, const std::vector<double>& v,
                        double dx, const HomogeneousNonlinearity& h);

// Speed-independent constants of the wave's quadratic functional:
//   quadratic(wave at speed omega)
//     = theta1 (omega-1)^(2/p) sqrt(omega/(omega-1))
//     + theta2 (omega-1)^(2/p) sqrt((omega-1)/omega)
// with pre = ((1+mu^2)/2) ((p+2)/(2 hu))^(2/p),
//   theta1 = pre (2/p) I1,  I1 = int sech^(4/p)(y) dy,
//   theta2 = pre (2/p) I2,  I2 = int sinh^2(y) sech^(4/p+2)(y) dy = I1 p/(p+4).
struct MomentConstants {
    int p;
    double mu, hu;
    double i1, i2;
    double theta1, theta2;
};

MomentConstants moment_constants(int p, double mu, double hu);

// closed form: int sech^a = sqrt(pi) Gamma(a/2) / Gamma((a+1)/2)
double sech_power_integral(double a);
// same integral by adaptive quadrature with tail bound 1e-12 (cross-check)
double sech_power_integral_quadrature(double a);

// first derivative of the action d(omega): equals the quadratic functional
// of the wave, via the theta form and via direct profile quadrature
double dprime(const MomentConstants& c, double omega);
double dprime_quadrature(const MomentConstants& c, double omega);

// d''(omega) = (omega-1)^(2/p - 3/2) omega^(-3/2) q(omega),
// q(omega) = (2/p)(theta1+theta2) omega^2
//          - (theta1/2 + 2 theta2/p - theta2/2) omega - theta2/2.
// q(1) = 2 theta1 (1/p - 1/4) identically.
double q_poly(const MomentConstants& c, double omega);
double d_second(const MomentConstants& c, double omega);

// centered difference of the quadrature dprime, Richardson-checked; throws
// StepTooLargeError when the truncation estimate exceeds 1e-4 relative
double d_second_fd(const MomentConstants& c, double omega, double step = 1e-3);

// Root of q in (1, inf): none for p <= 4 (q > 0 there); for p > 4 the larger
// root, by a cancellation-safe quadratic formula.  Independent of mu and hu.
std::optional<double> omega_threshold(const MomentConstants& c);
double omega_threshold_closed_form(int p);  // p(2 + sqrt(2(p+4)))/(4(p+2))

struct DprimeSample {
    double omega;
    double dprime;
    double d_second;
};
// parallel over the grid, capped by thread_cap()
std::vector<DprimeSample> dprime_table(const MomentConstants& c,
                                       const std::vector<double>& omegas);

}  // namespace bbmstab
