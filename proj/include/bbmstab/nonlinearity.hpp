#pragma once

#include <array>
#include <vector>

namespace bbmstab {

// Bivariate homogeneous polynomial H(u,v) = sum_i c[i] u^i v^(m-i) of total
// degree m = p+2, the coupling potential of the two-component dispersive
// system. p >= 1 is the order parameter of the nonlinearity.
class HomogeneousNonlinearity {
  public:
    HomogeneousNonlinearity(int p, std::vector<double> coeffs);

    int p() const { return p_; }
    int degree() const { return p_ + 2; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    double eval(double u, double v) const;

    // (H_u, H_v)
    std::array<double, 2> grad(double u, double v) const;

    struct Hessian {
        double uu, uv, vv;
    };
    Hessian hessian(double u, double v) const;

    HomogeneousNonlinearity scaled(double factor) const;

  private:
    int p_;
    std::vector<double> coeffs_;  // coeffs_[i] multiplies u^i v^(m-i)
};

// A root mu of H_v(1,mu) = mu H_u(1,mu). Waves proportional along (1,mu)
// exist only when hu = H_u(1,mu) > 0.
struct ProportionalRatio {
    double mu;
    double hu;
    bool admissible;  // hu > 0
};

struct RatioSet {
    std::vector<ProportionalRatio> ratios;  // sorted by mu ascending
    bool continuum = false;  // proportionality holds identically in mu
    bool empty() const { return ratios.empty() && !continuum; }
};

// All real roots of the degree-(p+2) proportionality polynomial, found via
// the companion matrix of the trimmed polynomial, one Newton polish per root,
// imaginary-part filter |im| <= 1e-8 (1+|re|), dedup within 1e-9.
RatioSet find_ratios(const HomogeneousNonlinearity& h);

// |H_v(1,mu) - mu H_u(1,mu)|, the defect of mu as a proportionality ratio.
double ratio_residual(const HomogeneousNonlinearity& h, double mu);

// Residuals of the two Euler-type second-derivative identities
//   H_uu(1,mu) + mu H_uv(1,mu) - (p+1) H_u(1,mu)
//   H_uv(1,mu) + mu H_vv(1,mu) - (p+1) mu H_u(1,mu)
// Both vanish identically for any homogeneous H; the residuals are pure
// floating-point noise and serve as a self-check.
std::array<double, 2> hessian_identity_residuals(const HomogeneousNonlinearity& h,
                                                 double mu);

}  // namespace bbmstab
