#include "bbmstab/wave.hpp"

#include <cmath>

#include "bbmstab/errors.hpp"

namespace bbmstab {

WaveProfile::WaveProfile(int p, double omega, double hu, double mu)
    : p_(p), omega_(omega), hu_(hu), mu_(mu) {
    if (p < 1) throw DomainError("wave exponent p must be >= 1");
    if (!(omega > 1.0)) throw DomainError("wave speed must exceed 1");
    if (!(hu > 0.0)) throw NotAdmissibleError("H_u(1,mu) must be positive");
    amp_ = (p + 2) * (omega - 1.0) / (2.0 * hu);
    width_ = 0.5 * p * std::sqrt((omega - 1.0) / omega);
}

double WaveProfile::phi(double x) const {
    const double sech = 1.0 / std::cosh(width_ * x);
    return std::pow(amp_ * sech * sech, 1.0 / p_);
}

double WaveProfile::dphi(double x) const {
    const double sech = 1.0 / std::cosh(width_ * x);
    return -(2.0 / p_) * std::pow(amp_, 1.0 / p_) * width_ * std::sinh(width_ * x) *
           std::pow(sech, 2.0 / p_ + 1.0);
}

double WaveProfile::phi0(double x) const {
    const double sech = 1.0 / std::cosh(width_ * x);
    return 0.5 * (p_ + 1) * (p_ + 2) * (omega_ - 1.0) * sech * sech;
}

double WaveProfile::ode_residual(double x) const {
    // phi'' from d^2/dx^2 sech^c(Bx) = c B^2 sech^c (c tanh^2 - sech^2)
    const double c = 2.0 / p_;
    const double sech = 1.0 / std::cosh(width_ * x);
    const double tanh = std::tanh(width_ * x);
    const double f = std::pow(amp_, 1.0 / p_) * std::pow(sech, c);
    const double ddf = c * width_ * width_ * f * (c * tanh * tanh - sech * sech);
    const double r = -omega_ * ddf + (omega_ - 1.0) * f - hu_ * std::pow(f, p_ + 1);
    const double scale = (omega_ - 1.0) * std::pow(amp_, 1.0 / p_);
    return std::abs(r) / scale;
}

}  // namespace bbmstab
