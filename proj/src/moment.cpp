#include "bbmstab/moment.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <numbers>
#include <thread>

#include "bbmstab/errors.hpp"
#include "bbmstab/fft.hpp"
#include "bbmstab/nonlinearity.hpp"
#include "bbmstab/util.hpp"
#include "bbmstab/wave.hpp"

namespace bbmstab {

ConservedPair conserved(const std::vector<double>& u, const std::vector<double>& v,
                        double dx, const HomogeneousNonlinearity& h) {
    const double length = dx * static_cast<double>(u.size());
    const auto ux = spectral_derivative(u, length);
    const auto vx = spectral_derivative(v, length);
    double quad = 0.0, en = 0.0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        quad += u[j] * u[j] + ux[j] * ux[j] + v[j] * v[j] + vx[j] * vx[j];
        en += 0.5 * (u[j] * u[j] + v[j] * v[j]) + h.eval(u[j], v[j]);
    }
    return {0.5 * dx * quad, -dx * en};
}

double sech_power_integral(double a) {
    // int sech^a = sqrt(pi) Gamma(a/2) / Gamma((a+1)/2)
    return std::sqrt(std::numbers::pi) *
           std::exp(std::lgamma(0.5 * a) - std::lgamma(0.5 * (a + 1.0)));
}

namespace {

template <typename F>
double tail_bounded_integral(F f, double decay_rate) {
    // integrand ~ C e^{-decay_rate |y|}; cut where the tail is < 1e-12 of it
    const double y = 28.0 / decay_rate + 5.0;
    double error = 0.0;
    const double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, -y, y, 15, 1e-13, &error);
    if (!(std::abs(value) > 0.0) || error > 1e-10 * std::abs(value))
        throw QuadratureError("profile integral did not converge");
    return value;
}

}  // namespace

double sech_power_integral_quadrature(double a) {
    return tail_bounded_integral(
        [a](double y) { return std::pow(1.0 / std::cosh(y), a); }, a);
}

MomentConstants moment_constants(int p, double mu, double hu) {
    if (p < 1) throw DomainError("p must be >= 1");
    if (!(hu > 0.0)) throw NotAdmissibleError("H_u(1,mu) must be positive");
    MomentConstants c;
    c.p = p;
    c.mu = mu;
    c.hu = hu;
    const double a = 4.0 / p;
    c.i1 = sech_power_integral_quadrature(a);
    c.i2 = tail_bounded_integral(
        [a](double y) {
            const double sh = std::sinh(y);
            return sh * sh * std::pow(1.0 / std::cosh(y), a + 2.0);
        },
        a);
    const double pre = 0.5 * (1.0 + mu * mu) *
                       std::pow((p + 2) / (2.0 * hu), 2.0 / p);
    c.theta1 = pre * (2.0 / p) * c.i1;
    c.theta2 = pre * (2.0 / p) * c.i2;
    return c;
}

namespace {

void require_speed(double omega) {
    if (!(omega >= 1.0 + 1e-6))
        throw DomainError("wave speed must be at least 1 + 1e-6");
}

}  // namespace

double dprime(const MomentConstants& c, double omega) {
    require_speed(omega);
    const double g = std::pow(omega - 1.0, 2.0 / c.p);
    return g * (c.theta1 * std::sqrt(omega / (omega - 1.0)) +
                c.theta2 * std::sqrt((omega - 1.0) / omega));
}

double dprime_quadrature(const MomentConstants& c, double omega) {
    require_speed(omega);
    const WaveProfile wave(c.p, omega, c.hu, c.mu);
    const double rate = 4.0 * wave.width() / c.p;  // decay of phi^2 and phi_x^2
    const double integral = tail_bounded_integral(
        [&wave](double x) {
            const double f = wave.phi(x);
            const double df = wave.dphi(x);
            return f * f + df * df;
        },
        rate);
    return 0.5 * (1.0 + c.mu * c.mu) * integral;
}

double q_poly(const MomentConstants& c, double omega) {
    const double a = (2.0 / c.p) * (c.theta1 + c.theta2);
    const double b = -(0.5 * c.theta1 + (2.0 / c.p) * c.theta2 - 0.5 * c.theta2);
    const double cc = -0.5 * c.theta2;
    return (a * omega + b) * omega + cc;
}

double d_second(const MomentConstants& c, double omega) {
    require_speed(omega);
    return std::pow(omega - 1.0, 2.0 / c.p - 1.5) * std::pow(omega, -1.5) *
           q_poly(c, omega);
}

double d_second_fd(const MomentConstants& c, double omega, double step) {
    if (!(omega - step > 1.0))
        throw DomainError("difference stencil must stay right of omega = 1");
    auto diff = [&](double h) {
        return (dprime_quadrature(c, omega + h) - dprime_quadrature(c, omega - h)) /
               (2.0 * h);
    };
    const double coarse = diff(step);
    const double fine = diff(0.5 * step);
    const double extrapolated = fine + (fine - coarse) / 3.0;
    const double truncation = std::abs(fine - coarse) / 3.0;
    if (truncation > 1e-4 * std::max(1e-30, std::abs(extrapolated)))
        throw StepTooLargeError("difference step too large for 1e-4 accuracy");
    return extrapolated;
}

std::optional<double> omega_threshold(const MomentConstants& c) {
    if (c.p <= 4) return std::nullopt;  // q > 0 on (1, inf)
    const double a = (2.0 / c.p) * (c.theta1 + c.theta2);
    const double b = -(0.5 * c.theta1 + (2.0 / c.p) * c.theta2 - 0.5 * c.theta2);
    const double cc = -0.5 * c.theta2;
    const double disc = b * b - 4.0 * a * cc;
    const double tmp = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    return std::max(tmp / a, cc / tmp);
}

double omega_threshold_closed_form(int p) {
    return p * (2.0 + std::sqrt(2.0 * (p + 4))) / (4.0 * (p + 2));
}

std::vector<DprimeSample> dprime_table(const MomentConstants& c,
                                       const std::vector<double>& omegas) {
    std::vector<DprimeSample> table(omegas.size());
    const int workers =
        std::min<int>(thread_cap(), static_cast<int>(omegas.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < omegas.size(); ++i)
            table[i] = {omegas[i], dprime(c, omegas[i]), d_second(c, omegas[i])};
        return table;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < omegas.size(); i += workers)
                table[i] = {omegas[i], dprime(c, omegas[i]), d_second(c, omegas[i])};
        });
    }
    for (auto& t : pool) t.join();
    return table;
}

}  // namespace bbmstab
