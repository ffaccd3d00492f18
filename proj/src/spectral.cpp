#include "bbmstab/spectral.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "bbmstab/criterion.hpp"
#include "bbmstab/errors.hpp"
#include "bbmstab/fft.hpp"

namespace bbmstab {

PoschlTellerSpectrum poschl_teller_spectrum(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("potential depth must be positive");
    PoschlTellerSpectrum out;
    out.alpha = alpha;
    out.s = 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * alpha));
    const int top = static_cast<int>(std::ceil(out.s));
    for (int n = 1; n <= top; ++n) {
        const double eps = out.s - top + n;
        if (eps <= 0.0) continue;
        out.eigenvalues.push_back(-eps * eps);
    }
    std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
    return out;
}

namespace {

bool near_integer(double x) { return std::abs(x - std::round(x)) <= 1e-9; }

}  // namespace

std::function<double(double)> legendre_eigenfunction(double s, double eps) {
    if (near_integer(s) && s >= 1.0 && s <= 3.0) {
        if (!near_integer(eps) || eps < 1.0 || eps > s)
            throw UnsupportedError("order must be an integer in [1, s]");
        const unsigned l = static_cast<unsigned>(std::llround(s));
        const unsigned m = static_cast<unsigned>(std::llround(eps));
        const double sign = (m % 2 == 0) ? 1.0 : -1.0;  // Condon-Shortley
        return [l, m, sign](double y) {
            return sign * std::assoc_legendre(l, m, std::tanh(y));
        };
    }
    if (std::abs(eps - s) <= 1e-12 && s > 0.0) {
        return [s](double y) { return std::pow(1.0 / std::cosh(y), s); };
    }
    throw UnsupportedError(
        "only integer degree up to 3, or the sech^s ground state, is tabulated");
}

std::vector<double> sample_eigenfunction(double s, double eps,
                                         const std::vector<double>& y) {
    auto f = legendre_eigenfunction(s, eps);
    std::vector<double> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) out[i] = f(y[i]);
    return out;
}

namespace {

// Least n_eigs eigenvalues of -a u'' + q(x) u on (-L, L), Dirichlet,
// second-order central differences, n subintervals (matrix n-1).
std::vector<double> fd_spectrum(double a, const std::function<double(double)>& q,
                                double half_width, std::size_t n, int n_eigs) {
    const std::size_t m = n - 1;
    const double h = 2.0 * half_width / static_cast<double>(n);
    Eigen::VectorXd diag(m), sub(m - 1);
    for (std::size_t i = 0; i < m; ++i) {
        const double x = -half_width + h * static_cast<double>(i + 1);
        diag[static_cast<Eigen::Index>(i)] = 2.0 * a / (h * h) + q(x);
    }
    sub.setConstant(-a / (h * h));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    const auto& ev = solver.eigenvalues();
    const int k = std::min<int>(n_eigs, static_cast<int>(m));
    return {ev.data(), ev.data() + k};
}

// h^2 -> h^6 Richardson ladder over n, n/2, n/4 per eigenvalue index
std::vector<double> richardson_triple(const std::vector<double>& fine,
                                      const std::vector<double>& mid,
                                      const std::vector<double>& coarse) {
    std::vector<double> out(fine.size());
    for (std::size_t i = 0; i < fine.size(); ++i) {
        const double r1 = fine[i] + (fine[i] - mid[i]) / 3.0;
        const double r2 = mid[i] + (mid[i] - coarse[i]) / 3.0;
        out[i] = r1 + (r1 - r2) / 15.0;
    }
    return out;
}

std::vector<double> operator_spectrum(double a, const std::function<double(double)>& q,
                                      double half_width, const DiscretizationParams& p) {
    switch (p.scheme) {
        case Scheme::FiniteDifference:
            return fd_spectrum(a, q, half_width, p.n_points, p.n_eigs);
        case Scheme::FiniteDifferenceRichardson: {
            const std::size_t n = p.n_points;
            if (n % 8 != 0 || n < 64)
                throw DomainError("refinement scheme needs n divisible by 8");
            auto l0 = fd_spectrum(a, q, half_width, n, p.n_eigs);
            auto l1 = fd_spectrum(a, q, half_width, n / 2, p.n_eigs);
            auto l2 = fd_spectrum(a, q, half_width, n / 4, p.n_eigs);
            auto l3 = fd_spectrum(a, q, half_width, n / 8, p.n_eigs);
            auto best = richardson_triple(l0, l1, l2);
            auto prev = richardson_triple(l1, l2, l3);
            const double shift = std::abs(best[0] - prev[0]);
            if (shift > 1e-6 * (1.0 + std::abs(best[0])))
                throw GridTooCoarseError("least eigenvalue still moving under refinement",
                                         shift);
            return best;
        }
        case Scheme::Fourier: {
            // dense periodic collocation on [-L, L); Trefethen's closed-form
            // second-derivative matrix for an even number of points
            const std::size_t n = p.n_points;
            if (n % 2 != 0) throw DomainError("collocation needs even n");
            const double span = 2.0 * half_width;
            const double hh = 2.0 * std::numbers::pi / static_cast<double>(n);
            const double scale = std::pow(2.0 * std::numbers::pi / span, 2);
            Eigen::MatrixXd op(n, n);
            const double diag2 =
                -(std::numbers::pi * std::numbers::pi) / (3.0 * hh * hh) - 1.0 / 6.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double x = -half_width + span * static_cast<double>(i) /
                                                   static_cast<double>(n);
                for (std::size_t j = 0; j < n; ++j) {
                    double d2;
                    if (i == j) {
                        d2 = diag2;
                    } else {
                        const double delta = hh * (static_cast<double>(i) -
                                                   static_cast<double>(j));
                        const double sn = std::sin(0.5 * delta);
                        d2 = -0.5 / (sn * sn);
                        if ((i + j) % 2 == 1) d2 = -d2;
                    }
                    op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                        -a * scale * d2;
                }
                op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += q(x);
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
                op, Eigen::EigenvaluesOnly);
            const auto& ev = solver.eigenvalues();
            const int k = std::min<int>(p.n_eigs, static_cast<int>(n));
            return {ev.data(), ev.data() + k};
        }
    }
    throw DomainError("unknown discretization scheme");
}

bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

std::vector<double> schrodinger_spectrum(double alpha,
                                         const DiscretizationParams& params) {
    const double half_width = params.half_width > 0.0 ? params.half_width : 20.0;
    auto q = [alpha](double y) {
        const double sech = 1.0 / std::cosh(y);
        return -alpha * sech * sech;
    };
    return operator_spectrum(1.0, q, half_width, params);
}

std::vector<double> scalar_operator_spectrum(double scale, int p, double omega,
                                             const DiscretizationParams& params) {
    const WaveProfile wave(p, omega, 1.0, 0.0);  // potential does not involve hu
    const double b = wave.width();
    const double half_width =
        params.half_width > 0.0 ? params.half_width : std::max(20.0, 12.0 / b);
    if (half_width < 10.0 / b)
        throw DomainError("half_width below the 10/B decay margin");
    if (params.scheme != Scheme::Fourier &&
        (!power_of_two(params.n_points) || params.n_points < 1024))
        throw DomainError("n_points must be a power of two >= 1024");
    auto q = [&wave, scale, omega](double x) {
        return (omega - 1.0) - scale * wave.phi0(x);
    };
    return operator_spectrum(omega, q, half_width, params);
}

double first_operator_ground_energy(int p, double omega) {
    return -0.25 * p * (p + 4) * (omega - 1.0);
}

double positivity_crossing(int p, double omega, const DiscretizationParams& params,
                           double lo, double hi, double tol) {
    auto least = [&](double scale) {
        return scalar_operator_spectrum(scale, p, omega, params)[0];
    };
    double flo = least(lo), fhi = least(hi);
    if (!(flo > 0.0 && fhi < 0.0))
        throw DomainError("bracket does not straddle the positivity crossing");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (least(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double zero_mode_residual(int p, double omega, std::size_t n_points) {
    const WaveProfile wave(p, omega, 1.0, 0.0);
    // phi' decays like exp(-2 B |x| / p); keep the periodization jump at the
    // e^-40 level so the -k^2 multiplier cannot lift it above roundoff
    const double half_width = 20.0 * p / wave.width();
    const double span = 2.0 * half_width;
    const std::size_t n = n_points;

    std::vector<double> psi(n), pot(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double x = -half_width + span * static_cast<double>(j) /
                                           static_cast<double>(n);
        psi[j] = wave.dphi(x);
        pot[j] = wave.phi0(x);
    }

    FftWorkspace fft(n);
    std::vector<std::complex<double>> hat;
    fft.forward(psi, hat);
    const auto k = half_wavenumbers(n, span);
    for (std::size_t j = 0; j < hat.size(); ++j) hat[j] *= -k[j] * k[j];
    std::vector<double> ddpsi;
    fft.inverse(hat, ddpsi);

    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double r = -omega * ddpsi[j] + (omega - 1.0) * psi[j] - pot[j] * psi[j];
        num += r * r;
        den += psi[j] * psi[j];
    }
    return std::sqrt(num / den);
}

BlockSpectra block_spectra(const HomogeneousNonlinearity& h,
                           const ProportionalRatio& ratio, double omega,
                           const DiscretizationParams& params) {
    const auto m = build_criterion_matrix(h, ratio);
    const int p = h.p();
    const WaveProfile wave(p, omega, 1.0, 0.0);
    const double b = wave.width();
    const double half_width =
        params.half_width > 0.0 ? params.half_width : std::max(20.0, 12.0 / b);

    const std::size_t n = params.n_points;
    const std::size_t rows = n - 1;
    const double hh = 2.0 * half_width / static_cast<double>(n);
    const double off = -omega / (hh * hh);
    const double diag0 = 2.0 * omega / (hh * hh) + (omega - 1.0);

    Eigen::MatrixXd block = Eigen::MatrixXd::Zero(2 * rows, 2 * rows);
    for (std::size_t i = 0; i < rows; ++i) {
        const double x = -half_width + hh * static_cast<double>(i + 1);
        const double pot = wave.phi0(x);
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(rows + i);
        block(ii, ii) = diag0 - m.entries[0][0] * pot;
        block(jj, jj) = diag0 - m.entries[1][1] * pot;
        block(ii, jj) = -m.entries[0][1] * pot;
        block(jj, ii) = -m.entries[1][0] * pot;
        if (i + 1 < rows) {
            block(ii, ii + 1) = off;
            block(ii + 1, ii) = off;
            block(jj, jj + 1) = off;
            block(jj + 1, jj) = off;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(block,
                                                          Eigen::EigenvaluesOnly);

    const auto scalar_potential = [&wave, omega](double scale) {
        return [&wave, omega, scale](double x) {
            return (omega - 1.0) - scale * wave.phi0(x);
        };
    };
    auto on_axis =
        fd_spectrum(omega, scalar_potential(1.0), half_width, n, params.n_eigs);
    auto transverse =
        fd_spectrum(omega, scalar_potential(m.det), half_width, n, params.n_eigs);

    BlockSpectra out;
    const int k = std::min<int>(2 * params.n_eigs, static_cast<int>(2 * rows));
    out.coupled.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + k);
    out.decoupled = std::move(on_axis);
    out.decoupled.insert(out.decoupled.end(), transverse.begin(), transverse.end());
    std::sort(out.decoupled.begin(), out.decoupled.end());
    return out;
}

SpectrumReport linearization_report(const HomogeneousNonlinearity& h,
                                    const ProportionalRatio& ratio, double omega,
                                    const DiscretizationParams& params) {
    const auto m = build_criterion_matrix(h, ratio);
    const int p = h.p();

    SpectrumReport rep;
    rep.det = m.det;
    rep.bound = positivity_threshold(p);
    rep.continuum_edge = omega - 1.0;
    rep.analytic_ground_energy = first_operator_ground_energy(p, omega);
    rep.on_axis_eigs = scalar_operator_spectrum(1.0, p, omega, params);
    rep.transverse_eigs = scalar_operator_spectrum(m.det, p, omega, params);

    const double margin = 1e-6 * (1.0 + rep.continuum_edge);
    rep.on_axis_below_edge = 0;
    rep.on_axis_negative = 0;
    for (double ev : rep.on_axis_eigs) {
        if (ev < rep.continuum_edge - margin) ++rep.on_axis_below_edge;
        if (ev < -margin) ++rep.on_axis_negative;
    }
    rep.ground_energy_error =
        std::abs(rep.on_axis_eigs[0] - rep.analytic_ground_energy) /
        std::abs(rep.analytic_ground_energy);
    rep.zero_mode = zero_mode_residual(p, omega);
    rep.transverse_positive = rep.transverse_eigs[0] > 0.0;
    rep.unique_negative_direction = rep.on_axis_negative == 1;
    return rep;
}

}  // namespace bbmstab
