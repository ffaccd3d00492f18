#include "bbmstab/nonlinearity.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

#include "bbmstab/errors.hpp"

namespace bbmstab {

namespace {

double ipow(double x, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= x;
    return r;
}

}  // namespace

HomogeneousNonlinearity::HomogeneousNonlinearity(int p, std::vector<double> coeffs)
    : p_(p), coeffs_(std::move(coeffs)) {
    if (p_ < 1) throw SchemaError("nonlinearity order p must be >= 1");
    if (static_cast<int>(coeffs_.size()) != p_ + 3)
        throw SchemaError("coefficient list must have length p+3");
}

double HomogeneousNonlinearity::eval(double u, double v) const {
    const int m = degree();
    double s = 0.0;
    for (int i = 0; i <= m; ++i) s += coeffs_[i] * ipow(u, i) * ipow(v, m - i);
    return s;
}

std::array<double, 2> HomogeneousNonlinearity::grad(double u, double v) const {
    const int m = degree();
    double hu = 0.0, hv = 0.0;
    for (int i = 0; i <= m; ++i) {
        const double c = coeffs_[i];
        if (c == 0.0) continue;
        if (i >= 1) hu += c * i * ipow(u, i - 1) * ipow(v, m - i);
        if (m - i >= 1) hv += c * (m - i) * ipow(u, i) * ipow(v, m - i - 1);
    }
    return {hu, hv};
}

HomogeneousNonlinearity::Hessian HomogeneousNonlinearity::hessian(double u,
                                                                  double v) const {
    const int m = degree();
    Hessian h{0.0, 0.0, 0.0};
    for (int i = 0; i <= m; ++i) {
        const double c = coeffs_[i];
        if (c == 0.0) continue;
        const int j = m - i;
        if (i >= 2) h.uu += c * i * (i - 1) * ipow(u, i - 2) * ipow(v, j);
        if (i >= 1 && j >= 1) h.uv += c * i * j * ipow(u, i - 1) * ipow(v, j - 1);
        if (j >= 2) h.vv += c * j * (j - 1) * ipow(u, i) * ipow(v, j - 2);
    }
    return h;
}

HomogeneousNonlinearity HomogeneousNonlinearity::scaled(double factor) const {
    std::vector<double> c = coeffs_;
    for (double& x : c) x *= factor;
    return HomogeneousNonlinearity(p_, std::move(c));
}

double ratio_residual(const HomogeneousNonlinearity& h, double mu) {
    auto g = h.grad(1.0, mu);
    return std::abs(g[1] - mu * g[0]);
}

std::array<double, 2> hessian_identity_residuals(const HomogeneousNonlinearity& h,
                                                 double mu) {
    const auto g = h.grad(1.0, mu);
    const auto hess = h.hessian(1.0, mu);
    const double k = h.p() + 1;
    return {hess.uu + mu * hess.uv - k * g[0],
            hess.uv + mu * hess.vv - k * mu * g[0]};
}

namespace {

// r(mu) = H_v(1,mu) - mu H_u(1,mu), coefficients in ascending powers of mu.
// Term i of H contributes (m-i) c_i mu^(m-i-1) to H_v and i c_i mu^(m-i+1)
// to mu H_u, so deg r <= m.
std::vector<double> ratio_polynomial(const HomogeneousNonlinearity& h) {
    const int m = h.degree();
    std::vector<double> r(m + 1, 0.0);
    const auto& c = h.coeffs();
    for (int i = 0; i <= m; ++i) {
        if (c[i] == 0.0) continue;
        if (m - i - 1 >= 0) r[m - i - 1] += (m - i) * c[i];
        if (i >= 1) r[m - i + 1] -= i * c[i];
    }
    return r;
}

double poly_eval(const std::vector<double>& a, double x) {
    double s = 0.0;
    for (auto it = a.rbegin(); it != a.rend(); ++it) s = s * x + *it;
    return s;
}

std::vector<double> poly_derive(const std::vector<double>& a) {
    std::vector<double> d;
    for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<double>(i));
    return d;
}

}  // namespace

RatioSet find_ratios(const HomogeneousNonlinearity& h) {
    std::vector<double> r = ratio_polynomial(h);

    double scale = 0.0;
    for (double a : r) scale = std::max(scale, std::abs(a));
    RatioSet out;
    if (scale == 0.0) {
        out.continuum = true;  // proportionality holds for every mu
        return out;
    }

    // trim trailing (high-order) zeros
    while (r.size() > 1 && std::abs(r.back()) <= 1e-14 * scale) r.pop_back();
    const int deg = static_cast<int>(r.size()) - 1;
    if (deg == 0) return out;  // nonzero constant: no roots

    // companion matrix of the monic polynomial
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -r[i] / r[deg];
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    const auto roots = es.eigenvalues();

    const std::vector<double> dr = poly_derive(r);
    std::vector<double> reals;
    for (int i = 0; i < roots.size(); ++i) {
        const double re = roots[i].real(), im = roots[i].imag();
        if (std::abs(im) > 1e-8 * (1.0 + std::abs(re))) continue;
        double mu = re;
        const double dp = poly_eval(dr, mu);
        if (dp != 0.0) {  // one Newton polish
            const double step = poly_eval(r, mu) / dp;
            if (std::isfinite(step) && std::abs(step) < 1.0 + std::abs(mu)) mu -= step;
        }
        reals.push_back(mu);
    }
    std::sort(reals.begin(), reals.end());
    for (double mu : reals) {
        if (!out.ratios.empty() && std::abs(mu - out.ratios.back().mu) <= 1e-9)
            continue;
        const double hu = h.grad(1.0, mu)[0];
        out.ratios.push_back({mu, hu, hu > 0.0});
    }
    return out;
}

}  // namespace bbmstab
