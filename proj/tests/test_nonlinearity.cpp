#include <doctest.h>

#include <cmath>
#include <random>

#include "bbmstab/errors.hpp"
#include "bbmstab/golden.hpp"
#include "bbmstab/nonlinearity.hpp"

using namespace bbmstab;

namespace {

HomogeneousNonlinearity random_poly(std::mt19937& rng, int p) {
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    std::vector<double> c(static_cast<std::size_t>(p) + 3);
    for (auto& x : c) x = coeff(rng);
    return {p, std::move(c)};
}

}  // namespace

TEST_SUITE("nonlinearity") {

TEST_CASE("constructor validates order and coefficient count") {
    CHECK_THROWS_AS(HomogeneousNonlinearity(0, {1.0, 2.0, 3.0}), SchemaError);
    CHECK_THROWS_AS(HomogeneousNonlinearity(1, {1.0, 2.0, 3.0}), SchemaError);
    CHECK_NOTHROW(HomogeneousNonlinearity(1, {1.0, 2.0, 3.0, 4.0}));
}

TEST_CASE("gradient and hessian match finite differences") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    const double h = 1e-5;
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 1 + trial % 5;
        const auto f = random_poly(rng, p);
        const double u = point(rng), v = point(rng);

        const auto g = f.grad(u, v);
        const double gu = (f.eval(u + h, v) - f.eval(u - h, v)) / (2 * h);
        const double gv = (f.eval(u, v + h) - f.eval(u, v - h)) / (2 * h);
        CHECK(g[0] == doctest::Approx(gu).epsilon(1e-6));
        CHECK(g[1] == doctest::Approx(gv).epsilon(1e-6));

        const auto hess = f.hessian(u, v);
        const double huu = (f.grad(u + h, v)[0] - f.grad(u - h, v)[0]) / (2 * h);
        const double huv = (f.grad(u, v + h)[0] - f.grad(u, v - h)[0]) / (2 * h);
        const double hvv = (f.grad(u, v + h)[1] - f.grad(u, v - h)[1]) / (2 * h);
        CHECK(hess.uu == doctest::Approx(huu).epsilon(1e-6));
        CHECK(hess.uv == doctest::Approx(huv).epsilon(1e-6));
        CHECK(hess.vv == doctest::Approx(hvv).epsilon(1e-6));
    }
}

TEST_CASE("homogeneity of degree p+2") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> point(-1.5, 1.5);
    for (int trial = 0; trial < 50; ++trial) {
        const int p = 1 + trial % 6;
        const auto f = random_poly(rng, p);
        const double u = point(rng), v = point(rng), t = 0.3 + 0.01 * trial;
        const double lhs = f.eval(t * u, t * v);
        const double rhs = std::pow(t, p + 2) * f.eval(u, v);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("Euler second-derivative identities vanish at every real ratio") {
    std::mt19937 rng(23);
    int checked = 0;
    for (int trial = 0; trial < 200; ++trial) {
        const int p = 1 + trial % 5;
        const auto f = random_poly(rng, p);
        const auto set = find_ratios(f);
        for (const auto& r : set.ratios) {
            const auto res = hessian_identity_residuals(f, r.mu);
            const double scale = 1.0 + std::abs(f.grad(1.0, r.mu)[0]);
            CHECK(std::abs(res[0]) <= 1e-9 * scale);
            CHECK(std::abs(res[1]) <= 1e-9 * scale);
            ++checked;
        }
    }
    CHECK(checked > 100);
}

TEST_CASE("roots returned by find_ratios satisfy the defining equation") {
    std::mt19937 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        const int p = 1 + trial % 4;
        const auto f = random_poly(rng, p);
        const auto set = find_ratios(f);
        for (const auto& r : set.ratios) {
            const double scale =
                1.0 + std::abs(f.grad(1.0, r.mu)[0]) + std::abs(f.grad(1.0, r.mu)[1]);
            CHECK(ratio_residual(f, r.mu) <= 1e-9 * scale);
            CHECK(r.admissible == (r.hu > 0.0));
        }
    }
}

TEST_CASE("symmetric family p=1: ratios are -1 and +1, only +1 admissible") {
    const auto f = symmetric_family(1, 1.0, 1.0);
    const auto set = find_ratios(f);
    REQUIRE(set.ratios.size() == 2);
    CHECK(set.ratios[0].mu == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(set.ratios[1].mu == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(set.ratios[0].admissible);  // H_u(1,-1) = 0
    CHECK(set.ratios[1].admissible);
    CHECK(set.ratios[1].hu == doctest::Approx(4.0));
}

TEST_CASE("decoupled quartic: three ratios, all admissible") {
    const auto f = decoupled_family(2, 1.0, 1.0);
    const auto set = find_ratios(f);
    REQUIRE(set.ratios.size() == 3);
    CHECK(set.ratios[0].mu == doctest::Approx(-1.0));
    CHECK(set.ratios[1].mu == doctest::Approx(0.0));
    CHECK(set.ratios[2].mu == doctest::Approx(1.0));
    for (const auto& r : set.ratios) CHECK(r.admissible);
}

TEST_CASE("no real ratio exists for u^2 v + v^3") {
    // H_v - mu H_u at (1, mu) is mu^2 + 1
    const HomogeneousNonlinearity f(1, {1.0, 0.0, 1.0, 0.0});
    const auto set = find_ratios(f);
    CHECK(set.ratios.empty());
    CHECK_FALSE(set.continuum);
    CHECK(set.empty());
}

TEST_CASE("quartic family degenerates to a continuum at beta = 1") {
    const auto set = find_ratios(quartic_family(1.0));
    CHECK(set.continuum);
    CHECK(set.ratios.empty());
    CHECK_FALSE(set.empty());

    const auto isolated = find_ratios(quartic_family(2.0));
    CHECK_FALSE(isolated.continuum);
    CHECK(isolated.ratios.size() == 3);
}

TEST_CASE("scaling the polynomial scales values and derivatives") {
    std::mt19937 rng(41);
    const auto f = random_poly(rng, 3);
    const auto g = f.scaled(2.5);
    CHECK(g.eval(0.7, -0.4) == doctest::Approx(2.5 * f.eval(0.7, -0.4)));
    CHECK(g.grad(0.7, -0.4)[1] == doctest::Approx(2.5 * f.grad(0.7, -0.4)[1]));
    CHECK(g.hessian(0.7, -0.4).uv == doctest::Approx(2.5 * f.hessian(0.7, -0.4).uv));
}

TEST_CASE("tiny ratio-polynomial coefficients still yield clean roots") {
    const auto set = find_ratios(quartic_family(1.0 + 1e-10));
    CHECK_FALSE(set.continuum);
    REQUIRE(set.ratios.size() == 3);
    CHECK(set.ratios[0].mu == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK(set.ratios[1].mu == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(set.ratios[2].mu == doctest::Approx(1.0).epsilon(1e-9));
}

}  // TEST_SUITE
