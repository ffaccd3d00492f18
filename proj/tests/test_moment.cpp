#include <doctest.h>

#include <cmath>

#include "bbmstab/errors.hpp"
#include "bbmstab/moment.hpp"
#include "bbmstab/nonlinearity.hpp"

using namespace bbmstab;

TEST_SUITE("moment") {

TEST_CASE("sech power integral: closed form vs quadrature") {
    for (double a : {0.8, 4.0 / 3.0, 2.0, 3.0, 4.0, 5.5}) {
        INFO("a=", a);
        const double exact = sech_power_integral(a);
        const double quad = sech_power_integral_quadrature(a);
        CHECK(std::abs(exact - quad) <= 1e-10 * std::abs(exact));
    }
    CHECK(sech_power_integral(2.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(sech_power_integral(1.0) ==
          doctest::Approx(std::acos(-1.0)).epsilon(1e-14));
}

TEST_CASE("profile integrals for p = 2 and the universal ratio") {
    const auto c2 = moment_constants(2, 0.0, 1.0);
    CHECK(c2.i1 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(c2.i2 == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    for (int p : {1, 2, 3, 5, 7}) {
        const auto c = moment_constants(p, 1.0, 2.0);
        INFO("p=", p);
        CHECK(c.i2 / c.i1 ==
              doctest::Approx(p / (p + 4.0)).epsilon(1e-11));
        CHECK(c.theta1 > 0.0);
        CHECK(c.theta2 > 0.0);
    }
}

TEST_CASE("inadmissible or degenerate inputs are rejected") {
    CHECK_THROWS_AS(moment_constants(2, 1.0, 0.0), NotAdmissibleError);
    CHECK_THROWS_AS(moment_constants(2, 1.0, -3.0), NotAdmissibleError);
    CHECK_THROWS_AS(moment_constants(0, 1.0, 1.0), DomainError);
    const auto c = moment_constants(1, 1.0, 4.0);
    CHECK_THROWS_AS(dprime(c, 1.0 + 1e-9), DomainError);
    CHECK_THROWS_AS(d_second(c, 0.5), DomainError);
}

TEST_CASE("closed-form first moment matches direct profile quadrature") {
    for (int p : {1, 2, 3, 5}) {
        for (double mu : {0.0, 1.0}) {
            const double hu = (mu == 0.0) ? 1.0 : 4.0;
            const auto c = moment_constants(p, mu, hu);
            for (double omega : {1.1, 2.0, 10.0}) {
                INFO("p=", p, " mu=", mu, " omega=", omega);
                const double closed = dprime(c, omega);
                const double direct = dprime_quadrature(c, omega);
                CHECK(std::abs(closed - direct) <= 1e-8 * std::abs(closed));
            }
        }
    }
}

TEST_CASE("q at the left endpoint collapses to 2 theta1 (1/p - 1/4)") {
    for (int p = 1; p <= 6; ++p) {
        const auto c = moment_constants(p, 0.5, 2.0);
        const double lhs = q_poly(c, 1.0);
        const double rhs = 2.0 * c.theta1 * (1.0 / p - 0.25);
        INFO("p=", p);
        if (p == 4) {
            CHECK(std::abs(lhs) <= 1e-12 * c.theta1);
        } else {
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::abs(rhs));
        }
    }
}

TEST_CASE("second moment derivative vs refined differences of the quadrature") {
    for (int p : {1, 2, 5}) {
        const auto c = moment_constants(p, 1.0, 3.0);
        for (int k = 0; k < 10; ++k) {
            const double omega = 1.3 + 0.2 * k;
            INFO("p=", p, " omega=", omega);
            const double closed = d_second(c, omega);
            const double fd = d_second_fd(c, omega);
            CHECK(std::abs(closed - fd) <=
                  1e-4 * std::max(std::abs(closed), 1e-12));
        }
    }
}

TEST_CASE("a difference step too wide for the target accuracy throws") {
    const auto c = moment_constants(5, 0.0, 1.0);
    CHECK_THROWS_AS(d_second_fd(c, 1.05, 0.04), StepTooLargeError);
    CHECK_THROWS_AS(d_second_fd(c, 1.2, 0.5), DomainError);  // stencil leaves omega > 1
}

TEST_CASE("sign of the second moment derivative") {
    SUBCASE("p <= 4: positive for every admissible speed, no threshold") {
        for (int p : {1, 2, 3, 4}) {
            const auto c = moment_constants(p, 1.0, 4.0);
            CHECK_FALSE(omega_threshold(c).has_value());
            for (double omega : {1.001, 1.1, 1.5, 3.0, 20.0}) {
                INFO("p=", p, " omega=", omega);
                CHECK(q_poly(c, omega) > 0.0);
            }
        }
    }
    SUBCASE("p > 4: a single sign change at the threshold speed") {
        for (int p : {5, 7}) {
            const auto c = moment_constants(p, 0.0, 1.0);
            const auto threshold = omega_threshold(c);
            REQUIRE(threshold.has_value());
            INFO("p=", p, " threshold=", *threshold);
            CHECK(*threshold ==
                  doctest::Approx(omega_threshold_closed_form(p)).epsilon(1e-11));
            CHECK(d_second(c, *threshold * 0.999 + 0.001) < 0.0);
            CHECK(d_second(c, *threshold * 1.001) > 0.0);
            CHECK(std::abs(q_poly(c, *threshold)) <= 1e-12 * c.theta1);
        }
    }
}

TEST_CASE("threshold speed is independent of the ratio and of H_u") {
    const double reference = omega_threshold_closed_form(5);
    for (double mu : {0.0, 1.0, 2.0}) {
        for (double hu : {0.5, 1.0, 4.0}) {
            const auto c = moment_constants(5, mu, hu);
            const auto threshold = omega_threshold(c);
            REQUIRE(threshold.has_value());
            INFO("mu=", mu, " hu=", hu);
            CHECK(std::abs(*threshold - reference) <= 1e-10 * reference);
        }
    }
    CHECK(omega_threshold_closed_form(5) ==
          doctest::Approx(5.0 * (2.0 + 3.0 * std::sqrt(2.0)) / 28.0)
              .epsilon(1e-15));
}

TEST_CASE("tabulated speed grid carries both derivatives in order") {
    const auto c = moment_constants(5, 0.0, 1.0);
    const std::vector<double> omegas = {1.05, 1.08, 1.11, 1.1147572655570152,
                                        1.12, 1.15, 1.2};
    const auto table = dprime_table(c, omegas);
    REQUIRE(table.size() == omegas.size());
    int sign_changes = 0;
    for (std::size_t i = 0; i < table.size(); ++i) {
        CHECK(table[i].omega == omegas[i]);
        CHECK(table[i].dprime == doctest::Approx(dprime(c, omegas[i])));
        if (i > 0 && std::signbit(table[i - 1].d_second) !=
                         std::signbit(table[i].d_second))
            ++sign_changes;
    }
    CHECK(sign_changes == 1);
    CHECK(std::abs(table[3].d_second) <= 1e-8);
}

TEST_CASE("discrete invariants of a sampled constant pair") {
    // flat fields have no derivative part; quadratic = L(u^2+v^2)/2
    const HomogeneousNonlinearity h(1, {0.0, 0.0, 0.0, 1.0 / 3.0});  // u^3/3
    const std::size_t n = 64;
    const double dx = 0.25;
    const std::vector<double> u(n, 2.0), v(n, -1.0);
    const auto pair = conserved(u, v, dx, h);
    const double length = dx * n;
    CHECK(pair.quadratic == doctest::Approx(0.5 * length * 5.0).epsilon(1e-12));
    CHECK(pair.energy ==
          doctest::Approx(-length * (0.5 * 5.0 + 8.0 / 3.0)).epsilon(1e-12));
}

}  // TEST_SUITE
