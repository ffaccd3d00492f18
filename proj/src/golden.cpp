#include "bbmstab/golden.hpp"

#include <cmath>
#include <cstdio>

#include "bbmstab/criterion.hpp"
#include "bbmstab/errors.hpp"
#include "bbmstab/moment.hpp"

namespace bbmstab {

HomogeneousNonlinearity symmetric_family(int p, double b1, double b2) {
    std::vector<double> c(p + 3, 0.0);
    c[p + 2] = b1 / (p + 2);
    c[0] = b1 / (p + 2);
    c[p + 1] = b2;
    c[1] = b2;
    return {p, std::move(c)};
}

HomogeneousNonlinearity negative_det_family(int q) {
    const int p = 2 * q - 1;
    std::vector<double> c(p + 3, 0.0);
    c[2 * q + 1] = -0.5 / (2 * q + 1);
    c[0] = -0.5 / (2 * q + 1);
    c[q + 1] = 0.5;
    c[q] = 0.5;
    return {p, std::move(c)};
}

HomogeneousNonlinearity product_family(int q) {
    const int p = 2 * q;
    std::vector<double> c(p + 3, 0.0);
    c[q + 1] = 1.0 / (q + 1);
    return {p, std::move(c)};
}

HomogeneousNonlinearity decoupled_family(int p, double a, double b) {
    std::vector<double> c(p + 3, 0.0);
    c[p + 2] = a / (p + 2);
    c[0] = b / (p + 2);
    return {p, std::move(c)};
}

HomogeneousNonlinearity quartic_family(double beta) {
    return {2, {0.25, 0.0, 0.5 * beta, 0.0, 0.25}};
}

bool GoldenCheck::pass() const { return std::abs(expected - actual) <= tolerance; }

bool ExampleReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass()) return false;
    for (const auto& f : flags)
        if (!f.pass) return false;
    return true;
}

std::string ExampleReport::render(bool failures_only) const {
    std::string out;
    char line[256];
    for (const auto& c : checks) {
        if (failures_only && c.pass()) continue;
        std::snprintf(line, sizeof(line), "%-52s expected % .12g  got % .12g  [%s]\n",
                      c.label.c_str(), c.expected, c.actual,
                      c.pass() ? "ok" : "MISMATCH");
        out += line;
    }
    for (const auto& f : flags) {
        if (failures_only && f.pass) continue;
        std::snprintf(line, sizeof(line), "%-52s %s  [%s]\n", f.label.c_str(),
                      f.detail.c_str(), f.pass ? "ok" : "MISMATCH");
        out += line;
    }
    return out;
}

namespace {

constexpr double kExactTol = 1e-12;

ProportionalRatio ratio_at(const HomogeneousNonlinearity& h, double mu) {
    const double hu = h.grad(1.0, mu)[0];
    return {mu, hu, hu > 0.0};
}

void check_verdict(ExampleReport& rep, const std::string& label, VerdictKind got,
                   VerdictKind want) {
    rep.flags.push_back({label, got == want, verdict_name(got)});
}

// b1 where det M crosses 1/(p+1), located by bisection on the exact det
double scan_boundary(int p, double b2) {
    const double bound = positivity_threshold(p);
    double lo = -(p + 2) * b2 + 1e-9;  // just inside admissibility
    double hi = lo + 40.0 * b2;
    auto below = [&](double b1) { return symmetric_family_det(p, b1, b2) < bound; };
    if (!below(lo) || below(hi))
        throw GoldenMismatchError("determinant scan bracket invalid");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (below(mid) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

ExampleReport example1() {
    ExampleReport rep{1, {}, {}};

    const auto h = symmetric_family(1, 1.0, 1.0);
    const auto roots = find_ratios(h);
    rep.checks.push_back({"p=1 b1=b2=1: number of ratios",
                          2.0, static_cast<double>(roots.ratios.size()), 0.0});
    if (roots.ratios.size() == 2) {
        rep.checks.push_back({"p=1 b1=b2=1: ratio -1", -1.0, roots.ratios[0].mu, kExactTol});
        rep.checks.push_back({"p=1 b1=b2=1: ratio +1", 1.0, roots.ratios[1].mu, kExactTol});
        rep.flags.push_back({"p=1 b1=b2=1: mu=-1 inadmissible",
                             !roots.ratios[0].admissible, "H_u(1,-1) = 0"});
        const auto m = build_criterion_matrix(h, roots.ratios[1]);
        rep.checks.push_back({"p=1 b1=b2=1, mu=1: det M", 0.0, m.det, kExactTol});
        check_verdict(rep, "p=1 b1=b2=1, mu=1: verdict", classify(m, 1).kind,
                      VerdictKind::StableAllSpeeds);
    }

    for (int p : {1, 2, 3, 5}) {
        const double measured = scan_boundary(p, 1.0);
        char label[96];
        std::snprintf(label, sizeof(label),
                      "p=%d b2=1: det scan boundary vs closed form", p);
        rep.checks.push_back({label, symmetric_family_boundary(p, 1.0), measured, 1e-9});
    }
    return rep;
}

ExampleReport example2() {
    ExampleReport rep{2, {}, {}};
    for (int q = 1; q <= 4; ++q) {
        const auto h = negative_det_family(q);
        const int p = 2 * q - 1;
        const auto ratio = ratio_at(h, 1.0);
        char label[96];

        std::snprintf(label, sizeof(label), "q=%d: residual of mu=1", q);
        rep.checks.push_back({label, 0.0, ratio_residual(h, 1.0), kExactTol});

        const auto m = build_criterion_matrix(h, ratio);
        std::snprintf(label, sizeof(label), "q=%d (p=%d): det M", q, p);
        rep.checks.push_back({label, -1.0 / q, m.det, kExactTol});

        std::optional<double> omega_p;
        if (p > 4) {
            const auto mc = moment_constants(p, ratio.mu, ratio.hu);
            omega_p = omega_threshold(mc);
            std::snprintf(label, sizeof(label),
                          "q=%d (p=%d): omega threshold vs closed form", q, p);
            rep.checks.push_back({label, omega_threshold_closed_form(p),
                                  omega_p.value_or(0.0), 1e-9});
        }
        const auto v = classify(m, p, omega_p);
        std::snprintf(label, sizeof(label), "q=%d (p=%d): verdict", q, p);
        check_verdict(rep, label, v.kind,
                      p <= 4 ? VerdictKind::StableAllSpeeds
                             : VerdictKind::ThresholdStable);
    }
    return rep;
}

ExampleReport example3() {
    ExampleReport rep{3, {}, {}};
    const auto h = decoupled_family(2, 1.0, 1.0);
    const auto roots = find_ratios(h);
    rep.checks.push_back({"A=B=1 p=2: number of ratios", 3.0,
                          static_cast<double>(roots.ratios.size()), 0.0});
    const double expect_mu[] = {-1.0, 0.0, 1.0};
    const double expect_det[] = {1.0, 0.0, 1.0};
    for (std::size_t i = 0; i < roots.ratios.size() && i < 3; ++i) {
        char label[96];
        std::snprintf(label, sizeof(label), "A=B=1 p=2: ratio %zu", i);
        rep.checks.push_back({label, expect_mu[i], roots.ratios[i].mu, 1e-9});
        const auto m = build_criterion_matrix(h, roots.ratios[i]);
        std::snprintf(label, sizeof(label), "A=B=1 p=2, mu=%g: det M",
                      roots.ratios[i].mu);
        rep.checks.push_back({label, expect_det[i], m.det, 1e-9});
        std::snprintf(label, sizeof(label), "A=B=1 p=2, mu=%g: verdict",
                      roots.ratios[i].mu);
        check_verdict(rep, label, classify(m, 2).kind,
                      expect_det[i] < positivity_threshold(2)
                          ? VerdictKind::StableAllSpeeds
                          : VerdictKind::CriterionFails);
    }
    return rep;
}

ExampleReport example4() {
    ExampleReport rep{4, {}, {}};

    {
        const auto h = quartic_family(1.0);
        const auto roots = find_ratios(h);
        rep.flags.push_back({"beta=1: ratio condition degenerates", roots.continuum,
                             roots.continuum ? "every mu admissible"
                                             : "isolated roots found"});
        const auto m = build_criterion_matrix(h, ratio_at(h, 1.0));
        rep.checks.push_back({"beta=1, mu=1: det M", 1.0 / 3.0, m.det, kExactTol});
        check_verdict(rep, "beta=1, mu=1: verdict (boundary is strict)",
                      classify(m, 2).kind, VerdictKind::CriterionFails);
    }

    for (double beta : {2.0, 3.0}) {
        const auto h = quartic_family(beta);
        const auto roots = find_ratios(h);
        char label[96];
        std::snprintf(label, sizeof(label), "beta=%g: number of ratios", beta);
        rep.checks.push_back({label, 3.0, static_cast<double>(roots.ratios.size()), 0.0});
        for (double mu : {-1.0, 1.0}) {
            const auto m = build_criterion_matrix(h, ratio_at(h, mu));
            std::snprintf(label, sizeof(label), "beta=%g, mu=%g: det M", beta, mu);
            rep.checks.push_back(
                {label, (3.0 - beta) / (3.0 * (1.0 + beta)), m.det, kExactTol});
        }
        const auto m0 = build_criterion_matrix(h, ratio_at(h, 0.0));
        std::snprintf(label, sizeof(label), "beta=%g, mu=0: det M", beta);
        rep.checks.push_back({label, beta / 3.0, m0.det, kExactTol});
    }

    bool equivalence = true;
    std::string counter = "det M < 1/3 at mu=1 exactly when beta > 1";
    for (double beta : {-0.5, 0.25, 0.999, 1.0, 1.001, 2.0, 8.0}) {
        const auto h = quartic_family(beta);
        const auto m = build_criterion_matrix(h, ratio_at(h, 1.0));
        if ((m.det < 1.0 / 3.0) != (beta > 1.0)) {
            equivalence = false;
            counter = "fails at beta = " + std::to_string(beta);
        }
    }
    rep.flags.push_back({"criterion region at mu=1", equivalence, counter});
    return rep;
}

}  // namespace

ExampleReport run_example(int n) {
    switch (n) {
        case 1: return example1();
        case 2: return example2();
        case 3: return example3();
        case 4: return example4();
        default: throw SchemaError("example index must be 1..4");
    }
}

}  // namespace bbmstab
