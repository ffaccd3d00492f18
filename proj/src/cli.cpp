#include "bbmstab/cli.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <sstream>
#include <string>

#include "bbmstab/criterion.hpp"
#include "bbmstab/errors.hpp"
#include "bbmstab/golden.hpp"
#include "bbmstab/moment.hpp"

namespace bbmstab {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SchemaError(msg); }

void check_keys(const json& j, std::initializer_list<const char*> allowed,
                const char* where) {
    for (const auto& item : j.items()) {
        bool known = false;
        for (const char* k : allowed)
            if (item.key() == k) {
                known = true;
                break;
            }
        if (!known)
            fail("unknown key \"" + item.key() + "\" in " + where);
    }
}

double number_at(const json& j, const char* key, const char* where) {
    const json& v = j.at(key);
    if (!v.is_number()) fail(std::string(where) + "." + key + " must be a number");
    return v.get<double>();
}

long integer_at(const json& j, const char* key, const char* where) {
    const json& v = j.at(key);
    if (!v.is_number_integer()) fail(std::string(where) + "." + key + " must be an integer");
    return v.get<long>();
}

bool power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

DiscretizationParams parse_grid(const json& g) {
    check_keys(g, {"half_width", "n_points", "scheme", "n_eigs"}, "grid");
    DiscretizationParams out;
    if (g.contains("half_width")) {
        out.half_width = number_at(g, "half_width", "grid");
        if (out.half_width < 0.0) fail("grid.half_width must be nonnegative");
    }
    if (g.contains("n_points")) {
        const long n = integer_at(g, "n_points", "grid");
        if (n < 8) fail("grid.n_points too small");
        out.n_points = static_cast<std::size_t>(n);
    }
    if (g.contains("scheme")) {
        const std::string s = g.at("scheme").get<std::string>();
        if (s == "fd")
            out.scheme = Scheme::FiniteDifference;
        else if (s == "fd_richardson")
            out.scheme = Scheme::FiniteDifferenceRichardson;
        else if (s == "fourier")
            out.scheme = Scheme::Fourier;
        else
            fail("grid.scheme must be fd | fd_richardson | fourier");
    }
    if (g.contains("n_eigs")) {
        const long n = integer_at(g, "n_eigs", "grid");
        if (n < 1) fail("grid.n_eigs must be positive");
        out.n_eigs = static_cast<int>(n);
    }
    return out;
}

SimulationConfig parse_sim(const json& s) {
    check_keys(s,
               {"domain_length", "n_modes", "dt", "t_end", "dealias", "initial",
                "blowup_max", "stable_factor", "unstable_factor", "record_every"},
               "sim");
    SimulationConfig out;
    if (s.contains("domain_length")) {
        out.domain_length = number_at(s, "domain_length", "sim");
        if (out.domain_length < 0.0) fail("sim.domain_length must be nonnegative");
    }
    if (s.contains("n_modes")) {
        const long n = integer_at(s, "n_modes", "sim");
        if (n < 8 || !power_of_two(static_cast<std::size_t>(n)))
            fail("sim.n_modes must be a power of two >= 8");
        out.n_modes = static_cast<std::size_t>(n);
    }
    if (s.contains("dt")) {
        out.dt = number_at(s, "dt", "sim");
        if (out.dt <= 0.0) fail("sim.dt must be positive");
    }
    if (s.contains("t_end")) {
        out.t_end = number_at(s, "t_end", "sim");
        if (out.t_end < 0.0) fail("sim.t_end must be nonnegative");
    }
    if (s.contains("dealias")) {
        if (!s.at("dealias").is_boolean()) fail("sim.dealias must be a boolean");
        out.dealias = s.at("dealias").get<bool>();
    }
    if (s.contains("initial")) {
        const json& i = s.at("initial");
        check_keys(i, {"kind", "eps", "second_omega"}, "sim.initial");
        if (i.contains("kind")) {
            const std::string k = i.at("kind").get<std::string>();
            if (k == "exact")
                out.initial.kind = InitialKind::Exact;
            else if (k == "scaled")
                out.initial.kind = InitialKind::Scaled;
            else if (k == "bump")
                out.initial.kind = InitialKind::Bump;
            else if (k == "two_speed")
                out.initial.kind = InitialKind::TwoSpeed;
            else
                fail("sim.initial.kind must be exact | scaled | bump | two_speed");
        }
        if (i.contains("eps")) out.initial.eps = number_at(i, "eps", "sim.initial");
        if (i.contains("second_omega"))
            out.initial.second_omega = number_at(i, "second_omega", "sim.initial");
        if (out.initial.kind == InitialKind::TwoSpeed && out.initial.second_omega <= 1.0)
            fail("sim.initial.second_omega must exceed 1 for kind two_speed");
    }
    if (s.contains("blowup_max")) {
        out.blowup_max = number_at(s, "blowup_max", "sim");
        if (out.blowup_max <= 0.0) fail("sim.blowup_max must be positive");
    }
    if (s.contains("stable_factor"))
        out.stable_factor = number_at(s, "stable_factor", "sim");
    if (s.contains("unstable_factor"))
        out.unstable_factor = number_at(s, "unstable_factor", "sim");
    if (s.contains("record_every")) {
        out.record_every = number_at(s, "record_every", "sim");
        if (out.record_every <= 0.0) fail("sim.record_every must be positive");
    }
    return out;
}

std::vector<double> omega_grid(const ProblemSpec& spec) {
    if (spec.omega_range) {
        const auto& r = *spec.omega_range;
        std::vector<double> out(static_cast<std::size_t>(r.count));
        for (int i = 0; i < r.count; ++i)
            out[static_cast<std::size_t>(i)] =
                r.min + (r.max - r.min) * i / (r.count - 1);
        return out;
    }
    if (spec.omega) return {*spec.omega};
    fail("this subcommand needs omega (a number or {min,max,count})");
}

double single_omega(const ProblemSpec& spec) {
    if (!spec.omega) fail("this subcommand needs a single omega > 1");
    return *spec.omega;
}

json ratio_json(const HomogeneousNonlinearity& h, const ProportionalRatio& ratio) {
    json r;
    r["mu"] = ratio.mu;
    r["hu"] = ratio.hu;
    r["admissible"] = ratio.admissible;
    if (!ratio.admissible) {
        r["verdict"] = verdict_name(VerdictKind::NotAdmissible);
        return r;
    }
    const CriterionMatrix m = build_criterion_matrix(h, ratio);
    r["matrix"] = {{m.entries[0][0], m.entries[0][1]},
                   {m.entries[1][0], m.entries[1][1]}};
    r["det"] = m.det;
    r["eigenvalues"] = m.eigenvalues;
    r["orthogonal"] = {{m.orthogonal[0][0], m.orthogonal[0][1]},
                       {m.orthogonal[1][0], m.orthogonal[1][1]}};
    std::optional<double> omega_p;
    if (h.p() > 4) omega_p = omega_threshold(moment_constants(h.p(), ratio.mu, ratio.hu));
    const StabilityVerdict v = classify(m, h.p(), omega_p);
    r["verdict"] = verdict_name(v.kind);
    if (v.omega_p) r["omega_threshold"] = *v.omega_p;
    return r;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_row(double a, double b) {
    char line[80];
    std::snprintf(line, sizeof(line), "%.17g,%.17g\n", a, b);
    return line;
}

}  // namespace

ProblemSpec parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(std::string("input is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("input must be a JSON object");
    check_keys(j, {"p", "coeffs", "mu", "omega", "grid", "sim"}, "the problem");

    ProblemSpec spec;
    if (!j.contains("p") || !j.contains("coeffs")) fail("p and coeffs are required");
    const long p = integer_at(j, "p", "the problem");
    if (p < 1) fail("p must be a positive integer");
    spec.p = static_cast<int>(p);

    const json& c = j.at("coeffs");
    if (!c.is_array()) fail("coeffs must be an array of numbers");
    for (const json& v : c) {
        if (!v.is_number()) fail("coeffs must be an array of numbers");
        spec.coeffs.push_back(v.get<double>());
    }
    if (spec.coeffs.size() != static_cast<std::size_t>(spec.p) + 3)
        fail("coeffs must have length p+3");

    if (j.contains("mu")) spec.mu = number_at(j, "mu", "the problem");

    if (j.contains("omega")) {
        const json& w = j.at("omega");
        if (w.is_number()) {
            spec.omega = w.get<double>();
            if (*spec.omega <= 1.0) fail("omega must exceed 1");
        } else if (w.is_object()) {
            check_keys(w, {"min", "max", "count"}, "omega");
            if (!w.contains("min") || !w.contains("max") || !w.contains("count"))
                fail("an omega range needs min, max and count");
            OmegaRange r;
            r.min = number_at(w, "min", "omega");
            r.max = number_at(w, "max", "omega");
            r.count = static_cast<int>(integer_at(w, "count", "omega"));
            if (r.min <= 1.0) fail("omega.min must exceed 1");
            if (r.max <= r.min) fail("omega.max must exceed omega.min");
            if (r.count < 2) fail("omega.count must be at least 2");
            spec.omega_range = r;
        } else {
            fail("omega must be a number or {min, max, count}");
        }
    }

    if (j.contains("grid")) spec.grid = parse_grid(j.at("grid"));
    if (j.contains("sim")) spec.sim = parse_sim(j.at("sim"));
    return spec;
}

HomogeneousNonlinearity nonlinearity_of(const ProblemSpec& spec) {
    return {spec.p, spec.coeffs};
}

ProportionalRatio select_ratio(const ProblemSpec& spec) {
    const auto h = nonlinearity_of(spec);
    if (spec.mu) {
        const double mu = *spec.mu;
        const double hu = h.grad(1.0, mu)[0];
        if (ratio_residual(h, mu) > 1e-8 * (1.0 + std::abs(hu)))
            fail("the given mu does not satisfy the proportionality condition");
        if (hu <= 0.0)
            throw NoAdmissibleRatioError("the given mu is not admissible: H_u(1,mu) <= 0");
        return {mu, hu, true};
    }
    const RatioSet roots = find_ratios(h);
    if (roots.continuum)
        throw ContinuumOfRatiosError(
            "every mu satisfies the proportionality condition; pass mu explicitly");
    std::vector<ProportionalRatio> admissible;
    for (const auto& r : roots.ratios)
        if (r.admissible) admissible.push_back(r);
    if (admissible.empty())
        throw NoAdmissibleRatioError("no admissible proportionality ratio exists");
    if (admissible.size() > 1)
        fail("several admissible ratios exist; pass mu explicitly");
    return admissible.front();
}

std::string analyze_json(const ProblemSpec& spec) {
    const auto h = nonlinearity_of(spec);
    json out;
    out["p"] = spec.p;
    out["coeffs"] = spec.coeffs;
    out["bound"] = positivity_threshold(spec.p);

    json ratios = json::array();
    if (spec.mu) {
        ratios.push_back(ratio_json(h, select_ratio(spec)));
    } else {
        const RatioSet roots = find_ratios(h);
        if (roots.continuum)
            throw ContinuumOfRatiosError(
                "every mu satisfies the proportionality condition; pass mu explicitly");
        bool any = false;
        for (const auto& r : roots.ratios) {
            ratios.push_back(ratio_json(h, r));
            any = any || r.admissible;
        }
        if (!any)
            throw NoAdmissibleRatioError("no admissible proportionality ratio exists");
    }
    out["ratios"] = std::move(ratios);
    return dump(out);
}

std::string spectrum_json(const ProblemSpec& spec) {
    const auto h = nonlinearity_of(spec);
    const ProportionalRatio ratio = select_ratio(spec);
    const double omega = single_omega(spec);
    const SpectrumReport rep = linearization_report(h, ratio, omega, spec.grid);

    json out;
    out["p"] = spec.p;
    out["mu"] = ratio.mu;
    out["omega"] = omega;
    out["det"] = rep.det;
    out["bound"] = rep.bound;
    out["continuum_edge"] = rep.continuum_edge;
    out["analytic_ground_energy"] = rep.analytic_ground_energy;
    out["on_axis_eigenvalues"] = rep.on_axis_eigs;
    out["transverse_eigenvalues"] = rep.transverse_eigs;
    out["on_axis_below_edge"] = rep.on_axis_below_edge;
    out["on_axis_negative"] = rep.on_axis_negative;
    out["ground_energy_error"] = rep.ground_energy_error;
    out["zero_mode_residual"] = rep.zero_mode;
    out["transverse_positive"] = rep.transverse_positive;
    out["unique_negative_direction"] = rep.unique_negative_direction;
    return dump(out);
}

std::string dprime_csv(const ProblemSpec& spec) {
    const ProportionalRatio ratio = select_ratio(spec);
    const MomentConstants c = moment_constants(spec.p, ratio.mu, ratio.hu);
    const std::vector<DprimeSample> table = dprime_table(c, omega_grid(spec));
    std::string out = "omega,d_second\n";
    for (const auto& s : table) out += format_row(s.omega, s.d_second);
    return out;
}

std::string simulate_json(const ProblemSpec& spec, const std::string& out_dir) {
    const auto h = nonlinearity_of(spec);
    const ProportionalRatio ratio = select_ratio(spec);
    const double omega = single_omega(spec);
    const SimulationRun run = stability_experiment(h, ratio.mu, omega, spec.sim);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_history_csv(out_dir + "/history.csv", run.history);
        write_snapshot(out_dir + "/final.bin", run.final_state, run.grid);
    }

    json out;
    out["p"] = spec.p;
    out["mu"] = ratio.mu;
    out["omega"] = omega;
    out["verdict"] = run.verdict;
    out["initial_deviation"] = run.initial_deviation;
    out["max_deviation"] = run.max_deviation;
    out["final_deviation"] = run.final_deviation;
    if (run.blowup_time) out["blowup_time"] = *run.blowup_time;
    out["quadratic_drift"] = run.quadratic_drift;
    out["energy_drift"] = run.energy_drift;
    out["samples"] = run.history.size();
    out["grid"] = {{"length", run.grid.length}, {"n", run.grid.n}};
    return dump(out);
}

std::string example_text(int n) {
    const ExampleReport rep = run_example(n);
    std::string out = "example " + std::to_string(n) + ": " +
                      (rep.all_pass() ? "pass" : "FAIL") + "\n";
    return out + rep.render(false);
}

int dispatch(const std::string& subcommand, const std::string& input_text,
             const std::string& out_dir, bool quiet, std::ostream& out,
             std::ostream& err) {
    const auto emit = [&err](const std::string& code, const std::string& message) {
        err << json{{"error", code}, {"message", message}}.dump() << "\n";
    };
    try {
        if (subcommand == "analyze" || subcommand == "spectrum" ||
            subcommand == "dprime" || subcommand == "simulate") {
            const ProblemSpec spec = parse_problem(input_text);
            std::string text;
            if (subcommand == "analyze")
                text = analyze_json(spec);
            else if (subcommand == "spectrum")
                text = spectrum_json(spec);
            else if (subcommand == "dprime")
                text = dprime_csv(spec);
            else
                text = simulate_json(spec, out_dir);
            if (!quiet) out << text;
            return 0;
        }
        if (subcommand == "example") {
            std::vector<int> indices;
            std::string t = input_text;
            t.erase(0, t.find_first_not_of(" \t\r\n"));
            t.erase(t.find_last_not_of(" \t\r\n") + 1);
            if (t.empty() || t == "0") {
                indices = {1, 2, 3, 4};
            } else {
                try {
                    const json j = json::parse(t);
                    if (j.is_number_integer())
                        indices.push_back(j.get<int>());
                    else if (j.is_object() && j.contains("example"))
                        indices.push_back(static_cast<int>(
                            integer_at(j, "example", "the problem")));
                    else
                        fail("example expects an index 1..4");
                } catch (const json::exception&) {
                    fail("example expects an index 1..4");
                }
            }
            bool ok = true;
            for (int n : indices) {
                const ExampleReport rep = run_example(n);
                ok = ok && rep.all_pass();
                if (!quiet) {
                    out << "example " << n << ": " << (rep.all_pass() ? "pass" : "FAIL")
                        << "\n"
                        << rep.render(false);
                } else {
                    out << rep.render(true);
                }
            }
            return ok ? 0 : 4;
        }
        throw SchemaError("unknown subcommand \"" + subcommand + "\"");
    } catch (const SchemaError& e) {
        emit(e.code, e.what());
        return 2;
    } catch (const NoAdmissibleRatioError& e) {
        emit(e.code, e.what());
        return 3;
    } catch (const ContinuumOfRatiosError& e) {
        emit(e.code, e.what());
        return 3;
    } catch (const GoldenMismatchError& e) {
        emit(e.code, e.what());
        return 4;
    } catch (const Error& e) {
        emit(e.code, e.what());
        return 1;
    } catch (const std::exception& e) {
        emit("internal", e.what());
        return 1;
    }
}

std::string read_input(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw SchemaError("cannot open input file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace bbmstab
