#include <doctest.h>

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bbmstab/cli.hpp"
#include "bbmstab/errors.hpp"

using namespace bbmstab;
using nlohmann::json;

namespace {

constexpr const char* kCubic =
    R"({"p":1,"coeffs":[0.3333333333333333,1,1,0.3333333333333333]})";

std::string with_omega(const std::string& base, const std::string& omega) {
    json j = json::parse(base);
    j["omega"] = json::parse(omega);
    return j.dump();
}

struct Run {
    int code;
    std::string out, err;
};

Run run(const std::string& sub, const std::string& input, const std::string& dir = "") {
    std::ostringstream out, err;
    const int code = dispatch(sub, input, dir, false, out, err);
    return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("problem parsing accepts the documented shape") {
    const auto spec = parse_problem(
        R"({"p":2,"coeffs":[0.25,0,1,0,0.25],"mu":1.0,
            "omega":{"min":1.2,"max":2.0,"count":5},
            "grid":{"half_width":25,"n_points":2048,"scheme":"fourier","n_eigs":4},
            "sim":{"dt":0.002,"t_end":40,"dealias":true,
                   "initial":{"kind":"bump","eps":0.01}}})");
    CHECK(spec.p == 2);
    CHECK(spec.coeffs.size() == 5);
    CHECK(spec.mu == doctest::Approx(1.0));
    REQUIRE(spec.omega_range.has_value());
    CHECK(spec.omega_range->count == 5);
    CHECK(spec.grid.scheme == Scheme::Fourier);
    CHECK(spec.sim.dealias == std::optional<bool>(true));
    CHECK(spec.sim.initial.kind == InitialKind::Bump);
}

TEST_CASE("schema violations are rejected") {
    CHECK_THROWS_AS(parse_problem("not json"), SchemaError);
    CHECK_THROWS_AS(parse_problem("[1,2]"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"coeffs":[1,2,3,4]})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":0,"coeffs":[1,2,3]})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1.5,"coeffs":[1,2,3,4]})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1,"coeffs":[1,2,3]})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1,"coeffs":[1,2,"x",4]})"), SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"tau":1})"),
                    SchemaError);
    CHECK_THROWS_AS(parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"omega":0.5})"),
                    SchemaError);
    CHECK_THROWS_AS(
        parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"omega":{"min":1.2,"max":1.1,"count":3}})"),
        SchemaError);
    CHECK_THROWS_AS(
        parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"grid":{"scheme":"dense"}})"),
        SchemaError);
    CHECK_THROWS_AS(
        parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"sim":{"n_modes":1000}})"),
        SchemaError);
    CHECK_THROWS_AS(
        parse_problem(R"({"p":1,"coeffs":[1,2,3,4],"sim":{"dealias":1}})"),
        SchemaError);
    CHECK_THROWS_AS(
        parse_problem(
            R"({"p":1,"coeffs":[1,2,3,4],"sim":{"initial":{"kind":"two_speed"}}})"),
        SchemaError);
}

TEST_CASE("ratio selection") {
    SUBCASE("unique admissible root is picked automatically") {
        const auto r = select_ratio(parse_problem(kCubic));
        CHECK(r.mu == doctest::Approx(1.0));
        CHECK(r.hu == doctest::Approx(4.0));
    }
    SUBCASE("an explicit mu must satisfy the proportionality condition") {
        json j = json::parse(kCubic);
        j["mu"] = 0.4;
        CHECK_THROWS_AS(select_ratio(parse_problem(j.dump())), SchemaError);
    }
    SUBCASE("an explicit inadmissible mu is a no-ratio condition") {
        json j = json::parse(kCubic);
        j["mu"] = -1.0;
        CHECK_THROWS_AS(select_ratio(parse_problem(j.dump())),
                        NoAdmissibleRatioError);
    }
    SUBCASE("several admissible roots require an explicit mu") {
        const auto spec =
            parse_problem(R"({"p":2,"coeffs":[0.25,0,0,0,0.25]})");
        CHECK_THROWS_AS(select_ratio(spec), SchemaError);
    }
    SUBCASE("a degenerate family needs mu, else every mu works") {
        const auto spec =
            parse_problem(R"({"p":2,"coeffs":[0.25,0,0.5,0,0.25]})");
        CHECK_THROWS_AS(select_ratio(spec), ContinuumOfRatiosError);
        const auto with_mu =
            parse_problem(R"({"p":2,"coeffs":[0.25,0,0.5,0,0.25],"mu":0.37})");
        CHECK(select_ratio(with_mu).mu == doctest::Approx(0.37));
    }
}

TEST_CASE("reports are deterministic and re-parse") {
    const auto spec = parse_problem(kCubic);
    const std::string a = analyze_json(spec);
    const std::string b = analyze_json(spec);
    CHECK(a == b);

    const json parsed = json::parse(a);
    CHECK(parsed.at("p") == 1);
    CHECK(parsed.at("bound") == doctest::Approx(0.5));
    REQUIRE(parsed.at("ratios").size() == 2);
    CHECK(parsed.at("ratios")[0].at("verdict") == "not-admissible");
    CHECK(parsed.at("ratios")[1].at("verdict") == "stable-all-speeds");
    CHECK(parsed.at("ratios")[1].at("det") == doctest::Approx(0.0));
}

TEST_CASE("exit codes through the dispatcher") {
    SUBCASE("success") {
        const auto r = run("analyze", kCubic);
        CHECK(r.code == 0);
        CHECK(r.err.empty());
        CHECK_FALSE(r.out.empty());
    }
    SUBCASE("schema error is 2 with a machine-readable line") {
        const auto r = run("analyze", R"({"p":1})");
        CHECK(r.code == 2);
        const json e = json::parse(r.err);
        CHECK(e.at("error") == "schema");
    }
    SUBCASE("no real ratio is 3") {
        const auto r = run("analyze", R"({"p":1,"coeffs":[1,0,1,0]})");
        CHECK(r.code == 3);
        CHECK(json::parse(r.err).at("error") == "no_admissible_ratio");
    }
    SUBCASE("unresolved continuum is 3") {
        const auto r = run("analyze", R"({"p":2,"coeffs":[0.25,0,0.5,0,0.25]})");
        CHECK(r.code == 3);
        CHECK(json::parse(r.err).at("error") == "continuum_of_ratios");
    }
    SUBCASE("unknown subcommand is 2") {
        CHECK(run("transmogrify", "{}").code == 2);
    }
    SUBCASE("golden replay is 0") {
        const auto r = run("example", "");
        CHECK(r.code == 0);
        CHECK(r.out.find("example 1: pass") != std::string::npos);
        CHECK(r.out.find("example 4: pass") != std::string::npos);
    }
    SUBCASE("example index must be in range") {
        CHECK(run("example", "7").code == 2);
    }
}

TEST_CASE("speed-derivative table is plot-ready CSV with one sign change") {
    const std::string input =
        R"({"p":5,"coeffs":[0,0,0,0,0,0,0,0.14285714285714285],
            "omega":{"min":1.05,"max":1.2,"count":16}})";
    const auto r = run("dprime", input);
    REQUIRE(r.code == 0);
    std::istringstream lines(r.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "omega,d_second");
    int rows = 0, sign_changes = 0;
    double prev = 0.0;
    for (std::string line; std::getline(lines, line); ++rows) {
        const auto comma = line.find(',');
        REQUIRE(comma != std::string::npos);
        const double omega = std::stod(line.substr(0, comma));
        const double second = std::stod(line.substr(comma + 1));
        CHECK(omega >= 1.05);
        CHECK(omega <= 1.2 + 1e-12);
        if (rows > 0 && std::signbit(prev) != std::signbit(second)) ++sign_changes;
        prev = second;
    }
    CHECK(rows == 16);
    CHECK(sign_changes == 1);
}

TEST_CASE("spectrum command reproduces the exact ground level") {
    const auto r = run("spectrum", with_omega(kCubic, "2"));
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    const double least = rep.at("on_axis_eigenvalues")[0].get<double>();
    CHECK(std::abs(least + 1.25) <= 1e-4);
    CHECK(rep.at("zero_mode_residual").get<double>() <= 1e-6);
}

TEST_CASE("simulate command writes artifacts and a summary") {
    const auto dir = std::filesystem::temp_directory_path() / "bbm_cli_sim";
    std::filesystem::remove_all(dir);
    json j = json::parse(kCubic);
    j["omega"] = 2.0;
    j["sim"] = {{"t_end", 1.0},
                {"n_modes", 256},
                {"initial", {{"kind", "scaled"}, {"eps", 0.01}}}};
    const auto r = run("simulate", j.dump(), dir.string());
    REQUIRE(r.code == 0);
    const json rep = json::parse(r.out);
    CHECK(rep.at("verdict") == "heuristic-stable");
    CHECK(std::filesystem::exists(dir / "history.csv"));
    CHECK(std::filesystem::exists(dir / "final.bin"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("input reader handles files and rejects absent ones") {
    const auto path = std::filesystem::temp_directory_path() / "bbm_input_test.json";
    {
        std::ofstream f(path);
        f << kCubic;
    }
    CHECK(read_input(path.string()) == kCubic);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(read_input(path.string()), SchemaError);
}

}  // TEST_SUITE
