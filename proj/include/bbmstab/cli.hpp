#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bbmstab/nonlinearity.hpp"
#include "bbmstab/simulator.hpp"
#include "bbmstab/spectral.hpp"

namespace bbmstab {

struct OmegaRange {
    double min, max;
    int count;
};

// One JSON document carries every numeric input; flags only pick the
// subcommand, input path, output directory, and verbosity.
struct ProblemSpec {
    int p = 0;
    std::vector<double> coeffs;
    std::optional<double> mu;      // overrides ratio detection
    std::optional<double> omega;
    std::optional<OmegaRange> omega_range;
    DiscretizationParams grid;
    SimulationConfig sim;
};

ProblemSpec parse_problem(const std::string& text);  // throws SchemaError
HomogeneousNonlinearity nonlinearity_of(const ProblemSpec& spec);

// the ratio a single-ratio subcommand works on: explicit mu if given, else
// the unique admissible root; ambiguity is a SchemaError, absence (or an
// unresolved continuum) a NoAdmissibleRatioError
ProportionalRatio select_ratio(const ProblemSpec& spec);

std::string analyze_json(const ProblemSpec& spec);
std::string spectrum_json(const ProblemSpec& spec);
std::string dprime_csv(const ProblemSpec& spec);
std::string simulate_json(const ProblemSpec& spec, const std::string& out_dir);
std::string example_text(int n);

// exit codes: 0 ok, 2 schema, 3 no admissible ratio, 4 golden mismatch,
// 1 any other module error; error detail goes to err as one JSON line
int dispatch(const std::string& subcommand, const std::string& input_text,
             const std::string& out_dir, bool quiet, std::ostream& out,
             std::ostream& err);

std::string read_input(const std::string& path);  // "-" or "" reads stdin

}  // namespace bbmstab
