#pragma once

#include <stdexcept>
#include <string>

namespace bbmstab {

// Error taxonomy shared across modules. Every condition that callers are
// expected to branch on gets its own type plus a stable machine code used by
// the CLI's error JSON.
struct Error : std::runtime_error {
    Error(std::string code, const std::string& msg)
        : std::runtime_error(msg), code(std::move(code)) {}
    std::string code;
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema", msg) {}
};

struct NotAdmissibleError : Error {
    explicit NotAdmissibleError(const std::string& msg)
        : Error("not_admissible", msg) {}
};

struct NoAdmissibleRatioError : Error {
    explicit NoAdmissibleRatioError(const std::string& msg)
        : Error("no_admissible_ratio", msg) {}
};

struct ContinuumOfRatiosError : Error {
    explicit ContinuumOfRatiosError(const std::string& msg)
        : Error("continuum_of_ratios", msg) {}
};

struct MissingThresholdError : Error {
    explicit MissingThresholdError(const std::string& msg)
        : Error("missing_threshold", msg) {}
};

struct GridTooCoarseError : Error {
    GridTooCoarseError(const std::string& msg, double shift)
        : Error("grid_too_coarse", msg), shift(shift) {}
    double shift;
};

struct UnsupportedError : Error {
    explicit UnsupportedError(const std::string& msg)
        : Error("unsupported", msg) {}
};

struct QuadratureError : Error {
    explicit QuadratureError(const std::string& msg)
        : Error("quadrature", msg) {}
};

struct StepTooLargeError : Error {
    explicit StepTooLargeError(const std::string& msg)
        : Error("step_too_large", msg) {}
};

struct BlowupError : Error {
    BlowupError(const std::string& msg, double time)
        : Error("blowup", msg), time(time) {}
    double time;
};

struct GoldenMismatchError : Error {
    explicit GoldenMismatchError(const std::string& msg)
        : Error("golden_mismatch", msg) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error("domain", msg) {}
};

}  // namespace bbmstab
