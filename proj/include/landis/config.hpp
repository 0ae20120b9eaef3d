#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "landis/domain.hpp"
#include "landis/errors.hpp"
#include "landis/functions.hpp"
#include "landis/kernel.hpp"
#include "landis/stencil.hpp"
#include "landis/supersolution.hpp"

namespace landis {

using Json = nlohmann::ordered_json;

/// Malformed config; the message names the offending field or line.
class ConfigError : public InputError {
public:
    using InputError::InputError;
};

struct Tolerances {
    double solve = 1e-10;
    double residual = 1e-6;    // landis certification
    double exhaustion = 1e-4;
    double defect = 1e-6;      // harnack supersolution check
    double zero = 1e-10;
    bool operator==(const Tolerances&) const = default;
};

/// Where a subcommand gets its input function u.
struct InputSource {
    enum class Kind { function, file, solve, supersolution };
    Kind kind = Kind::function;
    FunctionDescriptor function;
    std::string path;
    bool operator==(const InputSource&) const = default;
};

struct ExperimentConfig {
    Params params;
    OperatorMode mode = OperatorMode::single;
    bool fractional_laplacian = true;  // otherwise one kernel per family modulation
    std::vector<Modulation> family;
    DomainSpec domain;
    QuadratureSpec quadrature;
    FunctionDescriptor potential;
    FunctionDescriptor f;
    FunctionDescriptor g;
    InputSource u;
    std::vector<Point> points;
    FunctionDescriptor reference;  // optional exact solution for `solve`
    bool has_reference = false;
    Tolerances tolerances;
    ExhaustionPlan exhaustion;
    std::vector<double> R_list{1, 2, 4, 8};
    double C0 = 0.0;
    double r0 = 1.0;
    double slack = 0.3;
    double C_budget = 1e3;
    double decay_R_min = 4.0;
    double decay_R_max = 32.0;
    std::string output;

    OperatorSpec op() const;
    void validate() const;
    bool operator==(const ExperimentConfig&) const = default;
};

ExperimentConfig parse_config(const Json& j);
Json to_json(const ExperimentConfig& c);

/// Parses JSON text; syntax errors report line and column.
Json parse_json_text(const std::string& text, const std::string& origin);
ExperimentConfig load_config(const std::string& path);

/// Sets a dotted path ("domain.h") to a JSON literal, or to the raw text as a
/// string when it does not parse.
void apply_override(Json& j, const std::string& assignment);

/// 64-bit FNV-1a of the text, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

/// Digest of the canonical config with the output directory left out.
std::string inputs_digest(const ExperimentConfig& c);

}  // namespace landis
