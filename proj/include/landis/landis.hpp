#pragma once

#include <optional>
#include <string>
#include <vector>

#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"
#include "landis/supersolution.hpp"

namespace landis {

enum class Verdict { refused, consistent_with_zero, lower_bound_respected, hypothesis_violated };

std::string to_string(Verdict v);

struct LandisOptions {
    double residual_tol = 1e-6;  // certification threshold on sup |I u + V u| over G
    double zero_tol = 1e-10;     // weighted norm below this means u = 0
    double slack = 0.3;
    bool build_barrier = true;
    ExhaustionPlan plan;
    QuadratureSpec quad;
    Exec exec = Exec::parallel;
};

struct LandisReport {
    Verdict verdict = Verdict::refused;
    double residual = 0.0;
    double norm = 0.0;
    std::vector<double> R;
    std::vector<double> inf_abs;        // inf_{B_R} |u|
    std::vector<double> lower_bound;    // |u| R^-(N+2s)
    double C_est = 0.0;                 // max lower_bound / inf_abs
    double inf_exponent = 0.0;          // fitted decay exponent of inf_{B_R} |u|
    std::optional<double> kappa;        // max |u| / psi outside B_{R_min}
    std::optional<bool> w_plus_nonpositive;
    std::optional<bool> barrier_converged;
    std::string diagnostic;
};

/// Landis dichotomy on a certified solution of I u + V u = 0 in u's domain G.
/// Inf-type operators build the barrier with the dual operator.
LandisReport landis_pipeline(const GridFunction& u, const GridFunction& V, const OperatorSpec& op,
                             const std::vector<double>& R_list, const LandisOptions& opt = {});

}  // namespace landis
