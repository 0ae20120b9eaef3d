#pragma once

#include <string>
#include <vector>

#include "landis/dirichlet.hpp"
#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"

namespace landis {

enum class Normalization { base_point, weighted_norm };

std::string to_string(Normalization n);
Normalization normalization_from_string(const std::string& name);

/// Balls B_{R_j}(0) exhausting R^N. Stage j uses mesh width h0 doubled until the
/// ball has at most max_nodes_per_dim nodes across (0 picks 4097 in 1-D, 81 in 2-D).
struct ExhaustionPlan {
    Point x0{0.0, 0.0};
    std::vector<double> radii{1, 2, 4, 8, 16, 32, 64};
    double h0 = 1.0 / 16;
    int max_nodes_per_dim = 0;
    double tol = 1e-4;        // sup-difference of consecutive stages on B_{R_0}
    double solve_tol = 1e-10;
    Normalization normalization = Normalization::base_point;

    void validate(int N) const;
    double mesh_width(int N, double R) const;
    bool operator==(const ExhaustionPlan&) const = default;
};

struct ExhaustionStage {
    double R = 0.0;
    double h = 0.0;
    std::size_t unknowns = 0;
    double u_at_x0 = 0.0;
    double sup_difference = 0.0;  // against the previous stage on B_{R_0}; NaN at j = 0
    double solve_residual = 0.0;
    long iterations = 0;
    bool shifted = false;  // solved as I v + V v = -V, u = v + 1
};

struct SupersolutionResult {
    GridFunction psi;        // normalized per plan.normalization
    GridFunction psi_base;   // psi(x0) = 1
    std::vector<ExhaustionStage> stages;
    bool converged = false;
    double min_node_value = 0.0;
    double residual = 0.0;       // sup |I psi + V psi| on B_{R_{J-1}}, psi(x0) = 1 scaling
    double weighted_norm = 0.0;  // of psi_base
    std::string diagnostic;
};

/// Solves I u_j + V u_j = 0 in B_{R_j}, u_j = 1 outside, for increasing j and
/// normalizes by u_j(x0). Throws EvaluationError when u_j(x0) <= 0.
SupersolutionResult build_supersolution(const OperatorSpec& op, const GridFunction& V, const ExhaustionPlan& plan,
                                        const QuadratureSpec& quad = {}, Exec exec = Exec::parallel);

}  // namespace landis
