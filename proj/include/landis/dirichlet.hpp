#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "landis/discrete_operator.hpp"
#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"
#include "landis/parallel.hpp"
#include "landis/stencil.hpp"

namespace landis {

/// I u + V u = f in G, u = g outside G.
struct DirichletProblem {
    DomainSpec domain;
    OperatorSpec op;
    GridFunction V;
    GridFunction f;
    GridFunction g;
    QuadratureSpec quad{};

    /// Samples V, f, g on the problem's own box.
    static DirichletProblem from_functions(const DomainSpec& domain, const OperatorSpec& op,
                                           const FunctionDescriptor& V, const FunctionDescriptor& f,
                                           const FunctionDescriptor& g, const QuadratureSpec& quad = {});
};

enum class SolveMethod { policy_iteration, fixed_point };

struct SolveOptions {
    SolveMethod method = SolveMethod::policy_iteration;
    double theta = 0.9;
    long max_basic_iterations = 1'000'000;
    int max_policy_iterations = 200;
    std::size_t dense_limit = 9000;  // larger systems fall back to the fixed point
    bool verify_eigenvalues = true;  // when V has a positive part
    Exec exec = Exec::parallel;
};

struct HalfEigenvalues {
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    double plus_error = 0.0;   // infinite when the iteration did not settle
    double minus_error = 0.0;
    int iterations = 0;
    bool reliable() const;
};

struct SolveReport {
    long iterations = 0;  // linear solves (policy iteration) or sweeps (fixed point)
    double residual_sup = 0.0;
    bool converged = false;
    long policy_switches = 0;
    std::string method;
    std::string diagnostic;
    std::optional<HalfEigenvalues> eigenvalues;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Discrete problem on the interior nodes of G. Exterior lattice points and the
/// far field take their values from g.
class DirichletScheme {
public:
    explicit DirichletScheme(const DirichletProblem& p, Exec exec = Exec::parallel);

    std::size_t unknowns() const { return interior_.size(); }
    const std::vector<std::size_t>& interior_nodes() const { return interior_; }
    const DirichletProblem& problem() const { return problem_; }
    const DiscreteOperator& discrete() const { return disc_; }

    /// I u + V u - f at the interior nodes.
    std::vector<double> operator_values(const std::vector<double>& u) const;
    /// Same with the right-hand side replaced by `f_values`.
    std::vector<double> operator_values(const std::vector<double>& u, const std::vector<double>& f_values) const;

    /// One damped update u + tau (I u + V u - f), tau = theta / (D + |V|).
    std::vector<double> damped_step(const std::vector<double>& u, double theta) const;

    /// Affine system A u + b frozen at the policy selected by u. `signature`
    /// receives one hash of the selected policy per node.
    void linearize(const std::vector<double>& u, const std::vector<double>& f_values, RowMatrix& A,
                   Eigen::VectorXd& b, std::vector<std::uint64_t>* signature) const;

    std::vector<double> restrict(const GridFunction& u) const;
    GridFunction to_grid(const std::vector<double>& u) const;

    const std::vector<double>& f_values() const { return f_; }
    const std::vector<double>& V_values() const { return V_; }
    double diagonal_bound() const { return disc_.max_diagonal(); }

    /// Policy iteration (or fixed point) for A-form solves with given rhs values.
    std::vector<double> solve_values(const std::vector<double>& f_values, double tol, const SolveOptions& opt,
                                     SolveReport& report, std::vector<double> start = {}) const;

private:
    double node_operator(const std::vector<double>& ext, std::size_t i, double u_i, int* policy) const;
    std::vector<double> lattice_with(const std::vector<double>& u) const;

    DirichletProblem problem_;
    Exec exec_;
    DiscreteOperator disc_;
    FarField far_;
    std::vector<std::size_t> interior_;
    std::vector<Point> x_;
    std::vector<double> V_;
    std::vector<double> f_;
    ExtendedLattice base_;
    std::vector<std::ptrdiff_t> flat_;
    std::vector<std::size_t> center_;  // lattice index of each unknown
    std::vector<int> unknown_of_;      // lattice index -> unknown or -1
    std::vector<std::vector<double>> far_source_;  // per linear kernel, per unknown
    std::vector<char> far_constant_;
    std::vector<double> far_value_;  // constant S/2 when far_constant_
};

std::pair<GridFunction, SolveReport> solve(const DirichletProblem& p, double tol, const SolveOptions& opt = {});

/// I u + V u - f at the interior nodes of G (zero elsewhere), with u used on all of
/// R^N. u must live on the problem's box.
GridFunction residual(const DirichletProblem& p, const GridFunction& u, Exec exec = Exec::parallel);

/// Inverse iteration on I + V - sigma from the positive and negative cones.
HalfEigenvalues estimate_half_eigenvalues(const DomainSpec& domain, const OperatorSpec& op, const GridFunction& V,
                                          const QuadratureSpec& quad = {}, Exec exec = Exec::parallel);

enum class Comparison { holds, violated, inconclusive };

struct ComparisonResult {
    Comparison outcome = Comparison::inconclusive;
    std::string diagnostic;
    bool flag() const { return outcome == Comparison::holds; }
};

/// Checks u_sub <= u_super at every node, after verifying the ordering outside G
/// and the residual signs (within sign_tol).
ComparisonResult comparison_check(const DirichletProblem& p, const GridFunction& u_sub, const GridFunction& u_super,
                                  double sign_tol = 1e-6);

}  // namespace landis
