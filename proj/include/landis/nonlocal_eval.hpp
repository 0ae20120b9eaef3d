#pragma once

#include <cstddef>
#include <vector>

#include "landis/discrete_operator.hpp"
#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"
#include "landis/parallel.hpp"
#include "landis/stencil.hpp"

namespace landis {

/// Evaluates an operator on grid functions whose mesh width matches `h`.
/// Pointwise calls work at any x far enough from the box boundary; `apply` sweeps
/// all nodes of a grid.
class Evaluator {
public:
    Evaluator(OperatorSpec op, double h, double R_cut, QuadratureSpec q = {});

    const DiscreteOperator& discrete() const { return disc_; }
    const OperatorSpec& spec() const { return disc_.spec(); }

    double at(const GridFunction& u, const Point& x) const;
    double linear_at(std::size_t k, const GridFunction& u, const Point& x) const;
    double pucci_at(bool plus, const GridFunction& u, const Point& x) const;

    /// x lies at least (core_cells + 1) h inside the box.
    bool evaluable(const GridFunction& u, const Point& x) const;

    /// Operator value at every box node; NaN at nodes that are not evaluable
    /// unless `margin` is false, in which case lattice points outside the box use
    /// the tail.
    std::vector<double> apply(const GridFunction& u, Exec exec = Exec::parallel, bool margin = true) const;
    /// Same restricted to the listed box nodes (output aligned with `nodes`).
    std::vector<double> apply_nodes(const GridFunction& u, const std::vector<std::size_t>& nodes,
                                    Exec exec = Exec::parallel) const;

private:
    void check_grid(const GridFunction& u) const;
    double node_value(const double* ext, std::size_t c, const std::ptrdiff_t* flat, const FarField& far,
                      const Point& x) const;

    DiscreteOperator disc_;
};

double eval_linear(const GridFunction& u, const Point& x, const KernelSpec& k, const QuadratureSpec& q = {});
double eval_pucci(const GridFunction& u, const Point& x, bool plus, const Params& params,
                  const QuadratureSpec& q = {});
double eval_isaacs(const GridFunction& u, const Point& x, const OperatorSpec& op, const QuadratureSpec& q = {});

}  // namespace landis
