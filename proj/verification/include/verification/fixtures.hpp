#pragma once

#include <utility>

#include "landis/dirichlet.hpp"
#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"

namespace verification {

/// N = 1, s = 1/2 with lambda = Lambda = c_{1,1/2}.
landis::Params fractional_params();
landis::OperatorSpec fractional_operator(const landis::Params& p = fractional_params());

/// I u = -1 on (-1, 1), u = 0 outside, at mesh width h.
landis::DirichletProblem getoor_problem(double h);

/// u = (1 + |x|^(2q))^(-1/2), q = N+2s, with V = -M^- u / u at evaluable nodes
/// (extended by the nearest such value), so that M^- u + V u = 0 there.
struct Planted {
    landis::GridFunction u;
    landis::GridFunction V;
};
Planted planted_harnack(const landis::DomainSpec& domain, const landis::Params& params);

/// I u - u/2 = 0 on B_64 minus the closed unit ball, u = 1 on that ball and 0
/// beyond 64, at h = 1/8 (N = 1, s = 1/2).
struct Exterior {
    landis::DirichletProblem problem;
    landis::GridFunction u;
    landis::SolveReport report;
};
Exterior exterior_solution(landis::Exec exec = landis::Exec::parallel);

}  // namespace verification
