#include "verification/fixtures.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landis/nonlocal_eval.hpp"

namespace verification {

using namespace landis;

Params fractional_params() { return fractional_laplacian_kernel(Params{1, 0.5, 1.0, 1.0}).params; }

OperatorSpec fractional_operator(const Params& p) {
    return OperatorSpec::single(fractional_laplacian_kernel(Params{p.N, p.s, 1.0, 1.0}));
}

DirichletProblem getoor_problem(double h) {
    DomainSpec d;
    d.N = 1;
    d.R = 1.0;
    d.h = h;
    d.R_cut = 2.0;
    return DirichletProblem::from_functions(d, fractional_operator(), FunctionDescriptor{}, constant_function(-1.0),
                                            FunctionDescriptor{});
}

Planted planted_harnack(const DomainSpec& domain, const Params& params) {
    FunctionDescriptor fd;
    fd.kind = FunctionKind::power_tail;
    fd.exponent = params.order();
    const GridFunction u = GridFunction::sample(domain, fd);
    const Evaluator ev(OperatorSpec::pucci(false, params), domain.h, domain.R_cut);
    const std::vector<double> Mu = ev.apply(u);
    std::vector<double> V(u.size(), std::numeric_limits<double>::quiet_NaN());
    std::vector<std::size_t> good;
    for (std::size_t k = 0; k < u.size(); ++k)
        if (std::isfinite(Mu[k])) {
            V[k] = -Mu[k] / u[k];
            good.push_back(k);
        }
    // nodes without a full stencil take the value of the nearest evaluable node
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (std::isfinite(V[k])) continue;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t g : good) {
            const double dist = norm(domain.node(k) - domain.node(g), domain.N);
            if (dist < best) {
                best = dist;
                V[k] = V[g];
            }
        }
    }
    const GridFunction Vg(domain, V, TailModel::constant(V.front()));
    // outside the box: the value at the nearest box point
    const auto tail = [Vg, domain](const Point& x) {
        Point c = x;
        for (int i = 0; i < domain.N; ++i)
            c[i] = std::clamp(x[i], domain.center[i] - domain.R, domain.center[i] + domain.R);
        return Vg.evaluate(c);
    };
    return {u, GridFunction(domain, V, TailModel::explicit_fn(tail))};
}

Exterior exterior_solution(Exec exec) {
    DomainSpec d;
    d.N = 1;
    d.R = 64.0;
    d.h = 1.0 / 8;
    d.R_cut = 128.0;
    d.hole = 1.0;
    FunctionDescriptor g;
    g.kind = FunctionKind::indicator_ball;
    g.width = 1.0;
    DirichletProblem p =
        DirichletProblem::from_functions(d, fractional_operator(), constant_function(-0.5), FunctionDescriptor{}, g);
    SolveOptions opt;
    opt.exec = exec;
    auto [u, rep] = solve(p, 1e-10, opt);
    return {p, u, rep};
}

}  // namespace verification
