#include "landis/supersolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landis/errors.hpp"
#include "landis/nonlocal_eval.hpp"
#include "landis/weighted_norm.hpp"

namespace landis {

std::string to_string(Normalization n) { return n == Normalization::base_point ? "base_point" : "weighted_norm"; }

Normalization normalization_from_string(const std::string& name) {
    if (name == "base_point") return Normalization::base_point;
    if (name == "weighted_norm") return Normalization::weighted_norm;
    throw InputError("unknown normalization '" + name + "'");
}

void ExhaustionPlan::validate(int N) const {
    if (radii.empty()) throw InputError("exhaustion: radii must be nonempty");
    for (std::size_t j = 0; j < radii.size(); ++j) {
        if (!(radii[j] > 0.0)) throw InputError("exhaustion: radii must be positive");
        if (j > 0 && !(radii[j] > radii[j - 1])) throw InputError("exhaustion: radii must increase strictly");
    }
    if (norm(x0, N) >= radii.front()) throw InputError("exhaustion: x0 must lie inside the first ball");
    if (!(h0 > 0.0)) throw InputError("exhaustion: h0 must be positive");
    if (!(tol > 0.0) || !(solve_tol > 0.0)) throw InputError("exhaustion: tolerances must be positive");
    if (max_nodes_per_dim < 0) throw InputError("exhaustion: max_nodes_per_dim must be >= 0");
    for (double R : radii) {
        const double q = R / h0;
        if (std::abs(q - std::round(q)) > 1e-9 * q) throw InputError("exhaustion: every radius must be a multiple of h0");
    }
}

double ExhaustionPlan::mesh_width(int N, double R) const {
    const int cap = max_nodes_per_dim > 0 ? max_nodes_per_dim : (N == 1 ? 4097 : 81);
    double h = h0;
    while (2.0 * R / h + 1.0 > cap + 1e-9) {
        const double q = R / (2.0 * h);
        if (std::abs(q - std::round(q)) > 1e-9 * q || q < 1.0) break;
        h *= 2.0;
    }
    return h;
}

SupersolutionResult build_supersolution(const OperatorSpec& op, const GridFunction& V, const ExhaustionPlan& plan,
                                        const QuadratureSpec& quad, Exec exec) {
    op.validate();
    const int N = op.params.N;
    plan.validate(N);
    if (V.dim() != N) throw InputError("supersolution: V has the wrong dimension");

    // the fixed compact B_{R_0}, sampled at the finest mesh
    std::vector<Point> compact;
    {
        const int m = static_cast<int>(std::lround(plan.radii.front() / plan.h0));
        for (int j = (N == 1 ? 0 : -m); j <= (N == 1 ? 0 : m); ++j)
            for (int i = -m; i <= m; ++i) {
                const Point x{i * plan.h0, j * plan.h0};
                if (norm(x, N) <= plan.radii.front() * (1.0 + 1e-12)) compact.push_back(x);
            }
    }

    std::vector<ExhaustionStage> stages;
    std::optional<GridFunction> prev;
    std::optional<GridFunction> current;
    bool converged = false;
    const GridFunction zero_f = GridFunction::sample(DomainSpec{N, {0, 0}, 1.0, 1.0, 2.0}, FunctionDescriptor{});
    for (std::size_t j = 0; j < plan.radii.size(); ++j) {
        ExhaustionStage st;
        st.R = plan.radii[j];
        st.h = plan.mesh_width(N, st.R);
        DomainSpec dom;
        dom.N = N;
        dom.R = st.R;
        dom.h = st.h;
        dom.R_cut = 2.0 * st.R;
        DirichletProblem p{dom, op, V, GridFunction::sample(dom, FunctionDescriptor{}),
                           GridFunction::sample(dom, constant_function(1.0)), quad};
        SolveOptions opt;
        opt.exec = exec;
        auto [u, rep] = solve(p, plan.solve_tol, opt);
        if (!rep.converged) {
            // shifted form: v = u - 1 solves I v + V v = -V with v = 0 outside
            const auto minus_v = [V](const Point& x) { return -V.evaluate(x); };
            DirichletProblem q{dom, op, V, GridFunction::sample(dom, minus_v, TailModel::explicit_fn(minus_v)),
                               GridFunction::sample(dom, FunctionDescriptor{}), quad};
            auto [v, rep2] = solve(q, plan.solve_tol, opt);
            if (rep2.converged) {
                std::vector<double> values(v.values().begin(), v.values().end());
                for (double& x : values) x += 1.0;
                u = GridFunction(dom, std::move(values), TailModel::constant(1.0));
                rep = rep2;
                st.shifted = true;
            }
        }
        st.unknowns = DirichletScheme(p, exec).unknowns();
        st.solve_residual = rep.residual_sup;
        st.iterations = rep.iterations;
        st.u_at_x0 = u.evaluate(plan.x0);
        if (!(st.u_at_x0 > 0.0)) {
            std::ostringstream msg;
            msg << "minimum principle violated: u_j(x0) = " << st.u_at_x0 << " at R = " << st.R
                << "; the principal half-eigenvalues are not positive on this ball";
            throw EvaluationError(msg.str());
        }
        GridFunction normalized = u.scaled(1.0 / st.u_at_x0);
        st.sup_difference = std::numeric_limits<double>::quiet_NaN();
        if (current) {
            double d = 0.0;
            for (const Point& x : compact) d = std::max(d, std::abs(normalized.evaluate(x) - current->evaluate(x)));
            st.sup_difference = d;
        }
        stages.push_back(st);
        prev = current;
        current = normalized;
        if (j > 0 && st.sup_difference <= plan.tol) {
            converged = true;
            break;
        }
    }

    const GridFunction& psi = *current;
    SupersolutionResult out{psi, psi, stages, converged, 0.0, 0.0, 0.0, {}};
    out.min_node_value = *std::min_element(psi.values().begin(), psi.values().end());
    if (!converged) out.diagnostic = "consecutive stages did not settle on B_{R_0} by the last radius";

    // residual on the second-to-last ball
    const std::size_t J = stages.size() - 1;
    const double R_in = plan.radii[J > 0 ? J - 1 : 0];
    std::vector<std::size_t> nodes;
    const DomainSpec& d = psi.domain();
    for (std::size_t k = 0; k < d.node_count(); ++k)
        if (norm(d.node(k), N) < R_in - 1e-12 * R_in) nodes.push_back(k);
    const Evaluator ev(op, d.h, d.R_cut, quad);
    const std::vector<double> Ipsi = ev.apply_nodes(psi, nodes, exec);
    double res = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        res = std::max(res, std::abs(Ipsi[i] + V.evaluate(d.node(nodes[i])) * psi[nodes[i]]));
    out.residual = res;

    Params norm_params = op.params;
    out.weighted_norm = weighted_norm(psi, norm_params);
    if (plan.normalization == Normalization::weighted_norm) out.psi = psi.scaled(1.0 / out.weighted_norm);
    return out;
}

}  // namespace landis
