#include "landis/landis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "landis/decay.hpp"
#include "landis/errors.hpp"
#include "landis/harnack.hpp"
#include "landis/nonlocal_eval.hpp"
#include "landis/weighted_norm.hpp"

namespace landis {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::refused: return "refused";
        case Verdict::consistent_with_zero: return "consistent-with-zero";
        case Verdict::lower_bound_respected: return "lower-bound-respected";
        case Verdict::hypothesis_violated: return "hypothesis-violated";
    }
    return "refused";
}

namespace {

double certification_residual(const GridFunction& u, const GridFunction& V, const OperatorSpec& op,
                              const LandisOptions& opt) {
    const DomainSpec& d = u.domain();
    const Evaluator ev(op, d.h, d.R_cut, opt.quad);
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        const Point x = d.node(k);
        if (d.contains(x) && ev.evaluable(u, x)) nodes.push_back(k);
    }
    if (nodes.empty()) throw InputError("landis: no evaluable nodes in the domain");
    const std::vector<double> Iu = ev.apply_nodes(u, nodes, opt.exec);
    double r = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        r = std::max(r, std::abs(Iu[i] + V.evaluate(d.node(nodes[i])) * u[nodes[i]]));
    return r;
}

}  // namespace

LandisReport landis_pipeline(const GridFunction& u, const GridFunction& V, const OperatorSpec& op,
                             const std::vector<double>& R_list, const LandisOptions& opt) {
    op.validate();
    if (u.dim() != op.params.N || V.dim() != op.params.N) throw InputError("landis: dimension mismatch");
    if (R_list.size() < 2) throw InputError("landis: need at least two radii");
    for (std::size_t i = 1; i < R_list.size(); ++i)
        if (!(R_list[i] > R_list[i - 1])) throw InputError("landis: radii must increase");
    const Params& params = op.params;
    const double order = params.order();

    LandisReport rep;
    rep.residual = certification_residual(u, V, op, opt);
    if (!(rep.residual <= opt.residual_tol)) {
        std::ostringstream msg;
        msg << "residual " << rep.residual << " exceeds " << opt.residual_tol << "; u is not certified";
        rep.diagnostic = msg.str();
        return rep;
    }
    rep.norm = weighted_norm(u, params);
    if (rep.norm < opt.zero_tol) {
        rep.verdict = Verdict::consistent_with_zero;
        return rep;
    }

    const GridFunction abs_u = u.with_values([&] {
        std::vector<double> a(u.values().begin(), u.values().end());
        for (double& x : a) x = std::abs(x);
        return a;
    }());
    std::vector<double> lx, ly;
    bool vanished = false;
    for (double R : R_list) {
        if (R > u.domain().R) throw InputError("landis: radius exceeds the grid box");
        const double inf = grid_inf(abs_u, {0.0, 0.0}, R);
        const double lb = rep.norm * std::pow(R, -order);
        rep.R.push_back(R);
        rep.inf_abs.push_back(inf);
        rep.lower_bound.push_back(lb);
        if (inf > 0.0) {
            rep.C_est = std::max(rep.C_est, lb / inf);
            lx.push_back(std::log(R));
            ly.push_back(std::log(inf));
        } else {
            vanished = true;
        }
    }

    if (opt.build_barrier) {
        const bool inf_type = op.mode == OperatorMode::inf || op.mode == OperatorMode::pucci_minus;
        const SupersolutionResult psi = build_supersolution(inf_type ? dual(op) : op, V, opt.plan, opt.quad, opt.exec);
        rep.barrier_converged = psi.converged;
        // kappa from the ring at R_min, then w_+ = |u| - kappa psi <= 0 further out
        const DomainSpec& d = u.domain();
        const double r_in = R_list.front();
        double kappa = 0.0;
        for (std::size_t k = 0; k < d.node_count(); ++k) {
            const Point x = d.node(k);
            const double r = norm(x, d.N);
            if (r >= r_in && r <= r_in + 2.0 * d.h) kappa = std::max(kappa, std::abs(u[k]) / psi.psi.evaluate(x));
        }
        bool ok = true;
        for (std::size_t k = 0; k < d.node_count(); ++k) {
            const Point x = d.node(k);
            if (norm(x, d.N) >= r_in && std::abs(u[k]) - kappa * psi.psi.evaluate(x) > 1e-9 * (1.0 + kappa)) ok = false;
        }
        rep.kappa = kappa;
        rep.w_plus_nonpositive = ok;
    }

    if (vanished || lx.size() < 2) {
        rep.inf_exponent = std::numeric_limits<double>::infinity();
        rep.verdict = Verdict::hypothesis_violated;
        rep.diagnostic = "inf over B_R of |u| vanishes with nonzero norm";
        return rep;
    }
    rep.inf_exponent = -least_squares_line(lx, ly).slope;
    rep.verdict = rep.inf_exponent <= order + opt.slack ? Verdict::lower_bound_respected : Verdict::hypothesis_violated;
    if (rep.verdict == Verdict::hypothesis_violated) {
        std::ostringstream msg;
        msg << "inf_{B_R}|u| decays with exponent " << rep.inf_exponent << " > " << order
            << ": counterexample candidate, needs scrutiny";
        rep.diagnostic = msg.str();
    }
    return rep;
}

}  // namespace landis
