#include "landis/harnack.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "landis/decay.hpp"
#include "landis/errors.hpp"
#include "landis/log.hpp"
#include "landis/nonlocal_eval.hpp"
#include "landis/weighted_norm.hpp"

namespace landis {

void HarnackConfig::validate() const {
    if (!(C0 >= 0.0)) throw InputError("harnack: C0 must be >= 0");
    if (!(V_bound >= 0.0)) throw InputError("harnack: V_bound must be >= 0");
    if (!(r0 > 0.0 && r0 <= 1.0)) throw InputError("harnack: r0 must lie in (0, 1]");
    if (R_list.empty()) throw InputError("harnack: R_list must be nonempty");
    for (double R : R_list)
        if (!(R > 0.0)) throw InputError("harnack: radii must be positive");
}

double harnack_radius(double V_bound, double s) { return std::pow(1.0 + V_bound, -1.0 / (2.0 * s)); }

DomainSpec rescaled_domain(const DomainSpec& u_domain, double r0) {
    DomainSpec d;
    d.N = u_domain.N;
    d.R = 1.0;
    const double q = r0 / u_domain.h;
    const long m = std::max(4L, std::lround(q));
    d.h = 1.0 / static_cast<double>(m);
    d.R_cut = std::max(2.0, u_domain.R_cut / r0);
    return d;
}

GridFunction rescale_function(const GridFunction& u, const Point& x0, double r0) {
    if (!(r0 > 0.0 && r0 <= 1.0)) throw InputError("rescale: r0 must lie in (0, 1]");
    if (r0 == 1.0 && x0 == Point{0.0, 0.0}) return u;
    const auto fn = [u, x0, r0](const Point& y) { return u.evaluate(x0 + r0 * y); };
    // u interpolates its nodes out to the corners of its box; that pre-image needs resolving
    const DomainSpec& du = u.domain();
    const double reach = (norm(x0 - du.center, du.N) + du.R * std::sqrt(double(du.N)) + du.h) / r0;
    return GridFunction::sample(rescaled_domain(du, r0), fn, TailModel::explicit_fn(fn, reach, du.h / r0));
}

Rescaled rescale(const GridFunction& u, const GridFunction& V, const Point& x0, double r0, double s) {
    if (u.dim() != V.dim()) throw InputError("rescale: u and V differ in dimension");
    const int N = u.dim();
    const double scale = std::pow(r0, 2.0 * s);
    const auto Vfn = [V, x0, r0, scale](const Point& y) { return scale * V.evaluate(x0 + r0 * y); };
    const bool identity = r0 == 1.0 && x0 == Point{0.0, 0.0};
    Rescaled out{rescale_function(u, x0, r0),
                 identity ? V : GridFunction::sample(rescaled_domain(u.domain(), r0), Vfn, TailModel::explicit_fn(Vfn)),
                 0.0, 0.0, true, {}};
    const DomainSpec& d = out.V_tilde.domain();
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        const Point y = d.node(k);
        if (norm(y, N) <= 1.0 + 1e-12) out.V_tilde_sup = std::max(out.V_tilde_sup, std::abs(out.V_tilde[k]));
    }
    // sup of |V| on B_{2 r0}(x0), on a mesh no coarser than V's own
    const double step = std::min(V.domain().h, r0 / 8.0);
    const int m = static_cast<int>(std::ceil(2.0 * r0 / step));
    for (int j = (N == 1 ? 0 : -m); j <= (N == 1 ? 0 : m); ++j)
        for (int i = -m; i <= m; ++i) {
            const Point z{i * step, j * step};
            if (norm(z, N) <= 2.0 * r0) out.V_local = std::max(out.V_local, std::abs(V.evaluate(x0 + z)));
        }
    if (r0 > harnack_radius(out.V_local, s) * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "rescale: r0 = " << r0 << " exceeds (1 + |V|)^(-1/(2s)) = " << harnack_radius(out.V_local, s)
            << "; the rescaled potential may exceed 1 on the unit ball";
        out.rule_holds = false;
        out.warning = msg.str();
        warn(out.warning);
    }
    return out;
}

WeightRatio weight_ratio_bounds(const Point& x0, double r0, const Point& z, const Params& params) {
    if (!(r0 > 0.0 && r0 <= 1.0)) throw InputError("weight ratio: r0 must lie in (0, 1]");
    const int N = params.N;
    const double q = params.order();
    const double ax = 1.0 + std::pow(norm(x0, N), q);
    WeightRatio w;
    w.ratio = (1.0 + std::pow(norm(z, N), q)) / (std::pow(r0, q) + std::pow(norm(z - x0, N), q));
    w.lower = std::pow(3.0, -q) / ax;
    w.upper = std::pow(2.0 / r0, q) * ax;
    return w;
}

NormComparison norm_comparison_check(const GridFunction& u, const Point& x0, double r0, const Params& params) {
    const double q = params.order();
    const double ax = 1.0 + std::pow(norm(x0, params.N), q);
    const double jac = std::pow(r0, 2.0 * params.s);
    NormComparison c;
    c.norm_u = weighted_norm(u, params);
    c.norm_v = weighted_norm(rescale_function(u, x0, r0), params);
    c.lower = jac * std::pow(3.0, -q) / ax * c.norm_u;
    c.upper = jac * std::pow(2.0 / r0, q) * ax * c.norm_u;
    c.holds = c.lower <= c.norm_v && c.norm_v <= c.upper;
    return c;
}

double grid_inf(const GridFunction& u, const Point& c, double r) {
    const DomainSpec& d = u.domain();
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < d.node_count(); ++k)
        if (norm(d.node(k) - c, d.N) <= r * (1.0 + 1e-12)) m = std::min(m, u[k]);
    return m;
}

bool globally_nonnegative(const GridFunction& u) {
    for (double v : u.values())
        if (v < 0.0) return false;
    const DomainSpec& d = u.domain();
    const int rays = d.N == 1 ? 2 : 32;
    for (int e = 0; e <= 20; ++e) {
        const double r = std::sqrt(static_cast<double>(d.N)) * d.R * std::ldexp(1.0, e) + norm(d.center, d.N);
        for (int a = 0; a < rays; ++a) {
            const double th = 2.0 * std::numbers::pi * a / rays;
            const Point x = d.N == 1 ? Point{a == 0 ? r : -r, 0.0} : Point{r * std::cos(th), r * std::sin(th)};
            if (u.evaluate(x) < 0.0) return false;
        }
    }
    return true;
}

namespace {

// max of M^- u + V u - C0 over evaluable nodes with |x| < r
double supersolution_defect(const GridFunction& u, const GridFunction& V, double C0, double r, const Params& params,
                            const QuadratureSpec& q, Exec exec, double* V_sup) {
    const DomainSpec& d = u.domain();
    const Evaluator ev(OperatorSpec::pucci(false, params), d.h, d.R_cut, q);
    std::vector<std::size_t> nodes;
    for (std::size_t k = 0; k < d.node_count(); ++k) {
        const Point x = d.node(k);
        if (norm(x, d.N) < r && ev.evaluable(u, x)) nodes.push_back(k);
    }
    if (nodes.empty()) throw InputError("harnack: no evaluable nodes in the test ball");
    const std::vector<double> Mu = ev.apply_nodes(u, nodes, exec);
    double defect = -std::numeric_limits<double>::infinity();
    double vs = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double Vx = V.evaluate(d.node(nodes[i]));
        vs = std::max(vs, std::abs(Vx));
        defect = std::max(defect, Mu[i] + Vx * u[nodes[i]] - C0);
    }
    if (V_sup) *V_sup = vs;
    return defect;
}

}  // namespace

WeakHarnack verify_weak_harnack_unit(const GridFunction& u, const GridFunction& V, double C0, const Params& params,
                                     double C_budget, double defect_tol, const QuadratureSpec& q, Exec exec) {
    if (!(C0 >= 0.0)) throw InputError("weak Harnack: C0 must be >= 0");
    if (!globally_nonnegative(u)) throw InputError("weak Harnack: u must be nonnegative on all of R^N");
    WeakHarnack w;
    w.norm = weighted_norm(u, params);
    w.inf_half = grid_inf(u, {0.0, 0.0}, 0.5);
    if (!std::isfinite(w.inf_half)) throw InputError("weak Harnack: grid has no nodes in B_{1/2}");
    w.defect = supersolution_defect(u, V, C0, 1.0, params, q, exec, &w.V_sup);
    const double denom = w.inf_half + C0;
    w.C_fit = denom > 0.0 ? w.norm / denom : (w.norm > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    w.flag = w.C_fit <= C_budget && w.defect <= defect_tol && w.V_sup <= 1.0;
    return w;
}

ScaledHarnack verify_harnack_scaled(const GridFunction& u, const GridFunction& V, double C0,
                                    const std::vector<double>& R_list, const Params& params, double slack,
                                    double defect_tol, const QuadratureSpec& q, Exec exec) {
    if (!(C0 >= 0.0)) throw InputError("scaled Harnack: C0 must be >= 0");
    if (R_list.size() < 2) throw InputError("scaled Harnack: need at least two radii");
    if (!globally_nonnegative(u)) throw InputError("scaled Harnack: u must be nonnegative on all of R^N");
    const double order = params.order();
    ScaledHarnack out;
    const double nu = weighted_norm(u, params);
    const double R_max = *std::max_element(R_list.begin(), R_list.end());
    out.defect = supersolution_defect(u, V, C0, R_max + 1.0, params, q, exec, nullptr);

    std::vector<double> lx, ly;
    for (double R : R_list) {
        if (R > u.domain().R) throw InputError("scaled Harnack: radius exceeds the grid box");
        const double inf = grid_inf(u, {0.0, 0.0}, R);
        const double denom = inf + C0;
        if (!(denom > 0.0) && nu > 0.0) {
            out.minimum_principle_violated = true;
            std::ostringstream msg;
            msg << "inf over B_" << R << " is " << inf << " with positive norm: strong minimum principle violated";
            out.diagnostic = msg.str();
            continue;
        }
        out.R.push_back(R);
        out.rho.push_back(denom > 0.0 ? nu / denom : 0.0);
        out.C_fit = std::max(out.C_fit, out.rho.back() / (1.0 + std::pow(R, order)));
        lx.push_back(std::log(R));
        ly.push_back(std::log(std::max(out.rho.back(), std::numeric_limits<double>::min())));
    }
    if (out.minimum_principle_violated || lx.size() < 2) {
        out.exponent_fit = std::numeric_limits<double>::quiet_NaN();
        out.flag = false;
        return out;
    }
    out.exponent_fit = least_squares_line(lx, ly).slope;
    out.flag = out.exponent_fit <= order + slack;
    if (out.defect > defect_tol) {
        std::ostringstream msg;
        msg << "supersolution defect " << out.defect << " exceeds " << defect_tol << " on B_" << R_max + 1.0;
        out.diagnostic = msg.str();
        out.flag = false;
    }
    return out;
}

std::vector<Point> covering_centers(int N, double R, double r0) {
    if (!(R > 0.0) || !(r0 > 0.0)) throw InputError("covering: radii must be positive");
    const double a = 0.5 * r0;
    const int m = static_cast<int>(std::ceil((R + a) / a));
    std::vector<Point> c;
    for (int j = (N == 1 ? 0 : -m); j <= (N == 1 ? 0 : m); ++j)
        for (int i = -m; i <= m; ++i) {
            const Point x{i * a, j * a};
            // any point of B_R is within a sqrt(N)/2 < a of a lattice point
            if (norm(x, N) < R + a) c.push_back(x);
        }
    return c;
}

CoveringCheck covering_check(const GridFunction& u, double R, double r0) {
    CoveringCheck c;
    const std::vector<Point> centers = covering_centers(u.dim(), R, r0);
    c.centers = centers.size();
    c.cover_min = std::numeric_limits<double>::infinity();
    for (const Point& x : centers) c.cover_min = std::min(c.cover_min, grid_inf(u, x, 0.5 * r0));
    c.inf_ball = grid_inf(u, {0.0, 0.0}, R);
    c.holds = c.cover_min <= c.inf_ball;
    return c;
}

}  // namespace landis
