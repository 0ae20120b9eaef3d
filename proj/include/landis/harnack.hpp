#pragma once

#include <string>
#include <vector>

#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"
#include "landis/parallel.hpp"
#include "landis/params.hpp"
#include "landis/stencil.hpp"

namespace landis {

struct HarnackConfig {
    double C0 = 0.0;
    double V_bound = 0.0;
    double r0 = 1.0;
    std::vector<double> R_list{1, 2, 4, 8};

    void validate() const;
    bool operator==(const HarnackConfig&) const = default;
};

/// (1 + V_bound)^(-1/(2s)).
double harnack_radius(double V_bound, double s);

struct Rescaled {
    GridFunction v;        // v(y) = u(x0 + r0 y)
    GridFunction V_tilde;  // r0^(2s) V(x0 + r0 y)
    double V_local = 0.0;  // sup |V| over B_{2 r0}(x0), sampled
    double V_tilde_sup = 0.0;  // sup |V_tilde| over the nodes of the closed unit ball
    bool rule_holds = true;
    std::string warning;
};

/// Grid for the rescaled function: unit ball around 0 with h_v ~ h/r0 and R_cut
/// scaled by 1/r0. Values outside the box come from u itself.
DomainSpec rescaled_domain(const DomainSpec& u_domain, double r0);
GridFunction rescale_function(const GridFunction& u, const Point& x0, double r0);
Rescaled rescale(const GridFunction& u, const GridFunction& V, const Point& x0, double r0, double s);

struct WeightRatio {
    double ratio = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool holds() const { return lower <= ratio && ratio <= upper; }
};

/// (1+|z|^q)/(r0^q+|z-x0|^q) with q = N+2s, and its bounds 3^-q/(1+|x0|^q) and
/// (2/r0)^q (1+|x0|^q).
WeightRatio weight_ratio_bounds(const Point& x0, double r0, const Point& z, const Params& params);

struct NormComparison {
    double norm_u = 0.0;
    double norm_v = 0.0;
    double lower = 0.0;  // r0^(2s) 3^-q/(1+|x0|^q) |u|
    double upper = 0.0;  // r0^(2s) (2/r0)^q (1+|x0|^q) |u|
    bool holds = false;
};

NormComparison norm_comparison_check(const GridFunction& u, const Point& x0, double r0, const Params& params);

/// Min over grid nodes in the closed ball B_r(c); +inf if none.
double grid_inf(const GridFunction& u, const Point& c, double r);

struct WeakHarnack {
    double norm = 0.0;
    double inf_half = 0.0;
    double C_fit = 0.0;
    double defect = 0.0;  // max over B_1 nodes of M^- u + V u - C0
    double V_sup = 0.0;   // over B_1 nodes
    bool flag = false;
};

/// Unit-ball weak Harnack check with Pucci bounds from `params`. Throws
/// InputError when u is negative at a node or at a sampled tail point.
WeakHarnack verify_weak_harnack_unit(const GridFunction& u, const GridFunction& V, double C0, const Params& params,
                                     double C_budget = 1e3, double defect_tol = 1e-6, const QuadratureSpec& q = {},
                                     Exec exec = Exec::parallel);

struct ScaledHarnack {
    std::vector<double> R;
    std::vector<double> rho;  // |u| / (inf_{B_R} u + C0)
    double exponent_fit = 0.0;
    double C_fit = 0.0;       // max rho / (1 + R^q)
    double defect = 0.0;      // max of M^- u + V u - C0 over nodes in B_{R_max + 1}
    bool minimum_principle_violated = false;
    bool flag = false;
    std::string diagnostic;
};

ScaledHarnack verify_harnack_scaled(const GridFunction& u, const GridFunction& V, double C0,
                                    const std::vector<double>& R_list, const Params& params, double slack = 0.3,
                                    double defect_tol = 1e-6, const QuadratureSpec& q = {},
                                    Exec exec = Exec::parallel);

/// Centers on the lattice (r0/2) Z^N whose balls B_{r0/2} cover B_R.
std::vector<Point> covering_centers(int N, double R, double r0);

struct CoveringCheck {
    double cover_min = 0.0;
    double inf_ball = 0.0;
    std::size_t centers = 0;
    bool holds = false;
};

CoveringCheck covering_check(const GridFunction& u, double R, double r0);

/// Checks u >= 0 at nodes and at sampled points outside the box.
bool globally_nonnegative(const GridFunction& u);

}  // namespace landis
