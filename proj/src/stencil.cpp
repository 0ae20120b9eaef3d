#include "landis/stencil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "landis/errors.hpp"
#include "landis/quadrature.hpp"

namespace landis {

namespace {

constexpr double pi = std::numbers::pi;

bool canonical(int p, int q) { return q > 0 || (q == 0 && p > 0); }

// Integral of a(theta, rho) rho^(1-2s) d rho over [0, rho_max] along direction
// theta; a is piecewise constant in rho.
double radial_moment(double s, const Modulation& a, double theta, double rho_max, int N) {
    const double e = 2.0 - 2.0 * s;
    const Point dir{std::cos(theta), std::sin(theta)};
    double total = 0.0;
    double lo = 0.0;
    for (std::size_t i = 0; i <= a.shell_edges.size(); ++i) {
        const double hi = i < a.shell_edges.size() ? std::min(a.shell_edges[i], rho_max) : rho_max;
        if (hi > lo) {
            const double mid = 0.5 * (lo + hi);
            total += a(mid * dir, N) * (std::pow(hi, e) - std::pow(lo, e)) / e;
        }
        lo = std::max(lo, hi);
        if (lo >= rho_max) break;
    }
    return total;
}

// Same in 1-D over [lo, hi] (one side).
double radial_moment_1d(double s, const Modulation& a, double lo, double hi) {
    const double e = 2.0 - 2.0 * s;
    double total = 0.0;
    double x = lo;
    for (std::size_t i = 0; i <= a.shell_edges.size() && x < hi; ++i) {
        const double edge = i < a.shell_edges.size() ? a.shell_edges[i] : hi;
        if (edge <= x) continue;
        const double top = std::min(edge, hi);
        total += a.at(a.shell_of(0.5 * (x + top)), 0) * (std::pow(top, e) - std::pow(x, e)) / e;
        x = top;
    }
    return total;
}

double far_radial(double s, double lo, double hi) {
    const double hi_term = std::isinf(hi) ? 0.0 : std::pow(hi, -2.0 * s);
    return (std::pow(lo, -2.0 * s) - hi_term) / (2.0 * s);
}

// Integral over [lo, inf) of a rho^(-1-2s) d rho along direction theta.
double far_radial_modulated(double s, const Modulation& a, double theta, double R, int N) {
    const Point dir{std::cos(theta), std::sin(theta)};
    double total = 0.0;
    double lo = R;
    for (std::size_t i = 0; i <= a.shell_edges.size(); ++i) {
        const double hi = i < a.shell_edges.size() ? a.shell_edges[i] : INFINITY;
        if (hi <= lo) continue;
        const double probe = std::isinf(hi) ? 2.0 * lo : 0.5 * (lo + hi);
        total += a(probe * dir, N) * far_radial(s, lo, hi);
        lo = hi;
    }
    return total;
}

// 2-D core: the cone of half-width pi/8 around direction angle phi intersected
// with the square of half-width r.
double core_cone_moment(double s, const Modulation& a, double phi, double r) {
    std::vector<double> breaks{phi - pi / 8.0, phi + pi / 8.0};
    for (int k = -8; k <= 8; ++k) {
        const double corner = pi / 4.0 + k * pi / 2.0;
        if (corner > breaks[0] && corner < breaks[1]) breaks.push_back(corner);
        for (int j = 0; j < a.sectors; ++j) {
            const double b = k * pi + j * pi / a.sectors;
            if (b > breaks[0] && b < breaks[1]) breaks.push_back(b);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        total += quad::gauss20(
            [&](double th) {
                const double rho = r / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)));
                return radial_moment(s, a, th, rho, 2);
            },
            breaks[i], breaks[i + 1]);
    }
    return total;
}

// Integral of |z|^(-2s) a(z) over the cell centered at (p h, q h), clipped to |z| <= Rc.
double cell_moment_2d(double s, const Modulation& a, double h, int p, int q, double Rc) {
    const double cx = p * h;
    const double cy = q * h;
    const double far_corner = std::hypot(std::abs(cx) + 0.5 * h, std::abs(cy) + 0.5 * h);
    const bool clipped = far_corner > Rc;
    const auto integrand = [&](double x, double y) {
        const double r2 = x * x + y * y;
        if (clipped && r2 > Rc * Rc) return 0.0;
        return a({x, y}, 2) * std::pow(r2, -s);
    };
    const bool near = std::max(std::abs(p), std::abs(q)) <= 4;
    const auto inner = [&](double x) {
        const auto fy = [&](double y) { return integrand(x, y); };
        return (near || clipped) ? quad::gauss20(fy, cy - 0.5 * h, cy + 0.5 * h)
                                 : quad::gauss8(fy, cy - 0.5 * h, cy + 0.5 * h);
    };
    return (near || clipped) ? quad::gauss20(inner, cx - 0.5 * h, cx + 0.5 * h)
                             : quad::gauss8(inner, cx - 0.5 * h, cx + 0.5 * h);
}

}  // namespace

void QuadratureSpec::validate() const {
    if (core_cells < 0) throw InputError("quadrature: core_cells must be >= 0");
    if (!(tail_tol > 0.0)) throw InputError("quadrature: tail tolerance must be positive");
}

StencilGeometry StencilGeometry::build(int N, double h, double R_cut, const QuadratureSpec& q) {
    q.validate();
    if (!(h > 0.0) || !(R_cut > 0.0)) throw InputError("stencil: h and R_cut must be positive");
    StencilGeometry g;
    g.N = N;
    g.h = h;
    g.R_cut = R_cut;
    g.core_cells = q.core_cells;
    const int m = q.core_cells;
    if (N == 1) {
        const int K = static_cast<int>(std::floor(R_cut / h + 1e-9));
        if (K <= m) throw InputError("stencil: R_cut must exceed the core radius");
        g.R_far = (K + 0.5) * h;
        g.reach = K;
        for (int k = 1; k <= K; ++k) g.offsets.push_back({k, 0});
        return g;
    }
    if (R_cut <= (m + 0.5) * h * std::sqrt(2.0)) throw InputError("stencil: R_cut must exceed the core radius");
    g.R_far = R_cut;
    // cells that intersect the ball of radius R_cut
    const int P = static_cast<int>(std::ceil(R_cut / h + 0.5));
    g.reach = P;
    for (int qq = 0; qq <= P; ++qq)
        for (int p = -P; p <= P; ++p) {
            if (!canonical(p, qq)) continue;
            const double dx = std::max(0.0, (std::abs(p) - 0.5) * h);
            const double dy = std::max(0.0, (std::abs(qq) - 0.5) * h);
            const bool in_core = std::max(std::abs(p), std::abs(qq)) <= m;
            const bool direction = (p == 1 && qq == 0) || (p == 0 && qq == 1) || (p == 1 && qq == 1) ||
                                   (p == -1 && qq == 1);
            if (direction || (!in_core && std::hypot(dx, dy) < R_cut)) g.offsets.push_back({p, qq});
        }
    return g;
}

std::vector<double> stencil_weights(const StencilGeometry& g, double s, const Modulation& a) {
    const int m = g.core_cells;
    const double h = g.h;
    const double r = (m + 0.5) * h;
    std::vector<double> w(g.offsets.size(), 0.0);
    if (g.N == 1) {
        for (std::size_t e = 0; e < g.offsets.size(); ++e) {
            const int k = g.offsets[e][0];
            const double y2 = (k * h) * (k * h);
            if (k > m) w[e] += radial_moment_1d(s, a, (k - 0.5) * h, (k + 0.5) * h) / y2;
            if (k == 1) w[e] += radial_moment_1d(s, a, 0.0, r) / (h * h);
        }
        return w;
    }
    for (std::size_t e = 0; e < g.offsets.size(); ++e) {
        const int p = g.offsets[e][0];
        const int q = g.offsets[e][1];
        const double y2 = h * h * (p * p + q * q);
        if (std::max(std::abs(p), std::abs(q)) > m) w[e] += cell_moment_2d(s, a, h, p, q, g.R_cut) / y2;
        double phi = -1.0;
        if (p == 1 && q == 0) phi = 0.0;
        if (p == 1 && q == 1) phi = pi / 4.0;
        if (p == 0 && q == 1) phi = pi / 2.0;
        if (p == -1 && q == 1) phi = 3.0 * pi / 4.0;
        if (phi >= 0.0) w[e] += core_cone_moment(s, a, phi, r) / y2;
    }
    return w;
}

double far_mass_half(int N, double s, const Modulation& a, double R) {
    if (N == 1) return far_radial_modulated(s, a, 0.0, R, 1);
    double total = 0.0;
    for (int j = 0; j < a.sectors; ++j) {
        const double th = (j + 0.5) * pi / a.sectors;
        total += (pi / a.sectors) * far_radial_modulated(s, a, th, R, 2);
    }
    return total;
}

}  // namespace landis
