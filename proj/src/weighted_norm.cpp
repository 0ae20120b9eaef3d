#include "landis/weighted_norm.hpp"

#include <cmath>
#include <numbers>

#include "landis/errors.hpp"
#include "landis/quadrature.hpp"

namespace landis {

double weight(const Point& x, const Params& params) {
    return 1.0 / (1.0 + std::pow(norm(x, params.N), params.order()));
}

namespace {

// Integral of |u| w along the ray c + rho*e, rho from rho_b to infinity, with the
// measure rho^(N-1) d rho. With t = rho^(-2s) the integrand stays bounded:
// d rho = rho^(1+2s) dt / (2s).
quad::Result ray_integral(const GridFunction& u, const Params& params, const Point& e, double rho_b) {
    const Point c = u.domain().center;
    const double two_s = 2.0 * params.s;
    const auto integrand = [&](double t) {
        const double rho = std::pow(t, -1.0 / two_s);
        const Point z = c + rho * e;
        const double v = std::abs(u.tail()(z, params.N));
        if (!std::isfinite(v)) throw EvaluationError("non-finite tail value in weighted norm");
        // rho^(N+2s) * w(z), written to avoid overflow for large rho
        const double zr = norm(z, params.N);
        const double w = 1.0 / (std::pow(rho, -params.order()) + std::pow(zr / rho, params.order()));
        return v * w / two_s;
    };
    const TailModel& tail = u.tail();
    if (!(tail.reach() > rho_b)) return quad::dyadic_to_zero(integrand, std::pow(rho_b, -two_s), 1e-9);

    // resolved panels in rho up to the reach of the hint, far field beyond
    const double span = tail.reach() - rho_b;
    const int panels = static_cast<int>(std::min(8192.0, std::ceil(span / tail.step())));
    const double width = span / panels;
    quad::Result near;
    const auto in_rho = [&](double rho) {
        const double v = std::abs(tail(c + rho * e, params.N));
        if (!std::isfinite(v)) throw EvaluationError("non-finite tail value in weighted norm");
        return v * weight(c + rho * e, params) * std::pow(rho, params.N - 1);
    };
    for (int i = 0; i < panels; ++i) near.value += quad::gauss8(in_rho, rho_b + i * width, rho_b + (i + 1) * width);
    const quad::Result far = quad::dyadic_to_zero(integrand, std::pow(tail.reach(), -two_s), 1e-9);
    return {near.value + far.value, far.error};
}

}  // namespace

NormBreakdown weighted_norm_parts(const GridFunction& u, const Params& params) {
    params.validate();
    const DomainSpec& dom = u.domain();
    if (dom.N != params.N) throw InputError("weighted_norm: params.N does not match the grid dimension");
    if (u.tail().kind() == TailModel::Kind::power_law && u.tail().c() != 0.0 &&
        !(u.tail().p() > -2.0 * params.s))
        throw InputError("weighted_norm: power-law tail with p <= -2s is not integrable against the weight");

    NormBreakdown out;
    const int n = dom.nodes_per_dim();
    const double h = dom.h;
    const auto edge = [n](int a) { return (a == 0 || a == n - 1) ? 0.5 : 1.0; };
    double sum = 0.0;
    if (dom.N == 1) {
        for (int a = 0; a < n; ++a) {
            const auto k = static_cast<std::size_t>(a);
            sum += edge(a) * std::abs(u[k]) * weight(dom.node(k), params);
        }
        out.grid = sum * h;
    } else {
        for (int b = 0; b < n; ++b)
            for (int a = 0; a < n; ++a) {
                const auto k = static_cast<std::size_t>(b) * n + a;
                sum += edge(a) * edge(b) * std::abs(u[k]) * weight(dom.node(k), params);
            }
        out.grid = sum * h * h;
    }

    if (u.tail().kind() == TailModel::Kind::zero) return out;
    if (u.tail().kind() == TailModel::Kind::constant && u.tail().c() == 0.0) return out;

    const double R = dom.R;
    if (dom.N == 1) {
        for (double sgn : {1.0, -1.0}) {
            const auto r = ray_integral(u, params, {sgn, 0.0}, R);
            out.tail += r.value;
            out.tail_error += r.error;
        }
        return out;
    }
    // Four angular pieces centered on the axes; the exit distance R/max(|cos|,|sin|)
    // is smooth inside each.
    constexpr double pi = std::numbers::pi;
    for (int q = 0; q < 4; ++q) {
        const double mid = q * pi / 2.0;
        double err = 0.0;
        const auto angular = [&](double th) {
            const Point e{std::cos(th), std::sin(th)};
            const double rho_b = R / std::max(std::abs(e[0]), std::abs(e[1]));
            const auto r = ray_integral(u, params, e, rho_b);
            err = std::max(err, r.error);
            return r.value;
        };
        const auto r = quad::adaptive(angular, mid - pi / 4.0, mid + pi / 4.0, 1e-9, 12);
        out.tail += r.value;
        out.tail_error += r.error + err * pi / 2.0;
    }
    return out;
}

double weighted_norm(const GridFunction& u, const Params& params) {
    return weighted_norm_parts(u, params).total();
}

}  // namespace landis
