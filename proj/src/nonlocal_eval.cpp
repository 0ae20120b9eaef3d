#include "landis/nonlocal_eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "landis/errors.hpp"

namespace landis {

namespace {

// Lattice of u's box padded by the stencil reach.
ExtendedLattice lattice_of(const GridFunction& u, int reach) {
    ExtendedLattice lat(u.domain(), reach + 1);
    const auto& tail = u.tail();
    const int N = u.dim();
    lat.fill(
        u.domain(), [&](std::size_t k) { return u[k]; },
        [&](const Point& x) {
            const double v = tail(x, N);
            if (!std::isfinite(v)) throw EvaluationError("non-finite tail value on the stencil lattice");
            return v;
        });
    return lat;
}

}  // namespace

Evaluator::Evaluator(OperatorSpec op, double h, double R_cut, QuadratureSpec q)
    : disc_(std::move(op), h, R_cut, q) {}

void Evaluator::check_grid(const GridFunction& u) const {
    if (u.dim() != disc_.N()) throw InputError("evaluator: grid dimension does not match the operator");
    const double h = disc_.geometry().h;
    if (std::abs(u.domain().h - h) > 1e-12 * h)
        throw InputError("evaluator: grid mesh width does not match the stencil");
}

bool Evaluator::evaluable(const GridFunction& u, const Point& x) const {
    const DomainSpec& d = u.domain();
    const double margin = (disc_.geometry().core_cells + 1) * d.h * (1.0 - 1e-9);
    const double gap0 = d.R - std::abs(x[0] - d.center[0]);
    if (gap0 < margin) return false;
    return d.N == 1 || d.R - std::abs(x[1] - d.center[1]) >= margin;
}

double Evaluator::linear_at(std::size_t k, const GridFunction& u, const Point& x) const {
    check_grid(u);
    if (!evaluable(u, x)) throw InputError("evaluation point too close to the grid boundary");
    const auto& geom = disc_.geometry();
    const auto& w = disc_.weights(k);
    const double h = geom.h;
    const double ux = u.evaluate(x);
    double sum = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) {
        const Point y{geom.offsets[e][0] * h, geom.offsets[e][1] * h};
        sum += w[e] * (u.evaluate(x + y) + u.evaluate(x - y) - 2.0 * ux);
    }
    const FarField far(disc_, u);
    return sum + far.linear(k, x, ux);
}

double Evaluator::pucci_at(bool plus, const GridFunction& u, const Point& x) const {
    check_grid(u);
    if (!evaluable(u, x)) throw InputError("evaluation point too close to the grid boundary");
    const Params& p = disc_.spec().params;
    const double up = plus ? p.Lambda : p.lambda;
    const double down = plus ? p.lambda : p.Lambda;
    const auto& geom = disc_.geometry();
    const auto& w = disc_.unit_weights();
    const double h = geom.h;
    const double ux = u.evaluate(x);
    double sum = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) {
        const Point y{geom.offsets[e][0] * h, geom.offsets[e][1] * h};
        const double d = u.evaluate(x + y) + u.evaluate(x - y) - 2.0 * ux;
        sum += (d > 0.0 ? up : down) * w[e] * d;
    }
    const FarField far(disc_, u);
    return sum + far.pucci(plus, x, ux).first;
}

double Evaluator::at(const GridFunction& u, const Point& x) const {
    const OperatorSpec& op = disc_.spec();
    switch (op.mode) {
    case OperatorMode::pucci_plus: return pucci_at(true, u, x);
    case OperatorMode::pucci_minus: return pucci_at(false, u, x);
    case OperatorMode::single: return linear_at(0, u, x);
    case OperatorMode::sup:
    case OperatorMode::inf: break;
    }
    double best = linear_at(0, u, x);
    for (std::size_t k = 1; k < disc_.kernel_count(); ++k) {
        const double v = linear_at(k, u, x);
        best = op.mode == OperatorMode::sup ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

double Evaluator::node_value(const double* ext, std::size_t c, const std::ptrdiff_t* flat, const FarField& far,
                             const Point& x) const {
    const OperatorSpec& op = disc_.spec();
    const double ux = ext[c];
    if (op.is_pucci()) {
        const bool plus = op.mode == OperatorMode::pucci_plus;
        return disc_.local_pucci(plus, ext, c, flat) + far.pucci(plus, x, ux).first;
    }
    double best = disc_.local_linear(0, ext, c, flat) + far.linear(0, x, ux);
    for (std::size_t k = 1; k < disc_.kernel_count(); ++k) {
        const double v = disc_.local_linear(k, ext, c, flat) + far.linear(k, x, ux);
        best = op.mode == OperatorMode::sup ? std::max(best, v) : std::min(best, v);
    }
    return best;
}

std::vector<double> Evaluator::apply(const GridFunction& u, Exec exec, bool margin) const {
    check_grid(u);
    const ExtendedLattice lat = lattice_of(u, disc_.geometry().reach);
    const auto flat = disc_.flat_offsets(lat.stride);
    const FarField far(disc_, u);
    const DomainSpec& d = u.domain();
    std::vector<double> out(u.size(), std::numeric_limits<double>::quiet_NaN());
    for_each_index(u.size(), exec, [&](std::size_t k) {
        const Point x = d.node(k);
        if (margin && !evaluable(u, x)) return;
        out[k] = node_value(lat.values.data(), lat.index_of_node(k), flat.data(), far, x);
    });
    return out;
}

std::vector<double> Evaluator::apply_nodes(const GridFunction& u, const std::vector<std::size_t>& nodes,
                                           Exec exec) const {
    check_grid(u);
    const ExtendedLattice lat = lattice_of(u, disc_.geometry().reach);
    const auto flat = disc_.flat_offsets(lat.stride);
    const FarField far(disc_, u);
    const DomainSpec& d = u.domain();
    std::vector<double> out(nodes.size());
    for_each_index(nodes.size(), exec, [&](std::size_t i) {
        const std::size_t k = nodes[i];
        out[i] = node_value(lat.values.data(), lat.index_of_node(k), flat.data(), far, d.node(k));
    });
    return out;
}

double eval_linear(const GridFunction& u, const Point& x, const KernelSpec& k, const QuadratureSpec& q) {
    return Evaluator(OperatorSpec::single(k), u.domain().h, u.domain().R_cut, q).linear_at(0, u, x);
}

double eval_pucci(const GridFunction& u, const Point& x, bool plus, const Params& params, const QuadratureSpec& q) {
    return Evaluator(OperatorSpec::pucci(plus, params), u.domain().h, u.domain().R_cut, q).pucci_at(plus, u, x);
}

double eval_isaacs(const GridFunction& u, const Point& x, const OperatorSpec& op, const QuadratureSpec& q) {
    return Evaluator(op, u.domain().h, u.domain().R_cut, q).at(u, x);
}

}  // namespace landis
