#include "landis/discrete_operator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "landis/errors.hpp"
#include "landis/quadrature.hpp"

namespace landis {

ExtendedLattice::ExtendedLattice(const DomainSpec& box, int pad_)
    : N(box.N), n(box.nodes_per_dim()), pad(pad_), stride(box.nodes_per_dim() + 2 * pad_) {
    const auto s = static_cast<std::size_t>(stride);
    values.assign(N == 1 ? s : s * s, 0.0);
}

std::size_t ExtendedLattice::index_of_node(std::size_t box_node) const {
    if (N == 1) return box_node + pad;
    const std::size_t i = box_node % n;
    const std::size_t j = box_node / n;
    return (j + pad) * stride + (i + pad);
}

void ExtendedLattice::fill(const DomainSpec& box, const std::function<double(std::size_t)>& node_value,
                           const std::function<double(const Point&)>& outside) {
    const int m = box.half_nodes();
    const double h = box.h;
    if (N == 1) {
        for (int a = 0; a < stride; ++a) {
            const int i = a - pad;
            values[a] = (i >= 0 && i < n) ? node_value(static_cast<std::size_t>(i))
                                          : outside({box.center[0] + (i - m) * h, 0.0});
        }
        return;
    }
    for (int b = 0; b < stride; ++b)
        for (int a = 0; a < stride; ++a) {
            const int i = a - pad;
            const int j = b - pad;
            const std::size_t slot = static_cast<std::size_t>(b) * stride + a;
            if (i >= 0 && i < n && j >= 0 && j < n)
                values[slot] = node_value(static_cast<std::size_t>(j) * n + i);
            else
                values[slot] = outside({box.center[0] + (i - m) * h, box.center[1] + (j - m) * h});
        }
}

DiscreteOperator::DiscreteOperator(OperatorSpec op, double h, double R_cut, QuadratureSpec q)
    : op_(std::move(op)), quad_(q) {
    op_.validate();
    geom_ = StencilGeometry::build(op_.params.N, h, R_cut, quad_);
    const double s = op_.params.s;
    const int N = op_.params.N;
    const Modulation unit = Modulation::constant(1.0);
    unit_weights_ = stencil_weights(geom_, s, unit);
    far_mass_unit_ = far_mass_half(N, s, unit, geom_.R_far);
    local_diag_unit_ = 0.0;
    for (double w : unit_weights_) local_diag_unit_ += 2.0 * w;
    for (const auto& k : op_.family) {
        if (k.modulation.is_constant()) {
            const double a = k.modulation.values.front();
            std::vector<double> w(unit_weights_);
            for (double& x : w) x *= a;
            weights_.push_back(std::move(w));
            far_mass_.push_back(a * far_mass_unit_);
        } else {
            weights_.push_back(stencil_weights(geom_, s, k.modulation));
            far_mass_.push_back(far_mass_half(N, s, k.modulation, geom_.R_far));
        }
        double d = 0.0;
        for (double w : weights_.back()) d += 2.0 * w;
        local_diag_.push_back(d);
    }
}

std::vector<std::ptrdiff_t> DiscreteOperator::flat_offsets(int stride) const {
    std::vector<std::ptrdiff_t> out;
    out.reserve(geom_.offsets.size());
    for (const auto& o : geom_.offsets)
        out.push_back(static_cast<std::ptrdiff_t>(o[0]) + static_cast<std::ptrdiff_t>(o[1]) * stride);
    return out;
}

double DiscreteOperator::local_linear(std::size_t k, const double* ext, std::size_t c,
                                      const std::ptrdiff_t* flat) const {
    const auto& w = weights_[k];
    const double uc2 = 2.0 * ext[c];
    double sum = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) sum += w[e] * (ext[c + flat[e]] + ext[c - flat[e]] - uc2);
    return sum;
}

double DiscreteOperator::local_pucci(bool plus, const double* ext, std::size_t c,
                                     const std::ptrdiff_t* flat) const {
    const double up = plus ? op_.params.Lambda : op_.params.lambda;
    const double down = plus ? op_.params.lambda : op_.params.Lambda;
    const auto& w = unit_weights_;
    const double uc2 = 2.0 * ext[c];
    double sum = 0.0;
    for (std::size_t e = 0; e < w.size(); ++e) {
        const double d = ext[c + flat[e]] + ext[c - flat[e]] - uc2;
        sum += (d > 0.0 ? up : down) * w[e] * d;
    }
    return sum;
}

double DiscreteOperator::max_diagonal() const {
    return op_.params.Lambda * (local_diag_unit_ + 2.0 * far_mass_unit_);
}

FarField::FarField(const DiscreteOperator& op, GridFunction src) : op_(&op), src_(std::move(src)) {}

bool FarField::constant_at(const Point& x, double& c) const {
    const auto kind = src_.tail().kind();
    if (kind != TailModel::Kind::zero && kind != TailModel::Kind::constant) return false;
    const DomainSpec& box = src_.domain();
    const double dx = std::abs(x[0] - box.center[0]) + box.R;
    const double dy = box.N == 1 ? 0.0 : std::abs(x[1] - box.center[1]) + box.R;
    if (std::hypot(dx, dy) >= op_->geometry().R_far) return false;
    c = kind == TailModel::Kind::zero ? 0.0 : src_.tail().c();
    return true;
}

double FarField::integrate(const Point& x, const std::function<double(double, const Point&, double)>& g,
                          bool strict) const {
    const StencilGeometry& geom = op_->geometry();
    const double s = op_->spec().params.s;
    const double two_s = 2.0 * s;
    const double R = geom.R_far;
    const double tol = op_->quadrature().tail_tol;

    // shell edges beyond R_far become split points in t = rho^(-2s)
    std::vector<double> radii{R};
    for (const auto& k : op_->spec().family)
        for (double e : k.modulation.shell_edges)
            if (e > R) radii.push_back(e);
    std::sort(radii.begin(), radii.end());
    radii.erase(std::unique(radii.begin(), radii.end()), radii.end());

    const double ray_tol = op_->N() == 1 ? tol : tol / std::numbers::pi;
    const auto ray = [&](const Point& dir, double& err) {
        double total = 0.0;
        for (std::size_t i = 0; i < radii.size(); ++i) {
            const double t_hi = std::pow(radii[i], -two_s);
            const double t_lo = i + 1 < radii.size() ? std::pow(radii[i + 1], -two_s) : 0.0;
            const auto f = [&](double t) {
                const double rho = std::pow(t, -1.0 / two_s);
                const Point y = rho * dir;
                const double S = src_.evaluate(x + y) + src_.evaluate(x - y);
                if (!std::isfinite(S)) throw EvaluationError("non-finite tail value in far-field quadrature");
                return g(rho, y, S) / two_s;
            };
            const auto r = t_lo > 0.0 ? quad::adaptive(f, t_lo, t_hi, 1e-11, 15)
                                      : quad::dyadic_to_zero(f, t_hi, ray_tol);
            total += r.value;
            err += r.error;
        }
        return total;
    };

    double err = 0.0;
    double total = 0.0;
    if (op_->N() == 1) {
        total = ray({1.0, 0.0}, err);
    } else {
        // split at every kernel's sector boundaries
        int sectors = 1;
        for (const auto& k : op_->spec().family) sectors = std::lcm(sectors, k.modulation.sectors);
        const double width = std::numbers::pi / sectors;
        for (int j = 0; j < sectors; ++j) {
            double inner_err = 0.0;
            const auto angular = [&](double th) {
                double e = 0.0;
                const double v = ray({std::cos(th), std::sin(th)}, e);
                inner_err = std::max(inner_err, e);
                return v;
            };
            const auto r = quad::adaptive(angular, j * width, (j + 1) * width, 1e-9, 12);
            total += r.value;
            err += r.error + width * inner_err;
        }
    }
    if (strict && err > tol) {
        std::ostringstream msg;
        msg << "far-field quadrature error estimate " << err << " exceeds tolerance " << tol << " at x = (" << x[0]
            << ", " << x[1] << ")";
        throw EvaluationError(msg.str());
    }
    return total;
}

double FarField::linear_source(std::size_t k, const Point& x) const {
    double c = 0.0;
    if (constant_at(x, c)) return 2.0 * c * op_->far_mass(k);
    const Modulation& a = op_->modulation(k);
    const int N = op_->N();
    return integrate(x, [&](double, const Point& y, double S) { return a(y, N) * S; });
}

double FarField::linear(std::size_t k, const Point& x, double u_x) const {
    return linear_source(k, x) - 2.0 * u_x * op_->far_mass(k);
}

std::pair<double, double> FarField::pucci(bool plus, const Point& x, double u_x) const {
    const Params& p = op_->spec().params;
    const double up = plus ? p.Lambda : p.lambda;
    const double down = plus ? p.lambda : p.Lambda;
    double c = 0.0;
    if (constant_at(x, c)) {
        const double d = 2.0 * (c - u_x);
        const double a = d > 0.0 ? up : down;
        return {a * d * op_->far_mass_unit(), 2.0 * a * op_->far_mass_unit()};
    }
    const double value = integrate(x, [&](double, const Point&, double S) {
        const double d = S - 2.0 * u_x;
        return (d > 0.0 ? up : down) * d;
    });
    // jumps where the sign of the second difference flips; only steers the
    // linearization, so its accuracy is not enforced
    const double diag = integrate(
        x, [&](double, const Point&, double S) { return 2.0 * (S - 2.0 * u_x > 0.0 ? up : down); }, false);
    return {value, diag};
}

}  // namespace landis
