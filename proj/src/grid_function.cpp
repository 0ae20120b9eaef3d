#include "landis/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "landis/errors.hpp"
#include "landis/log.hpp"

namespace landis {

namespace {

// Splits a grid coordinate into a cell index and a fraction, snapping near-nodes
// so that node points reproduce stored values exactly.
void locate(double q, int n, int& i, double& t) {
    constexpr double snap = 1e-10;
    i = static_cast<int>(std::floor(q));
    t = q - i;
    if (t < snap) {
        t = 0.0;
    } else if (t > 1.0 - snap) {
        ++i;
        t = 0.0;
    }
    if (i >= n - 1) {
        i = n - 1;
        t = 0.0;
    }
    if (i < 0) {
        i = 0;
        t = 0.0;
    }
}

}  // namespace

GridFunction::GridFunction(DomainSpec domain, std::vector<double> values, TailModel tail)
    : domain_(std::move(domain)), tail_(std::move(tail)) {
    domain_.validate();
    if (values.size() != domain_.node_count()) {
        std::ostringstream msg;
        msg << "grid function has " << values.size() << " values, domain has "
            << domain_.node_count() << " nodes";
        throw InputError(msg.str());
    }
    for (double v : values)
        if (!std::isfinite(v)) throw InputError("grid function values must be finite");
    values_ = std::make_shared<const std::vector<double>>(std::move(values));

    double scale = 1.0;
    for (double v : *values_) scale = std::max(scale, std::abs(v));
    const double mismatch = boundary_mismatch();
    if (!(mismatch <= 1e-6 * scale)) {
        std::ostringstream msg;
        msg << "tail does not match boundary nodes (max mismatch " << mismatch << ")";
        warn(msg.str());
    }
}

GridFunction GridFunction::sample(const DomainSpec& domain, const FunctionDescriptor& d) {
    return sample(domain, d, TailModel::from_descriptor(d));
}

GridFunction GridFunction::sample(const DomainSpec& domain,
                                  const std::function<double(const Point&)>& fn, TailModel tail) {
    domain.validate();
    std::vector<double> values(domain.node_count());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = fn(domain.node(k));
    return GridFunction(domain, std::move(values), std::move(tail));
}

double GridFunction::evaluate(const Point& x) const {
    if (!domain_.in_box(x)) return tail_(x, domain_.N);
    const int n = domain_.nodes_per_dim();
    const int m = domain_.half_nodes();
    const double h = domain_.h;
    const auto& v = *values_;
    int i = 0;
    double t = 0.0;
    locate((x[0] - domain_.center[0]) / h + m, n, i, t);
    if (domain_.N == 1) {
        if (t == 0.0) return v[i];
        return v[i] + t * (v[i + 1] - v[i]);
    }
    int j = 0;
    double r = 0.0;
    locate((x[1] - domain_.center[1]) / h + m, n, j, r);
    const auto at = [&](int a, int b) { return v[static_cast<std::size_t>(b) * n + a]; };
    const double lo = t == 0.0 ? at(i, j) : at(i, j) + t * (at(i + 1, j) - at(i, j));
    if (r == 0.0) return lo;
    const double hi = t == 0.0 ? at(i, j + 1) : at(i, j + 1) + t * (at(i + 1, j + 1) - at(i, j + 1));
    return lo + r * (hi - lo);
}

GridFunction GridFunction::with_values(std::vector<double> values) const {
    return GridFunction(domain_, std::move(values), tail_);
}

GridFunction GridFunction::scaled(double t) const {
    std::vector<double> values(*values_);
    for (double& v : values) v *= t;
    return GridFunction(domain_, std::move(values), tail_.scaled(t));
}

GridFunction GridFunction::combine(double a, const GridFunction& u, double b, const GridFunction& v) {
    if (!(u.domain_ == v.domain_)) throw InputError("combine: grid functions live on different domains");
    std::vector<double> values(u.size());
    for (std::size_t k = 0; k < values.size(); ++k) values[k] = a * u[k] + b * v[k];
    return GridFunction(u.domain_, std::move(values),
                        TailModel::combine(a, u.tail_, b, v.tail_, u.domain_.N));
}

double GridFunction::boundary_mismatch() const {
    const int n = domain_.nodes_per_dim();
    const auto& v = *values_;
    double worst = 0.0;
    const auto check = [&](std::size_t k) {
        worst = std::max(worst, std::abs(v[k] - tail_(domain_.node(k), domain_.N)));
    };
    if (domain_.N == 1) {
        check(0);
        check(static_cast<std::size_t>(n - 1));
        return worst;
    }
    for (int a = 0; a < n; ++a) {
        check(static_cast<std::size_t>(a));
        check(static_cast<std::size_t>(n - 1) * n + a);
        check(static_cast<std::size_t>(a) * n);
        check(static_cast<std::size_t>(a) * n + n - 1);
    }
    return worst;
}

}  // namespace landis
