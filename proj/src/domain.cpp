#include "landis/domain.hpp"

#include <algorithm>
#include <cmath>

#include "landis/errors.hpp"

namespace landis {

std::string to_string(Shape shape) { return shape == Shape::ball ? "ball" : "box"; }

Shape shape_from_string(const std::string& name) {
    if (name == "ball") return Shape::ball;
    if (name == "box") return Shape::box;
    throw InputError("unknown domain shape '" + name + "'");
}

void DomainSpec::validate() const {
    if (N != 1 && N != 2) throw InputError("domain dimension must be 1 or 2");
    if (!(h > 0.0) || !std::isfinite(h)) throw InputError("domain: h must be positive");
    if (!(R > 0.0) || !std::isfinite(R)) throw InputError("domain: R must be positive");
    if (!(R_cut >= 2.0 * R * (1.0 - 1e-12))) throw InputError("domain: R_cut must be >= 2R");
    if (!std::isfinite(center[0]) || !std::isfinite(center[1]))
        throw InputError("domain: center must be finite");
    if (N == 1 && center[1] != 0.0) throw InputError("domain: 1-D center must have zero second coordinate");
    const double q = R / h;
    if (std::abs(q - std::round(q)) > 1e-9 * std::max(1.0, q))
        throw InputError("domain: R/h must be an integer");
    if (!(hole >= 0.0) || hole >= R) throw InputError("domain: hole radius must lie in [0, R)");
}

int DomainSpec::half_nodes() const { return static_cast<int>(std::lround(R / h)); }

std::size_t DomainSpec::node_count() const {
    const auto n = static_cast<std::size_t>(nodes_per_dim());
    return N == 1 ? n : n * n;
}

void DomainSpec::node_coords(std::size_t index, int& i, int& j) const {
    const int m = half_nodes();
    const auto n = static_cast<std::size_t>(nodes_per_dim());
    if (N == 1) {
        i = static_cast<int>(index) - m;
        j = 0;
    } else {
        i = static_cast<int>(index % n) - m;
        j = static_cast<int>(index / n) - m;
    }
}

Point DomainSpec::node(std::size_t index) const {
    int i = 0, j = 0;
    node_coords(index, i, j);
    return {center[0] + i * h, N == 1 ? 0.0 : center[1] + j * h};
}

bool DomainSpec::in_box(const Point& x) const {
    const double eps = 1e-12 * std::max(1.0, R);
    if (std::abs(x[0] - center[0]) > R + eps) return false;
    return N == 1 || std::abs(x[1] - center[1]) <= R + eps;
}

bool DomainSpec::contains(const Point& x) const {
    const double eps = 1e-12 * std::max(1.0, R);
    const Point d = x - center;
    const double r = norm(d, N);
    if (hole > 0.0 && r <= hole + eps) return false;
    if (shape == Shape::ball || N == 1) return r < R - eps;
    return std::max(std::abs(d[0]), std::abs(d[1])) < R - eps;
}

}  // namespace landis
