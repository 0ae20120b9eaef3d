#pragma once

#include <array>
#include <vector>

#include "landis/kernel.hpp"

namespace landis {

/// Discretization knobs for the nonlocal integral.
///
/// The singular core is the cell (1-D) or square (2-D) of half-width
/// (core_cells + 1/2) h around x, where delta(u;x,y) is replaced by its second-order
/// surrogate and integrated exactly against the kernel. Lattice cells out to R_cut
/// use the composite midpoint rule with moment-matched weights. Beyond R_cut the
/// tail model is integrated adaptively; `tail_tol` bounds that error estimate.
struct QuadratureSpec {
    int core_cells = 0;
    double tail_tol = 1e-6;

    double inner_radius(double h) const { return (core_cells + 0.5) * h; }
    void validate() const;
    bool operator==(const QuadratureSpec&) const = default;
};

/// Lattice offsets of the half-space (one representative of each +-y pair).
struct StencilGeometry {
    int N = 1;
    double h = 0.0;
    double R_cut = 0.0;
    int core_cells = 0;
    double R_far = 0.0;  // start of the far field
    int reach = 0;       // largest |offset component|
    std::vector<std::array<int, 2>> offsets;

    static StencilGeometry build(int N, double h, double R_cut, const QuadratureSpec& q);
};

/// Weight of each offset for kernel a(y)|y|^(-N-2s):
/// w = (integral of |z|^2 K over the region owned by the offset) / |offset|^2.
std::vector<double> stencil_weights(const StencilGeometry& g, double s, const Modulation& a);

/// Integral of a(y)|y|^(-N-2s) over the half-space part of |y| > R.
double far_mass_half(int N, double s, const Modulation& a, double R);

}  // namespace landis
