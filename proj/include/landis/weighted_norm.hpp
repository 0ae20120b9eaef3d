#pragma once

#include "landis/grid_function.hpp"
#include "landis/params.hpp"

namespace landis {

/// 1 / (1 + |x|^(N+2s)).
double weight(const Point& x, const Params& params);

struct NormBreakdown {
    double grid = 0.0;         // composite trapezoid over the box
    double tail = 0.0;         // adaptive radial quadrature outside the box
    double tail_error = 0.0;   // quadrature error estimate for the tail part
    double total() const { return grid + tail; }
};

/// Weighted L1 norm of u over R^N. Power-law tails with p <= -2s are rejected.
double weighted_norm(const GridFunction& u, const Params& params);
NormBreakdown weighted_norm_parts(const GridFunction& u, const Params& params);

}  // namespace landis
