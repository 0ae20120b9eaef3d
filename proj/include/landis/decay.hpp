#pragma once

#include <vector>

#include "landis/grid_function.hpp"

namespace landis {

struct DecayShell {
    double r_inner = 0.0;
    double r_outer = 0.0;
    double r_at_max = 0.0;
    double max_abs = 0.0;
};

/// Power-law fit max_{shell}|u| ~ amplitude * r^-exponent. `exponent` is +inf when a
/// shell maximum underflows.
struct DecayFit {
    double exponent = 0.0;
    double amplitude = 0.0;
    double R_min = 0.0;
    double R_max = 0.0;
    double rms_residual = 0.0;
    bool super_polynomial = false;
    bool monotone = true;
    std::vector<DecayShell> shells;
};

/// Least squares of log(shell max |u|) against log(radius of that max) over shells
/// of width max(h, R_max/32) covering [R_min, R_max].
DecayFit fit_decay_exponent(const GridFunction& u, double R_min, double R_max);

/// Slope and intercept of the least-squares line through (x_i, y_i).
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms = 0.0;
};
LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace landis
