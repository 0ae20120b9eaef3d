#include "landis/decay.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "landis/errors.hpp"
#include "landis/log.hpp"

namespace landis {

LineFit least_squares_line(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw InputError("line fit needs at least two points");
    const double n = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw InputError("line fit needs distinct abscissae");
    LineFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - (f.intercept + f.slope * x[i]);
        ss += r * r;
    }
    f.rms = std::sqrt(ss / n);
    return f;
}

namespace {

// max |u| over the shell, sampled along rays at radial step `dr`
DecayShell shell_max(const GridFunction& u, double r0, double r1, double dr) {
    const int N = u.dim();
    const int rays = N == 1 ? 2 : 128;
    DecayShell s{r0, r1, r0, 0.0};
    const int steps = std::max(1, static_cast<int>(std::ceil((r1 - r0) / dr)));
    for (int k = 0; k <= steps; ++k) {
        const double r = k == steps ? r1 : r0 + k * dr;
        for (int a = 0; a < rays; ++a) {
            const double th = 2.0 * std::numbers::pi * a / rays;
            const Point x = N == 1 ? Point{a == 0 ? r : -r, 0.0} : Point{r * std::cos(th), r * std::sin(th)};
            const double v = std::abs(u.evaluate(x));
            if (v > s.max_abs) {
                s.max_abs = v;
                s.r_at_max = r;
            }
        }
    }
    return s;
}

}  // namespace

DecayFit fit_decay_exponent(const GridFunction& u, double R_min, double R_max) {
    if (!(R_min > 0.0) || !(R_max > R_min)) throw InputError("decay fit: need 0 < R_min < R_max");
    const double h = u.domain().h;
    const double width = std::max(h, R_max / 32.0);
    const int count = static_cast<int>(std::floor((R_max - R_min) / width + 1e-9));
    if (count < 4) throw InputError("decay fit: window holds fewer than 4 shells");
    DecayFit fit;
    fit.R_min = R_min;
    fit.R_max = R_max;
    const double dr = std::min(h, width / 8.0);
    std::vector<double> lx, ly;
    for (int k = 0; k < count; ++k) {
        const double r0 = R_min + k * width;
        const double r1 = k + 1 == count ? R_max : r0 + width;
        const DecayShell s = shell_max(u, r0, r1, dr);
        fit.shells.push_back(s);
        if (s.max_abs < DBL_MIN) fit.super_polynomial = true;
        lx.push_back(std::log(s.r_at_max));
        ly.push_back(std::log(std::max(s.max_abs, DBL_MIN)));
    }
    for (std::size_t k = 1; k < fit.shells.size(); ++k)
        if (fit.shells[k].max_abs > fit.shells[k - 1].max_abs * (1.0 + 1e-8)) fit.monotone = false;

    const LineFit line = least_squares_line(lx, ly);
    fit.rms_residual = line.rms;
    if (fit.super_polynomial) {
        fit.exponent = std::numeric_limits<double>::infinity();
        fit.amplitude = 0.0;
    } else {
        fit.exponent = -line.slope;
        fit.amplitude = std::exp(line.intercept);
    }
    if (!fit.monotone) {
        std::ostringstream msg;
        msg << "decay fit: shell maxima are not monotone on [" << R_min << ", " << R_max
            << "]; rms residual " << fit.rms_residual;
        warn(msg.str());
    }
    return fit;
}

}  // namespace landis
