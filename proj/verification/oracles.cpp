#include "verification/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/gamma.hpp>

namespace verification {

namespace {

// Oscillatory integrand on [0, inf): integrate between consecutive zeros of the
// carrier and stop once the Gaussian envelope is negligible.
template <class F>
double oscillatory_half_line(F&& f, double period) {
    boost::math::quadrature::tanh_sinh<double> ts;
    const double cut = 40.0;  // e^(-k^2/4) < 1e-170 beyond
    const double step = std::min(period, 1.0);
    double sum = 0.0;
    for (double a = 0.0; a < cut; a += step) sum += ts.integrate(f, a, std::min(a + step, cut), 1e-14);
    return sum;
}

}  // namespace

double fractional_laplacian_gaussian(int N, double s, double r) {
    const double pi = std::numbers::pi;
    const double period = r > 0.0 ? pi / r : 1.0;
    if (N == 1) {
        const auto f = [&](double k) { return std::pow(k, 2.0 * s) * std::exp(-0.25 * k * k) * std::cos(k * r); };
        return oscillatory_half_line(f, period) / std::sqrt(pi);
    }
    const auto f = [&](double k) {
        return std::pow(k, 2.0 * s + 1.0) * std::exp(-0.25 * k * k) * boost::math::cyl_bessel_j(0, k * r);
    };
    return 0.5 * oscillatory_half_line(f, period);
}

double calibrated_constant_1d(double s) {
    // 2 int_0^inf (1 - cos y) y^(-1-2s) dy, split at 1; 1 - cos y = 2 sin^2(y/2)
    boost::math::quadrature::tanh_sinh<double> ts;
    // 2 (sin(y/2)/y)^2 y^(1-2s), written so tiny y does not produce 0 * inf
    const auto near = [&](double y) {
        const double q = y < 1e-8 ? 0.5 : std::sin(0.5 * y) / y;
        return 2.0 * q * q * std::pow(y, 1.0 - 2.0 * s);
    };
    double total = ts.integrate(near, 0.0, 1.0, 1e-14);
    // on [1, inf): int y^(-1-2s) = 1/(2s); the cosine part by periods
    total += 1.0 / (2.0 * s);
    const double pi = std::numbers::pi;
    double osc = 0.0;
    double a = 1.0;
    const auto cosf = [&](double y) { return std::cos(y) * std::pow(y, -1.0 - 2.0 * s); };
    // first to the next half-period boundary, then alternating half periods with
    // Euler-type averaging of the partial sums
    double b = 1.5 * pi;
    osc += ts.integrate(cosf, a, b, 1e-14);
    a = b;
    double prev = osc, prev2 = osc;
    for (int k = 0; k < 4000; ++k) {
        osc += ts.integrate(cosf, a, a + pi, 1e-14);
        a += pi;
        prev2 = prev;
        prev = osc;
    }
    // average of the last two partial sums of an alternating series
    osc = 0.5 * (prev + prev2);
    total -= osc;
    return 1.0 / (2.0 * total);
}

double weight_integral(int N, double q) {
    const double pi = std::numbers::pi;
    const double half_line = (pi / q) / std::sin(pi * N / q);  // int_0^inf r^(N-1)/(1+r^q) dr
    return N == 1 ? 2.0 * half_line : 2.0 * pi * half_line;
}

double weight_integral_quadrature(int N, double q) {
    boost::math::quadrature::exp_sinh<double> es;
    const auto f = [&](double r) { return std::pow(r, N - 1) / (1.0 + std::pow(r, q)); };
    const double half_line = es.integrate(f, 0.0, std::numeric_limits<double>::infinity());
    return N == 1 ? 2.0 * half_line : 2.0 * std::numbers::pi * half_line;
}

double getoor_constant(int N, double s) {
    using boost::math::tgamma;
    return tgamma(0.5 * N) / (std::pow(4.0, s) * tgamma(1.0 + s) * tgamma(0.5 * N + s));
}

double getoor_profile(int N, double s, double r) {
    const double t = 1.0 - r * r;
    return t > 0.0 ? getoor_constant(N, s) * std::pow(t, s) : 0.0;
}

}  // namespace verification
