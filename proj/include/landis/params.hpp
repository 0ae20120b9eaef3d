#pragma once

#include <array>
#include <cmath>

namespace landis {

/// Points always carry two coordinates; in 1-D the second one is ignored and kept at 0.
using Point = std::array<double, 2>;

struct Params {
    int N = 1;
    double s = 0.5;
    double lambda = 1.0;
    double Lambda = 1.0;

    /// N + 2s, the homogeneity of the kernel singularity.
    double order() const { return N + 2.0 * s; }

    void validate() const;

    bool operator==(const Params&) const = default;
};

inline double norm(const Point& x, int N) {
    return N == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
}

inline Point operator+(const Point& a, const Point& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Point operator-(const Point& a, const Point& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Point operator*(double t, const Point& a) { return {t * a[0], t * a[1]}; }

}  // namespace landis
