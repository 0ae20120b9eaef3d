#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "landis/functions.hpp"
#include "landis/grid_function.hpp"
#include "landis/log.hpp"

namespace test {

inline landis::DomainSpec line(double R, double h, double R_cut) {
    landis::DomainSpec d;
    d.R = R;
    d.h = h;
    d.R_cut = R_cut;
    return d;
}

inline landis::DomainSpec square(double R, double h, double R_cut) {
    landis::DomainSpec d = line(R, h, R_cut);
    d.N = 2;
    d.shape = landis::Shape::box;
    return d;
}

inline landis::FunctionDescriptor gaussian(double amplitude = 1.0, double width = 1.0, landis::Point c = {0, 0}) {
    landis::FunctionDescriptor f;
    f.kind = landis::FunctionKind::gaussian;
    f.amplitude = amplitude;
    f.width = width;
    f.center = c;
    return f;
}

inline landis::FunctionDescriptor bump(double radius, double power, landis::Point c = {0, 0}) {
    landis::FunctionDescriptor f;
    f.kind = landis::FunctionKind::bump;
    f.width = radius;
    f.exponent = power;
    f.center = c;
    return f;
}

inline landis::GridFunction sample_fn(const landis::DomainSpec& d, std::function<double(const landis::Point&)> fn) {
    return landis::GridFunction::sample(d, fn, landis::TailModel::explicit_fn(fn));
}

inline double max_abs_diff(const landis::GridFunction& a, const landis::GridFunction& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

/// Collects warnings for the lifetime of the object.
struct WarningCapture {
    std::vector<std::string> messages;
    WarningCapture() {
        landis::set_warning_sink([this](const std::string& m) { messages.push_back(m); });
    }
    ~WarningCapture() { landis::set_warning_sink(nullptr); }
};

}  // namespace test
