#pragma once

#include <string>
#include <utility>
#include <vector>

#include "landis/params.hpp"

namespace landis {

enum class FunctionKind {
    zero,
    constant,        // amplitude
    gaussian,        // amplitude * exp(-|x-c|^2 / width^2)
    power_tail,      // amplitude * (1 + |x|^(2p))^(-1/2), decays like |x|^-p
    cosine,          // amplitude * cos(k.x)
    bump,            // amplitude * (1 - |x-c|^2/r^2)_+^power
    indicator_ball,  // amplitude on the closed ball |x-c| <= r, 0 elsewhere
    exp_decay,       // amplitude * exp(-rate |x|)
    getoor,          // amplitude * (1 - |x-c|^2/r^2)_+^exponent
};

/// Named builtin function with scalar parameters. The meaning of the generic
/// slots depends on the kind; `fields()` lists the ones that matter, under their
/// public names.
struct FunctionDescriptor {
    FunctionKind kind = FunctionKind::zero;
    double amplitude = 1.0;
    double width = 1.0;     // gaussian width, bump/indicator/getoor radius
    double exponent = 1.0;  // power_tail p, bump power, exp_decay rate, getoor exponent
    Point center{0.0, 0.0};
    Point wave{1.0, 0.0};

    double operator()(const Point& x) const;

    std::vector<std::pair<std::string, double>> fields() const;
    void set_field(const std::string& key, double value);

    bool operator==(const FunctionDescriptor&) const = default;
};

std::string to_string(FunctionKind kind);
FunctionKind function_kind_from_string(const std::string& name);

FunctionDescriptor constant_function(double value);

}  // namespace landis
