#include "landis/functions.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "landis/errors.hpp"

namespace landis {

namespace {

struct KindName {
    FunctionKind kind;
    const char* name;
};

constexpr std::array<KindName, 9> kKindNames{{
    {FunctionKind::zero, "zero"},
    {FunctionKind::constant, "constant"},
    {FunctionKind::gaussian, "gaussian"},
    {FunctionKind::power_tail, "power_tail"},
    {FunctionKind::cosine, "cosine"},
    {FunctionKind::bump, "bump"},
    {FunctionKind::indicator_ball, "indicator_ball"},
    {FunctionKind::exp_decay, "exp_decay"},
    {FunctionKind::getoor, "getoor"},
}};

double dist2(const Point& x, const Point& c) {
    const double a = x[0] - c[0];
    const double b = x[1] - c[1];
    return a * a + b * b;
}

}  // namespace

std::string to_string(FunctionKind kind) {
    for (const auto& k : kKindNames)
        if (k.kind == kind) return k.name;
    return "unknown";
}

FunctionKind function_kind_from_string(const std::string& name) {
    for (const auto& k : kKindNames)
        if (name == k.name) return k.kind;
    throw InputError("unknown builtin function '" + name + "'");
}

FunctionDescriptor constant_function(double value) {
    FunctionDescriptor d;
    d.kind = FunctionKind::constant;
    d.amplitude = value;
    return d;
}

double FunctionDescriptor::operator()(const Point& x) const {
    switch (kind) {
    case FunctionKind::zero:
        return 0.0;
    case FunctionKind::constant:
        return amplitude;
    case FunctionKind::gaussian:
        return amplitude * std::exp(-dist2(x, center) / (width * width));
    case FunctionKind::power_tail: {
        const double r2 = x[0] * x[0] + x[1] * x[1];
        return amplitude / std::sqrt(1.0 + std::pow(r2, exponent));
    }
    case FunctionKind::cosine:
        return amplitude * std::cos(wave[0] * x[0] + wave[1] * x[1]);
    case FunctionKind::bump:
    case FunctionKind::getoor: {
        const double t = 1.0 - dist2(x, center) / (width * width);
        return t > 0.0 ? amplitude * std::pow(t, exponent) : 0.0;
    }
    case FunctionKind::indicator_ball:
        return dist2(x, center) <= width * width ? amplitude : 0.0;
    case FunctionKind::exp_decay:
        return amplitude * std::exp(-exponent * std::hypot(x[0], x[1]));
    }
    return 0.0;
}

std::vector<std::pair<std::string, double>> FunctionDescriptor::fields() const {
    switch (kind) {
    case FunctionKind::zero:
        return {};
    case FunctionKind::constant:
        return {{"value", amplitude}};
    case FunctionKind::gaussian:
        return {{"amplitude", amplitude}, {"width", width}, {"cx", center[0]}, {"cy", center[1]}};
    case FunctionKind::power_tail:
        return {{"amplitude", amplitude}, {"p", exponent}};
    case FunctionKind::cosine:
        return {{"amplitude", amplitude}, {"kx", wave[0]}, {"ky", wave[1]}};
    case FunctionKind::bump:
        return {{"amplitude", amplitude}, {"radius", width}, {"power", exponent},
                {"cx", center[0]}, {"cy", center[1]}};
    case FunctionKind::indicator_ball:
        return {{"value", amplitude}, {"radius", width}, {"cx", center[0]}, {"cy", center[1]}};
    case FunctionKind::exp_decay:
        return {{"amplitude", amplitude}, {"rate", exponent}};
    case FunctionKind::getoor:
        return {{"amplitude", amplitude}, {"radius", width}, {"exponent", exponent},
                {"cx", center[0]}, {"cy", center[1]}};
    }
    return {};
}

void FunctionDescriptor::set_field(const std::string& key, double value) {
    const auto known = fields();
    const bool ok = std::any_of(known.begin(), known.end(),
                                [&](const auto& f) { return f.first == key; });
    if (!ok)
        throw InputError("builtin '" + to_string(kind) + "' has no parameter '" + key + "'");
    if (key == "value" || key == "amplitude") amplitude = value;
    else if (key == "width" || key == "radius") width = value;
    else if (key == "p" || key == "power" || key == "rate" || key == "exponent") exponent = value;
    else if (key == "cx") center[0] = value;
    else if (key == "cy") center[1] = value;
    else if (key == "kx") wave[0] = value;
    else if (key == "ky") wave[1] = value;
    if ((key == "width" || key == "radius") && !(value > 0.0))
        throw InputError("builtin '" + to_string(kind) + "': " + key + " must be positive");
}

}  // namespace landis
