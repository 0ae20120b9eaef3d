#include "landis/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "landis/errors.hpp"

namespace landis {

Modulation Modulation::constant(double a) {
    Modulation m;
    m.values = {a};
    return m;
}

int Modulation::sector_of(double theta) const {
    if (sectors == 1) return 0;
    const int k = static_cast<int>(std::floor(theta / (std::numbers::pi / sectors)));
    return std::clamp(k, 0, sectors - 1);
}

int Modulation::shell_of(double rho) const {
    return static_cast<int>(std::upper_bound(shell_edges.begin(), shell_edges.end(), rho) - shell_edges.begin());
}

double Modulation::operator()(const Point& y, int N) const {
    if (N == 1) return at(shell_of(std::abs(y[0])), 0);
    // canonical representative of {y, -y} so that evenness is exact
    Point c = y;
    if (c[1] < 0.0 || (c[1] == 0.0 && c[0] < 0.0)) c = {-c[0], -c[1]};
    double theta = std::atan2(c[1], c[0]);
    if (theta >= std::numbers::pi) theta = 0.0;
    return at(shell_of(std::hypot(c[0], c[1])), sector_of(theta));
}

bool Modulation::is_constant() const {
    return std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); });
}

double Modulation::min_value() const { return *std::min_element(values.begin(), values.end()); }
double Modulation::max_value() const { return *std::max_element(values.begin(), values.end()); }

void Modulation::validate(int N) const {
    if (sectors < 1 || sectors > 16) throw InputError("modulation: sectors must be in 1..16");
    if (N == 1 && sectors != 1) throw InputError("modulation: 1-D kernels have a single angular sector");
    if (shell_edges.size() > 7) throw InputError("modulation: at most 8 radial shells");
    for (std::size_t i = 0; i < shell_edges.size(); ++i) {
        if (!(shell_edges[i] > 0.0) || !std::isfinite(shell_edges[i]))
            throw InputError("modulation: shell edges must be positive and finite");
        if (i > 0 && !(shell_edges[i] > shell_edges[i - 1]))
            throw InputError("modulation: shell edges must increase");
    }
    if (values.size() != static_cast<std::size_t>(sectors * shells()))
        throw InputError("modulation: expected sectors*shells values");
    for (double v : values)
        if (!(v > 0.0) || !std::isfinite(v)) throw InputError("modulation: values must be positive and finite");
}

void KernelSpec::validate() const {
    params.validate();
    modulation.validate(params.N);
    const double tol = 1e-12 * params.Lambda;
    if (modulation.min_value() < params.lambda - tol || modulation.max_value() > params.Lambda + tol)
        throw InputError("kernel: modulation leaves [lambda, Lambda]");
}

std::string to_string(OperatorMode mode) {
    switch (mode) {
    case OperatorMode::single: return "single";
    case OperatorMode::sup: return "sup";
    case OperatorMode::inf: return "inf";
    case OperatorMode::pucci_plus: return "pucci_plus";
    case OperatorMode::pucci_minus: return "pucci_minus";
    }
    return "unknown";
}

OperatorMode operator_mode_from_string(const std::string& name) {
    for (auto m : {OperatorMode::single, OperatorMode::sup, OperatorMode::inf, OperatorMode::pucci_plus,
                   OperatorMode::pucci_minus})
        if (to_string(m) == name) return m;
    throw InputError("unknown operator mode '" + name + "'");
}

OperatorSpec OperatorSpec::single(const KernelSpec& k) {
    OperatorSpec op;
    op.mode = OperatorMode::single;
    op.family = {k};
    op.params = k.params;
    return op;
}

OperatorSpec OperatorSpec::sup(std::vector<KernelSpec> family, const Params& params) {
    OperatorSpec op;
    op.mode = OperatorMode::sup;
    op.family = std::move(family);
    op.params = params;
    return op;
}

OperatorSpec OperatorSpec::inf(std::vector<KernelSpec> family, const Params& params) {
    OperatorSpec op = sup(std::move(family), params);
    op.mode = OperatorMode::inf;
    return op;
}

OperatorSpec OperatorSpec::pucci(bool plus, const Params& params) {
    OperatorSpec op;
    op.mode = plus ? OperatorMode::pucci_plus : OperatorMode::pucci_minus;
    op.params = params;
    return op;
}

void OperatorSpec::validate() const {
    params.validate();
    if (is_pucci()) {
        if (!family.empty()) throw InputError("operator: Pucci modes take no kernel family");
        return;
    }
    if (family.empty()) throw InputError("operator: kernel family must be nonempty");
    if (mode == OperatorMode::single && family.size() != 1)
        throw InputError("operator: single mode takes exactly one kernel");
    const double tol = 1e-12 * params.Lambda;
    for (const auto& k : family) {
        k.validate();
        if (k.params.N != params.N || k.params.s != params.s)
            throw InputError("operator: kernel N/s differ from operator params");
        if (k.modulation.min_value() < params.lambda - tol || k.modulation.max_value() > params.Lambda + tol)
            throw InputError("operator: kernel modulation leaves the operator's [lambda, Lambda]");
    }
}

OperatorSpec dual(const OperatorSpec& op) {
    OperatorSpec d = op;
    switch (op.mode) {
    case OperatorMode::single: break;
    case OperatorMode::sup: d.mode = OperatorMode::inf; break;
    case OperatorMode::inf: d.mode = OperatorMode::sup; break;
    case OperatorMode::pucci_plus: d.mode = OperatorMode::pucci_minus; break;
    case OperatorMode::pucci_minus: d.mode = OperatorMode::pucci_plus; break;
    }
    return d;
}

double kernel_value(const KernelSpec& k, const Point& y) {
    const double r = norm(y, k.params.N);
    if (r == 0.0) throw InputError("kernel_value: y must be nonzero");
    return k.modulation(y, k.params.N) / std::pow(r, k.params.order());
}

double fractional_laplacian_constant(int N, double s) {
    return s * std::pow(4.0, s) * std::tgamma(0.5 * N + s) /
           (std::pow(std::numbers::pi, 0.5 * N) * std::tgamma(1.0 - s));
}

KernelSpec fractional_laplacian_kernel(const Params& params) {
    params.validate();
    const double c = fractional_laplacian_constant(params.N, params.s);
    KernelSpec k;
    k.params = {params.N, params.s, c, c};
    k.modulation = Modulation::constant(c);
    return k;
}

}  // namespace landis
