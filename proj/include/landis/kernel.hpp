#pragma once

#include <string>
#include <vector>

#include "landis/params.hpp"

namespace landis {

/// Piecewise-constant a(y): `sectors` equal angular sectors over [0, pi) (so a is
/// even by construction) times radial shells split at `shell_edges`.
/// values[shell * sectors + sector].
struct Modulation {
    int sectors = 1;
    std::vector<double> shell_edges;
    std::vector<double> values{1.0};

    static Modulation constant(double a);

    int shells() const { return static_cast<int>(shell_edges.size()) + 1; }
    int sector_of(double theta) const;  // theta in [0, pi)
    int shell_of(double rho) const;
    double at(int shell, int sector) const { return values[shell * sectors + sector]; }
    double at_polar(double theta, double rho) const { return at(shell_of(rho), sector_of(theta)); }
    double operator()(const Point& y, int N) const;

    bool is_constant() const;
    double min_value() const;
    double max_value() const;

    void validate(int N) const;

    bool operator==(const Modulation&) const = default;
};

/// Kernel a(y) / |y|^(N+2s) with lambda <= a <= Lambda.
struct KernelSpec {
    Params params;
    Modulation modulation;

    void validate() const;
    bool operator==(const KernelSpec&) const = default;
};

enum class OperatorMode { single, sup, inf, pucci_plus, pucci_minus };

std::string to_string(OperatorMode mode);
OperatorMode operator_mode_from_string(const std::string& name);

/// Isaacs operator over a finite kernel family, a single kernel, or a Pucci extremal
/// (whose bounds come from `params`).
struct OperatorSpec {
    OperatorMode mode = OperatorMode::single;
    std::vector<KernelSpec> family;
    Params params;

    static OperatorSpec single(const KernelSpec& k);
    static OperatorSpec sup(std::vector<KernelSpec> family, const Params& params);
    static OperatorSpec inf(std::vector<KernelSpec> family, const Params& params);
    static OperatorSpec pucci(bool plus, const Params& params);

    bool is_pucci() const { return mode == OperatorMode::pucci_plus || mode == OperatorMode::pucci_minus; }
    bool is_linear() const { return mode == OperatorMode::single; }

    void validate() const;
    bool operator==(const OperatorSpec&) const = default;
};

/// The operator u -> -F[-u]: sup and inf swap, Pucci signs swap.
OperatorSpec dual(const OperatorSpec& op);

/// a(y) / |y|^(N+2s). Throws InputError at y = 0.
double kernel_value(const KernelSpec& k, const Point& y);

/// s 4^s Gamma((N+2s)/2) / (pi^(N/2) Gamma(1-s)).
double fractional_laplacian_constant(int N, double s);

/// Kernel of -(-Delta)^s: a = c_{N,s}, with lambda = Lambda = c_{N,s}.
KernelSpec fractional_laplacian_kernel(const Params& params);

}  // namespace landis
