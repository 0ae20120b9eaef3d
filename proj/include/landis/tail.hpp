#pragma once

#include <functional>
#include <optional>

#include "landis/functions.hpp"
#include "landis/params.hpp"

namespace landis {

/// Values of a function outside the grid box. Power-law tails are c*|x|^-p with |x|
/// measured from the origin. Explicit tails wrap a callable; when built from a
/// FunctionDescriptor they stay serializable.
class TailModel {
public:
    enum class Kind { zero, constant, power_law, explicit_fn };

    static TailModel zero();
    static TailModel constant(double c);
    static TailModel power_law(double c, double p);
    /// `reach` and `step` are optional resolution hints: the callable may vary on
    /// the scale `step` out to radius `reach` and is smooth beyond.
    static TailModel explicit_fn(std::function<double(const Point&)> fn, double reach = 0.0, double step = 0.0);
    static TailModel from_descriptor(const FunctionDescriptor& d);

    Kind kind() const { return kind_; }
    double c() const { return c_; }
    double p() const { return p_; }
    const std::optional<FunctionDescriptor>& descriptor() const { return descriptor_; }
    double reach() const { return reach_; }
    double step() const { return step_; }
    bool serializable() const { return kind_ != Kind::explicit_fn || descriptor_.has_value(); }

    double operator()(const Point& x, int N) const;

    /// Tail of t*u.
    TailModel scaled(double t) const;
    /// Tail of a*u + b*v.
    static TailModel combine(double a, const TailModel& u, double b, const TailModel& v, int N);

    /// Equal kind and parameters; explicit tails compare by descriptor only.
    bool same_as(const TailModel& other) const;

private:
    Kind kind_ = Kind::zero;
    double c_ = 0.0;
    double p_ = 0.0;
    double reach_ = 0.0;
    double step_ = 0.0;
    std::function<double(const Point&)> fn_;
    std::optional<FunctionDescriptor> descriptor_;
};

}  // namespace landis
