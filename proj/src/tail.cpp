#include "landis/tail.hpp"

#include <algorithm>
#include <cmath>

#include "landis/errors.hpp"

namespace landis {

TailModel TailModel::zero() { return {}; }

TailModel TailModel::constant(double c) {
    if (!std::isfinite(c)) throw InputError("constant tail must be finite");
    TailModel t;
    t.kind_ = Kind::constant;
    t.c_ = c;
    return t;
}

TailModel TailModel::power_law(double c, double p) {
    if (!std::isfinite(c) || !std::isfinite(p)) throw InputError("power-law tail parameters must be finite");
    TailModel t;
    t.kind_ = Kind::power_law;
    t.c_ = c;
    t.p_ = p;
    return t;
}

TailModel TailModel::explicit_fn(std::function<double(const Point&)> fn, double reach, double step) {
    if (!fn) throw InputError("explicit tail needs a callable");
    if (!(reach >= 0.0) || !(step >= 0.0) || (reach > 0.0 && step == 0.0))
        throw InputError("explicit tail: reach needs a positive step");
    TailModel t;
    t.kind_ = Kind::explicit_fn;
    t.fn_ = std::move(fn);
    t.reach_ = reach;
    t.step_ = step;
    return t;
}

TailModel TailModel::from_descriptor(const FunctionDescriptor& d) {
    if (d.kind == FunctionKind::zero) return zero();
    if (d.kind == FunctionKind::constant) return constant(d.amplitude);
    TailModel t = explicit_fn(d);
    t.descriptor_ = d;
    return t;
}

double TailModel::operator()(const Point& x, int N) const {
    switch (kind_) {
    case Kind::zero:
        return 0.0;
    case Kind::constant:
        return c_;
    case Kind::power_law:
        return c_ * std::pow(norm(x, N), -p_);
    case Kind::explicit_fn:
        return fn_(x);
    }
    return 0.0;
}

TailModel TailModel::scaled(double t) const {
    switch (kind_) {
    case Kind::zero:
        return zero();
    case Kind::constant:
        return constant(t * c_);
    case Kind::power_law:
        return power_law(t * c_, p_);
    case Kind::explicit_fn:
        break;
    }
    if (descriptor_) {
        FunctionDescriptor d = *descriptor_;
        d.amplitude *= t;
        return from_descriptor(d);
    }
    auto fn = fn_;
    return explicit_fn([fn, t](const Point& x) { return t * fn(x); }, reach_, step_);
}

TailModel TailModel::combine(double a, const TailModel& u, double b, const TailModel& v, int N) {
    if (u.kind_ == Kind::zero) return v.scaled(b);
    if (v.kind_ == Kind::zero) return u.scaled(a);
    if (u.kind_ == Kind::constant && v.kind_ == Kind::constant) return constant(a * u.c_ + b * v.c_);
    if (u.kind_ == Kind::power_law && v.kind_ == Kind::power_law && u.p_ == v.p_)
        return power_law(a * u.c_ + b * v.c_, u.p_);
    const double reach = std::max(u.reach_, v.reach_);
    double step = std::max(u.step_, v.step_);
    for (double s : {u.step_, v.step_})
        if (s > 0.0) step = std::min(step, s);
    return explicit_fn([a, b, u, v, N](const Point& x) { return a * u(x, N) + b * v(x, N); }, reach, step);
}

bool TailModel::same_as(const TailModel& other) const {
    if (kind_ != other.kind_) return false;
    switch (kind_) {
    case Kind::zero:
        return true;
    case Kind::constant:
        return c_ == other.c_;
    case Kind::power_law:
        return c_ == other.c_ && p_ == other.p_;
    case Kind::explicit_fn:
        return descriptor_ && other.descriptor_ && *descriptor_ == *other.descriptor_;
    }
    return false;
}

}  // namespace landis
