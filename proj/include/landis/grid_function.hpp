#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "landis/domain.hpp"
#include "landis/functions.hpp"
#include "landis/tail.hpp"

namespace landis {

/// Node values on the box of a DomainSpec plus a tail model. Immutable; copies
/// share the node storage.
class GridFunction {
public:
    GridFunction(DomainSpec domain, std::vector<double> values, TailModel tail);

    /// Samples `d` at every node; tail follows the descriptor exactly.
    static GridFunction sample(const DomainSpec& domain, const FunctionDescriptor& d);
    static GridFunction sample(const DomainSpec& domain,
                               const std::function<double(const Point&)>& fn, TailModel tail);

    const DomainSpec& domain() const { return domain_; }
    std::span<const double> values() const { return *values_; }
    double operator[](std::size_t i) const { return (*values_)[i]; }
    std::size_t size() const { return values_->size(); }
    const TailModel& tail() const { return tail_; }
    int dim() const { return domain_.N; }

    /// Multilinear interpolation inside the box, tail outside. Total on R^N.
    double evaluate(const Point& x) const;

    GridFunction with_values(std::vector<double> values) const;
    GridFunction scaled(double t) const;
    /// a*u + b*v; both must live on the same domain.
    static GridFunction combine(double a, const GridFunction& u, double b, const GridFunction& v);

    /// Largest |node - tail| over boundary nodes of the box.
    double boundary_mismatch() const;

private:
    DomainSpec domain_;
    std::shared_ptr<const std::vector<double>> values_;
    TailModel tail_;
};

}  // namespace landis
