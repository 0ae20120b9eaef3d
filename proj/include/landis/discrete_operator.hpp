#pragma once

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "landis/domain.hpp"
#include "landis/grid_function.hpp"
#include "landis/kernel.hpp"
#include "landis/stencil.hpp"

namespace landis {

/// Box nodes padded by `pad` lattice points on every side. Values outside the box
/// come from whatever exterior the caller supplies.
struct ExtendedLattice {
    int N = 1;
    int n = 0;  // box nodes per dimension
    int pad = 0;
    int stride = 0;
    std::vector<double> values;

    ExtendedLattice(const DomainSpec& box, int pad);

    std::size_t index_of_node(std::size_t box_node) const;
    /// Fills box nodes from `node_value` and padding points from `outside`.
    void fill(const DomainSpec& box, const std::function<double(std::size_t)>& node_value,
              const std::function<double(const Point&)>& outside);
};

/// Stencil weights of an operator family on a fixed lattice spacing.
class DiscreteOperator {
public:
    DiscreteOperator(OperatorSpec op, double h, double R_cut, QuadratureSpec q = {});

    const OperatorSpec& spec() const { return op_; }
    const StencilGeometry& geometry() const { return geom_; }
    const QuadratureSpec& quadrature() const { return quad_; }
    int N() const { return op_.params.N; }

    std::size_t kernel_count() const { return weights_.size(); }
    const std::vector<double>& weights(std::size_t k) const { return weights_[k]; }
    const std::vector<double>& unit_weights() const { return unit_weights_; }
    double far_mass(std::size_t k) const { return far_mass_[k]; }
    double far_mass_unit() const { return far_mass_unit_; }
    const Modulation& modulation(std::size_t k) const { return op_.family[k].modulation; }

    std::vector<std::ptrdiff_t> flat_offsets(int stride) const;

    /// Lattice part of L_k at lattice index c: sum_e w_e delta_e.
    double local_linear(std::size_t k, const double* ext, std::size_t c, const std::ptrdiff_t* flat) const;
    /// Lattice part of the Pucci extremal.
    double local_pucci(bool plus, const double* ext, std::size_t c, const std::ptrdiff_t* flat) const;

    /// -(d/du_c) of the lattice part of L_k; equals 2 sum_e w_e.
    double local_diagonal(std::size_t k) const { return local_diag_[k]; }
    double local_diagonal_unit() const { return local_diag_unit_; }

    /// Largest diagonal stiffness over the admissible class: Lambda times the unit
    /// lattice and far diagonals.
    double max_diagonal() const;

private:
    OperatorSpec op_;
    QuadratureSpec quad_;
    StencilGeometry geom_;
    std::vector<std::vector<double>> weights_;
    std::vector<double> unit_weights_;
    std::vector<double> far_mass_;
    double far_mass_unit_ = 0.0;
    std::vector<double> local_diag_;
    double local_diag_unit_ = 0.0;
};

/// Far-field integrals over |y| > R_far with values taken from `src`:
/// S(y) = src(x+y) + src(x-y), integrated against a(y)|y|^(-N-2s) over a half-space.
class FarField {
public:
    FarField(const DiscreteOperator& op, GridFunction src);

    /// True when every far point lies outside src's box and the tail is zero or
    /// constant, so S is the constant 2c there.
    bool constant_at(const Point& x, double& c) const;

    /// integral of S a_k K over the far half-space.
    double linear_source(std::size_t k, const Point& x) const;
    /// Far part of L_k at x: integral of (S - 2 u_x) a_k K.
    double linear(std::size_t k, const Point& x, double u_x) const;
    /// Far part of the Pucci extremal and its diagonal 2 * integral of a_choice K.
    std::pair<double, double> pucci(bool plus, const Point& x, double u_x) const;

    const GridFunction& source() const { return src_; }

private:
    // strict: throw EvaluationError when the error estimate exceeds tail_tol
    double integrate(const Point& x, const std::function<double(double, const Point&, double)>& g,
                     bool strict = true) const;

    const DiscreteOperator* op_;
    GridFunction src_;
};

}  // namespace landis
