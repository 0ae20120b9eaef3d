#pragma once

#include <cstddef>
#include <string>

#include "landis/params.hpp"

namespace landis {

enum class Shape { ball, box };

std::string to_string(Shape shape);
Shape shape_from_string(const std::string& name);

/// Ball or box G with a uniform node set covering the closed box of half-width R
/// around `center`. R/h must be an integer. `hole` > 0 removes the closed ball of
/// that radius from G (annular domains); nodes there carry exterior data.
struct DomainSpec {
    int N = 1;
    Point center{0.0, 0.0};
    double R = 1.0;
    double h = 1.0 / 64;
    double R_cut = 2.0;
    Shape shape = Shape::ball;
    double hole = 0.0;

    void validate() const;

    int half_nodes() const;  // R / h
    int nodes_per_dim() const { return 2 * half_nodes() + 1; }
    std::size_t node_count() const;

    Point node(std::size_t index) const;
    /// Signed lattice coordinates relative to the center node.
    void node_coords(std::size_t index, int& i, int& j) const;

    /// Open set G: strictly inside the ball/box and strictly outside the hole.
    bool contains(const Point& x) const;
    bool in_box(const Point& x) const;

    bool operator==(const DomainSpec&) const = default;
};

}  // namespace landis
