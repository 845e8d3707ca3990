#pragma once

#include <cmath>
#include <cstddef>

#include "micromac/errors.hpp"

namespace micromac {

/// Uniform velocity grid v_j = origin + j*dv, j = 0..n_v-1.
struct VelocityGrid {
    int n_v;
    double dv;
    double origin;

    VelocityGrid(int n_v_, double dv_, double origin_) : n_v(n_v_), dv(dv_), origin(origin_) {
        if (n_v < 2 || dv <= 0.0)
            throw std::invalid_argument("VelocityGrid: need n_v >= 2 and dv > 0");
    }

    double node(int j) const { return origin + j * dv; }

    double max_speed() const {
        return std::max(std::abs(node(0)), std::abs(node(n_v - 1)));
    }

    /// True when v -> -v maps nodes onto nodes (grid centered on 0).
    bool symmetric() const {
        return std::abs(2.0 * origin + (n_v - 1) * dv) <= 1e-12 * max_speed();
    }

    /// Index of the node at -v_j, valid for symmetric grids.
    int reflect(int j) const { return n_v - 1 - j; }

    /// Grid spanning [-v_max, v_max] with n_v nodes.
    static VelocityGrid symmetric_bounds(double v_max, int n_v) {
        if (v_max <= 0.0) throw std::invalid_argument("VelocityGrid: v_max must be positive");
        const double dv = 2.0 * v_max / static_cast<double>(n_v - 1);
        return VelocityGrid(n_v, dv, -v_max);
    }
};

/// Uniform spatial grid with two ghost cells per side (second-order stencils).
struct SpaceGrid {
    int n_x;
    double x_min, x_max;
    double dx;
    int n_ghost = 2;

    SpaceGrid(int n_x_, double x_min_, double x_max_)
        : n_x(n_x_), x_min(x_min_), x_max(x_max_), dx((x_max_ - x_min_) / n_x_) {
        if (n_x < 4 || dx <= 0.0)
            throw std::invalid_argument("SpaceGrid: need n_x >= 4 and x_max > x_min");
    }

    int total_cells() const { return n_x + 2 * n_ghost; }
    int first_interior() const { return n_ghost; }
    int end_interior() const { return n_ghost + n_x; }

    /// Center of cell i (global index, ghosts included).
    double cell_center(int i) const { return x_min + (i - n_ghost + 0.5) * dx; }
};

}  // namespace micromac
