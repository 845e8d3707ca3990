#pragma once

#include <array>
#include <vector>

#include "micromac/gas.hpp"
#include "micromac/grids.hpp"

namespace micromac {

/// Cell-averaged conserved vector (mass, momentum, total-energy densities).
struct ConservedMoments {
    double rho = 0.0;  // [kg/m^3]
    double mom = 0.0;  // [kg/m^2/s]
    double en = 0.0;   // [J/m^3]
};

struct Primitive {
    double rho;
    double u;
    double theta;  // R*T
};

/// Inverse of moment assembly: u = mom/rho, theta = (2/3)(en/rho - u^2/2).
/// Throws NonPhysicalState when rho <= 0 or theta <= 0.
Primitive primitive_of(const ConservedMoments& m, int cell = -1);

/// e = u^2/2 + (3/2) theta, so en = rho*(u^2/2 + 1.5*theta).
ConservedMoments assemble_moments(double rho, double u, double theta);

/// nu = p/mu with p = rho*theta and mu = C_mu * theta^omega.
double collision_frequency(const ConservedMoments& m, const GasModel& gas);

using MomentField = std::vector<ConservedMoments>;
using FluxVector = std::array<double, 3>;

/// Dense (cell, velocity) array with contiguous inner velocity loops.
struct Field2D {
    int n_cells = 0;
    int n_v = 0;
    std::vector<double> data;

    Field2D() = default;
    Field2D(int n_cells_, int n_v_) : n_cells(n_cells_), n_v(n_v_), data(static_cast<size_t>(n_cells_) * n_v_, 0.0) {}

    double& at(int cell, int j) { return data[static_cast<size_t>(cell) * n_v + j]; }
    double at(int cell, int j) const { return data[static_cast<size_t>(cell) * n_v + j]; }
    double* row(int cell) { return data.data() + static_cast<size_t>(cell) * n_v; }
    const double* row(int cell) const { return data.data() + static_cast<size_t>(cell) * n_v; }
    void fill(double v) { std::fill(data.begin(), data.end(), v); }
};

/// Reduced kinetic state: F carries number density per velocity, G the
/// suppressed internal-energy degrees of freedom.
struct ReducedDistribution {
    Field2D F, G;
    ReducedDistribution() = default;
    ReducedDistribution(int n_cells, int n_v) : F(n_cells, n_v), G(n_cells, n_v) {}
};

/// Localized non-equilibrium part g_K, stored as a pair mirroring (F, G).
/// Identically zero wherever h = 0.
struct PerturbationField {
    Field2D F, G;
    PerturbationField() = default;
    PerturbationField(int n_cells, int n_v) : F(n_cells, n_v), G(n_cells, n_v) {}
};

enum class Regime { Fluid, Buffer, Kinetic };

inline Regime regime_of(double h) {
    if (h <= 0.0) return Regime::Fluid;
    if (h >= 1.0) return Regime::Kinetic;
    return Regime::Buffer;
}

/// Per-cell transition weight h in [0,1] plus the derived regime tag.
struct TransitionField {
    std::vector<double> h;
    std::vector<Regime> regime;

    TransitionField() = default;
    explicit TransitionField(int n_cells) : h(n_cells, 0.0), regime(n_cells, Regime::Fluid) {}

    void retag() {
        for (size_t i = 0; i < h.size(); ++i) regime[i] = regime_of(h[i]);
    }
};

/// Discrete moments of one cell of a reduced pair:
/// (sum F dv, sum v F dv, sum (v^2/2 F + G) dv).
ConservedMoments moments_of(const ReducedDistribution& dist, const VelocityGrid& grid, int cell);

/// Moments of the perturbation pair in one cell, as a flux-shaped 3-vector.
FluxVector moments_of(const PerturbationField& g, const VelocityGrid& grid, int cell);

/// Kinetic correction to the Euler flux: (sum v gF, sum v^2 gF, sum v(v^2/2 gF + gG)) dv.
FluxVector upscaling_moments(const PerturbationField& g, const VelocityGrid& grid, int cell);

}  // namespace micromac
