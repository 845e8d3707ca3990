#pragma once

#include <span>
#include <vector>

#include "micromac/maxwellian.hpp"
#include "micromac/state.hpp"

namespace micromac {

/// Three-argument minmod: 0 on sign disagreement, otherwise the argument of
/// smallest magnitude.
double minmod(double a, double b, double c);

enum class Limiter { Minmod, VanLeer };

/// Slope-limiter value for the MUSCL macro flux; flat data (chi = 0/0) maps to 0.
double limiter_value(Limiter kind, double num, double den);

/// Upwind flux with optional second-order minmod correction for one velocity
/// node. `field` spans all cells including ghosts; `out` receives the n_x + 1
/// interior interface fluxes. Interface k sits between global cells
/// (n_ghost + k - 1) and (n_ghost + k).
void kinetic_flux(std::span<const double> field, double v, int order, const SpaceGrid& grid,
                  std::span<double> out);

/// alpha = max_i (|u_i| + sqrt(gamma theta_i)) over all cells, ghosts included.
double spectral_radius(const MomentField& moments, double gamma);

/// MUSCL Lax-Friedrichs interface fluxes for the macroscopic system. The total
/// per-cell flux is euler_flux(moments[i]) + gk_moments[i]; pass zero vectors
/// for a pure Euler evaluation. `out` receives n_x + 1 interface 3-vectors.
void macro_flux(const MomentField& moments, const std::vector<FluxVector>& gk_moments,
                double alpha, Limiter limiter, const SpaceGrid& grid,
                std::vector<FluxVector>& out);

}  // namespace micromac
