#pragma once

#include "micromac/boundary.hpp"
#include "micromac/fluxes.hpp"
#include "micromac/gas.hpp"
#include "micromac/state.hpp"

namespace micromac {

/// Interface fluxes at the two domain boundaries, as conserved 3-vectors.
/// Used by the harness to close the conservation balance.
struct BoundaryFluxes {
    FluxVector left{};
    FluxVector right{};
};

/// One conservative MUSCL Lax-Friedrichs step of the Euler system.
/// Ghost cells must be filled; updates interior cells in place.
BoundaryFluxes euler_step(MomentField& cells, double dt, const SpaceGrid& grid, double gamma,
                          Limiter limiter = Limiter::Minmod);

/// One step of the full discrete-velocity BGK solver: second-order upwind
/// transport followed by pointwise implicit relaxation towards the discrete
/// Maxwellian of the post-transport moments. Ghost cells must be filled.
BoundaryFluxes kinetic_step(ReducedDistribution& f, double dt, const SpaceGrid& grid,
                            const VelocityGrid& vgrid, const GasModel& gas, int order = 2);

/// Transport-only CFL bound dx / max|v_j| (no safety factor).
inline double kinetic_cfl_limit(const SpaceGrid& grid, const VelocityGrid& vgrid) {
    return grid.dx / vgrid.max_speed();
}

}  // namespace micromac
