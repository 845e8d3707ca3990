#pragma once

#include "micromac/boundary.hpp"
#include "micromac/fluxes.hpp"
#include "micromac/indicators.hpp"
#include "micromac/solvers.hpp"
#include "micromac/state.hpp"

namespace micromac {

/// State of the coupled micro-macro solver.
struct CoupledState {
    MomentField moments;    // all cells, ghosts included
    PerturbationField gK;   // zero wherever h = 0
    TransitionField trans;  // per-cell weight and regime tag
    double time = 0.0;
    long step_count = 0;

    CoupledState() = default;
    CoupledState(const SpaceGrid& grid, const VelocityGrid& vgrid)
        : moments(grid.total_cells()),
          gK(grid.total_cells(), vgrid.n_v),
          trans(grid.total_cells()) {}
};

struct DomainBoundaries {
    BoundaryKind left, right;
};

/// Equilibrium pair evaluated in every cell.
struct EquilibriumField {
    Field2D F, G;
};

/// Build the discrete Maxwellian of each cell in [begin, end).
void build_equilibrium(const MomentField& moments, const VelocityGrid& vgrid, int begin, int end,
                       EquilibriumField& eq);

/// Per-step diagnostics the harness accumulates.
struct StepDiagnostics {
    FluxVector boundary_flux_left{}, boundary_flux_right{};
    double min_f_over_scale = 1.0;   // min over (cell, node) of (E + g_K)/scale
    double min_hf_over_scale = 1.0;  // min over (cell, node) of (h E + g_K)/scale
    double active_fraction = 0.0;    // fraction of interior cells with h > 0
};

struct StepOutcome {
    bool accepted = true;
    double required_dt = 0.0;  // replacement dt when the perturbation CFL rejects
    StepDiagnostics diag{};
};

/// Conservative macroscopic update including the kinetic upscaling moments.
/// Ghost moments and perturbation ghosts must be filled. Reduces bitwise to
/// the Euler step when g_K vanishes everywhere.
MomentField macro_update(const CoupledState& state, double dt, const SpaceGrid& grid,
                         const VelocityGrid& vgrid, double gamma, Limiter limiter,
                         FluxVector* boundary_left = nullptr, FluxVector* boundary_right = nullptr);

/// Reweight g_K after a transition-function change: multiply by h_new/h_old
/// where h_old != 0; cells entering from or leaving to the fluid state get 0.
void h_projection_step(PerturbationField& g, const std::vector<double>& h_old,
                       const std::vector<double>& h_new, const SpaceGrid& grid, int n_v);

/// Transport and implicit relaxation of g_K with the transition-weighted
/// Maxwellian sources; evaluated only where h_new > 0, zero elsewhere.
/// `g` holds g^{n+1/2} on entry (ghosts filled) and g^{n+1} on exit.
void gk_transport_step(PerturbationField& g, const std::vector<double>& h_new,
                       const EquilibriumField& eq_old, const EquilibriumField& eq_new,
                       const MomentField& moments_new, double dt, const SpaceGrid& grid,
                       const VelocityGrid& vgrid, const GasModel& gas, int order);

/// Minimum over active interior cells and nodes of the positivity-preserving
/// time-step ratio (g + h E)/(h (g + E)), both pair components. Returns +inf
/// when no cell is active. Vacuum tails and nodes already at zero are skipped
/// (no finite step protects them); a perturbation far below -E throws
/// NonPhysicalState.
double kinetic_cfl_ratio(const PerturbationField& g, const std::vector<double>& h,
                         const EquilibriumField& eq, const SpaceGrid& grid, int n_v);

/// Coupled time-step bound: safety * min(dx/alpha, dx/max|v| * cfl ratio),
/// evaluated on current-step quantities.
double coupled_cfl_dt(const CoupledState& state, const EquilibriumField& eq, double alpha,
                      const SpaceGrid& grid, const VelocityGrid& vgrid, double safety = 0.9);

struct CoupledOptions {
    Limiter limiter = Limiter::Minmod;
    int kinetic_order = 2;
    double cfl_safety = 0.9;
};

/// One step of the splitting scheme with the coupling algorithm:
/// macro update, fluid-cell criterion, h projection, perturbation transport-
/// relaxation, active-cell criterion, final re-projection. Rejects (without
/// mutating the state) when dt violates the perturbation CFL evaluated on the
/// projected half-step state; `required_dt` then carries a safe replacement.
StepOutcome coupled_step(CoupledState& state, double dt, const SpaceGrid& grid,
                         const VelocityGrid& vgrid, const GasModel& gas, const Controller& ctl,
                         const DomainBoundaries& bc, const CoupledOptions& opt = {});

/// One step of the non-splitting scheme (comparison backend; positivity not
/// guaranteed). Same controller logic; the transition-rate term enters the
/// g_K update directly.
StepOutcome nonsplit_step(CoupledState& state, double dt, const SpaceGrid& grid,
                          const VelocityGrid& vgrid, const GasModel& gas, const Controller& ctl,
                          const DomainBoundaries& bc, const CoupledOptions& opt = {});

}  // namespace micromac
