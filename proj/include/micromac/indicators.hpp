#pragma once

#include <functional>
#include <limits>

#include "micromac/fluxes.hpp"
#include "micromac/gas.hpp"
#include "micromac/state.hpp"

namespace micromac {

/// Per-cell breakdown diagnostics.
struct BreakdownReport {
    double lambda1 = 0.0, lambda2 = 0.0, lambda3 = 0.0, lambda4 = 0.0;
    double beta4 = 0.0;
    double knudsen = 0.0;
    enum class Source { Microscopic, MacroPredicted, Knudsen } source = Source::Microscopic;
};

/// Floor applied to the equilibrium energy-flux denominator |F3|, as
/// delta * rho * theta^(3/2); F3 vanishes at u = 0.
struct Beta4Guard {
    double delta = 1e-8;
    double apply(double f3_abs, const Primitive& p) const;
};

/// Heat-flux breakdown parameter from the actual perturbation in one cell:
/// beta4 = |sum v (v^2/2 gF + gG) dv| / |F3(moments)| (guarded).
double micro_beta4(const PerturbationField& gK, const VelocityGrid& grid, int cell,
                   const ConservedMoments& moments, const Beta4Guard& guard = {});

struct BetaSet {
    double beta1, beta2, beta3, beta4;
};

/// Diagnostic set; beta2 is +inf at u = 0.
BetaSet micro_betas_full(const PerturbationField& gK, const VelocityGrid& grid, int cell,
                         const ConservedMoments& moments, const Beta4Guard& guard = {});

/// Predicted heat-flux magnitude |integral v v^2/2 g^{n+1} dv| in a fluid cell,
/// assembled from equilibrium moment closed forms only. `stencil` holds the
/// five old-time states centered on the cell; `center_new` is the updated
/// center state. The spatial term applies the second-order minmod stencil to
/// the per-cell equilibrium moment fields, upwinded by the local mean velocity.
double predicted_g_moment(const ConservedMoments stencil[5], const ConservedMoments& center_new,
                          double dt, double dx, double nu);

/// beta4 from a predicted heat-flux magnitude (same guarded denominator).
double macro_beta4(double predicted_lambda4, const ConservedMoments& moments,
                   const Beta4Guard& guard = {});

/// Local Knudsen number: mean free path over Bird's gradient length, computed
/// from a 3-cell stencil by central differences. Zero-gradient components are
/// excluded from the length; all-zero gradients give 0.
double local_knudsen(const ConservedMoments stencil[3], const GasModel& gas, double dx);

/// Linear threshold ramp clamped to [0,1].
double h_of_beta(double beta, double lower, double upper);
double h_of_beta(double beta, const Thresholds& thr);

/// Controller state shared by the two criterion passes of the coupling
/// algorithm. An override, when set, replaces both passes (used to force
/// pure-fluid / pure-kinetic limits and for mock controllers in tests).
struct Controller {
    Thresholds thresholds{};
    GasModel gas{};
    Beta4Guard guard{};
    std::function<void(std::vector<double>& h, int step)> override_h;
};

/// Fluid-cell pass: evaluates the macroscopic predicted criterion (or the
/// local Knudsen number) in every cell with h = 0 and writes the new h there.
/// Non-fluid cells are left untouched. Ghost moments must be filled.
void controller_fluid_pass(const MomentField& moments_old, const MomentField& moments_new,
                           std::vector<double>& h, double dt, const SpaceGrid& grid,
                           const Controller& ctl);

/// Active-cell pass: evaluates the microscopic heat-flux criterion in every
/// cell with h != 0 and writes the new h there. Fluid cells are left untouched.
void controller_active_pass(const PerturbationField& gK, const MomentField& moments,
                            const VelocityGrid& vgrid, std::vector<double>& h,
                            const SpaceGrid& grid, const Controller& ctl);

/// Both passes over disjoint cell classes; returns the full transition field.
TransitionField controller_update(const MomentField& moments_old, const MomentField& moments_new,
                                  const PerturbationField& gK, const VelocityGrid& vgrid,
                                  const std::vector<double>& h_current, double dt,
                                  const SpaceGrid& grid, const Controller& ctl);

}  // namespace micromac
