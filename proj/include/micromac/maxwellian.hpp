#pragma once

#include <array>
#include <vector>

#include "micromac/state.hpp"

namespace micromac {

/// One cell of the discrete equilibrium pair on the velocity grid.
/// MF_j = exp(a0 + a1 v_j + a2 v_j^2) with a2 < 0, MG_j = theta_eff * MF_j
/// where theta_eff = -1/(2 a2). The discrete moments of (MF, MG) match the
/// target conserved vector to the Newton tolerance.
struct DiscreteMaxwellian {
    std::vector<double> MF;
    std::vector<double> MG;
    std::array<double, 3> lagrange{};  // exponential-family multipliers
    bool converged = true;             // false after the rescaling fallback
};

/// Pointwise Gaussian evaluation; moments match only approximately on a
/// truncated grid. MG = theta * MF.
void continuous_maxwellian(double rho, double u, double theta, const VelocityGrid& grid,
                           std::vector<double>& MF, std::vector<double>& MG);

struct NewtonOptions {
    double tol = 1e-13;  // relative moment residual
    int max_iter = 50;
};

/// Entropy-minimized discrete equilibrium: Newton solve for the exponential
/// multipliers so that the three discrete moments equal `target`. Falls back
/// to a rescaled continuous Maxwellian (mass and energy exact) when Newton
/// diverges, flagged through `converged = false`.
DiscreteMaxwellian discrete_maxwellian(const ConservedMoments& target, const VelocityGrid& grid,
                                       const NewtonOptions& opt = {});

/// Analytic equilibrium fluxes of the reduced model:
/// (rho u, rho u^2 + rho theta, rho u (u^2/2 + 5/2 theta)).
FluxVector euler_flux(const ConservedMoments& m);
FluxVector euler_flux(const Primitive& p);

/// Closed-form equilibrium moments feeding the macroscopic breakdown
/// criterion (3D-reduced convention):
///   order 1: rho u
///   order 2: rho (u^2 + 3 theta)
///   order 3: rho u (u^2 + 5 theta)
///   order 4: rho (u^4 + 8 u^2 theta + 5 theta^2)
double maxwellian_raw_moment(double rho, double u, double theta, int order);

}  // namespace micromac
