#include "micromac/solvers.hpp"

#include <cmath>

#include "micromac/errors.hpp"

namespace micromac {

BoundaryFluxes euler_step(MomentField& cells, double dt, const SpaceGrid& grid, double gamma,
                          Limiter limiter) {
    const double alpha = spectral_radius(cells, gamma);
    const std::vector<FluxVector> zero_gk(cells.size(), FluxVector{});
    std::vector<FluxVector> psi;
    macro_flux(cells, zero_gk, alpha, limiter, grid, psi);

    const double lam = dt / grid.dx;
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const int k = i - grid.n_ghost;  // left interface index of cell i
        cells[i].rho -= lam * (psi[k + 1][0] - psi[k][0]);
        cells[i].mom -= lam * (psi[k + 1][1] - psi[k][1]);
        cells[i].en -= lam * (psi[k + 1][2] - psi[k][2]);
    }
    return {psi.front(), psi.back()};
}

BoundaryFluxes kinetic_step(ReducedDistribution& f, double dt, const SpaceGrid& grid,
                            const VelocityGrid& vgrid, const GasModel& gas, int order) {
    const int n_tot = grid.total_cells();
    const int n_if = grid.n_x + 1;
    std::vector<double> colF(n_tot), colG(n_tot), phiF(n_if), phiG(n_if);
    BoundaryFluxes bf;

    const double lam = dt / grid.dx;
    for (int j = 0; j < vgrid.n_v; ++j) {
        const double v = vgrid.node(j);
        for (int i = 0; i < n_tot; ++i) {
            colF[i] = f.F.at(i, j);
            colG[i] = f.G.at(i, j);
        }
        kinetic_flux(colF, v, order, grid, phiF);
        kinetic_flux(colG, v, order, grid, phiG);
        for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
            const int k = i - grid.n_ghost;
            f.F.at(i, j) -= lam * (phiF[k + 1] - phiF[k]);
            f.G.at(i, j) -= lam * (phiG[k + 1] - phiG[k]);
        }
        const double half_v2 = 0.5 * v * v;
        bf.left[0] += phiF.front() * vgrid.dv;
        bf.left[1] += v * phiF.front() * vgrid.dv;
        bf.left[2] += (half_v2 * phiF.front() + phiG.front()) * vgrid.dv;
        bf.right[0] += phiF.back() * vgrid.dv;
        bf.right[1] += v * phiF.back() * vgrid.dv;
        bf.right[2] += (half_v2 * phiF.back() + phiG.back()) * vgrid.dv;
    }

    // Implicit relaxation towards the entropy-minimized equilibrium of the
    // post-transport moments; conserves them because the discrete Maxwellian
    // carries the same moments.
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const ConservedMoments m = moments_of(f, vgrid, i);
        const DiscreteMaxwellian eq = discrete_maxwellian(m, vgrid);
        const double nu = collision_frequency(m, gas);
        const double w = dt * nu;
        const double inv = 1.0 / (1.0 + w);
        double* F = f.F.row(i);
        double* G = f.G.row(i);
        for (int j = 0; j < vgrid.n_v; ++j) {
            F[j] = (F[j] + w * eq.MF[j]) * inv;
            G[j] = (G[j] + w * eq.MG[j]) * inv;
        }
    }
    return bf;
}

}  // namespace micromac
