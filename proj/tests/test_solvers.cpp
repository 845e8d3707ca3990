#include <cmath>

#include "doctest.h"
#include "micromac/boundary.hpp"
#include "micromac/solvers.hpp"

using namespace micromac;

namespace {
const SpaceGrid grid{10, 0.0, 1.0};
const double gamma_ = 5.0 / 3.0;
}  // namespace

TEST_CASE("euler step preserves a uniform state exactly") {
    const ConservedMoments state = assemble_moments(1.0, 0.4, 2.0);
    MomentField m(grid.total_cells(), state);
    euler_step(m, 0.01, grid, gamma_);
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        CHECK(m[i].rho == state.rho);
        CHECK(m[i].mom == state.mom);
        CHECK(m[i].en == state.en);
    }
}

TEST_CASE("euler step balances interior change against boundary fluxes") {
    MomentField m(grid.total_cells());
    for (int i = 0; i < grid.total_cells(); ++i)
        m[i] = assemble_moments(1.0 + 0.2 * std::sin(0.5 * i), 0.1 * i, 2.0 + 0.05 * i);
    fill_ghosts_macro(m, grid, Side::Left, BoundaryKind::neumann());
    fill_ghosts_macro(m, grid, Side::Right, BoundaryKind::neumann());

    FluxVector before{};
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        before[0] += m[i].rho;
        before[1] += m[i].mom;
        before[2] += m[i].en;
    }
    const double dt = 0.9 * grid.dx / spectral_radius(m, gamma_);
    const BoundaryFluxes bf = euler_step(m, dt, grid, gamma_);
    FluxVector after{};
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        after[0] += m[i].rho;
        after[1] += m[i].mom;
        after[2] += m[i].en;
    }
    for (int c = 0; c < 3; ++c) {
        const double change = (after[c] - before[c]) * grid.dx;
        const double boundary = dt * (bf.left[c] - bf.right[c]);
        CHECK(change == doctest::Approx(boundary).epsilon(1e-12));
    }
}

namespace {

ReducedDistribution equilibrium_field(const ConservedMoments& m, const VelocityGrid& vg) {
    const DiscreteMaxwellian eq = discrete_maxwellian(m, vg);
    REQUIRE(eq.converged);
    ReducedDistribution f(grid.total_cells(), vg.n_v);
    for (int i = 0; i < grid.total_cells(); ++i)
        for (int j = 0; j < vg.n_v; ++j) {
            f.F.at(i, j) = eq.MF[j];
            f.G.at(i, j) = eq.MG[j];
        }
    return f;
}

}  // namespace

TEST_CASE("kinetic step fixes a global equilibrium") {
    const GasModel gas;
    const ConservedMoments m = assemble_moments(1e-6, 100.0, gas.R * 273.0);
    const VelocityGrid vg =
        VelocityGrid::symmetric_bounds(4.0 * std::sqrt(gas.R * 300.0), 40);
    ReducedDistribution f = equilibrium_field(m, vg);
    ReducedDistribution f0 = f;
    const double dt = 0.9 * kinetic_cfl_limit(grid, vg);
    kinetic_step(f, dt, grid, vg, gas);
    double worst = 0.0;
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i)
        for (int j = 0; j < vg.n_v; ++j) {
            worst = std::max(worst, std::abs(f.F.at(i, j) - f0.F.at(i, j)));
            worst = std::max(worst, std::abs(f.G.at(i, j) - f0.G.at(i, j)));
        }
    double peak = 0.0;
    for (int j = 0; j < vg.n_v; ++j) peak = std::max(peak, f0.F.at(grid.first_interior(), j));
    CHECK(worst <= 1e-13 * peak * (1.0 + gas.R * 300.0));
}

TEST_CASE("stiff relaxation drives the state to the local equilibrium") {
    const GasModel gas;
    GasModel stiff = gas;
    stiff.C_mu = 1e-18;  // collision frequency ~ 1e12 larger
    const VelocityGrid vg = VelocityGrid::symmetric_bounds(4.0, 24);
    ReducedDistribution f(grid.total_cells(), vg.n_v);
    // non-equilibrium but admissible data: two half Maxwellian-ish humps
    for (int i = 0; i < grid.total_cells(); ++i)
        for (int j = 0; j < vg.n_v; ++j) {
            const double v = vg.node(j);
            f.F.at(i, j) = std::exp(-2.0 * (v - 1.2) * (v - 1.2)) +
                           0.7 * std::exp(-3.0 * (v + 1.0) * (v + 1.0));
            f.G.at(i, j) = 0.4 * f.F.at(i, j);
        }
    const double dt = 1e-3;
    kinetic_step(f, dt, grid, vg, stiff, 1);
    const int i0 = grid.first_interior() + 4;
    const ConservedMoments m = moments_of(f, vg, i0);
    const DiscreteMaxwellian eq = discrete_maxwellian(m, vg);
    for (int j = 0; j < vg.n_v; ++j)
        CHECK(f.F.at(i0, j) == doctest::Approx(eq.MF[j]).epsilon(1e-7).scale(m.rho));
}

TEST_CASE("kinetic step conserves moments up to boundary fluxes") {
    const GasModel gas;
    const VelocityGrid vg = VelocityGrid::symmetric_bounds(4.0, 24);
    ReducedDistribution f(grid.total_cells(), vg.n_v);
    for (int i = 0; i < grid.total_cells(); ++i)
        for (int j = 0; j < vg.n_v; ++j) {
            const double v = vg.node(j);
            const double shift = 0.3 * std::sin(0.7 * i);
            f.F.at(i, j) = std::exp(-(v - shift) * (v - shift));
            f.G.at(i, j) = 0.5 * f.F.at(i, j);
        }
    FluxVector before{};
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const ConservedMoments m = moments_of(f, vg, i);
        before[0] += m.rho;
        before[1] += m.mom;
        before[2] += m.en;
    }
    const double dt = 0.9 * kinetic_cfl_limit(grid, vg);
    const BoundaryFluxes bf = kinetic_step(f, dt, grid, vg, gas);
    FluxVector after{};
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const ConservedMoments m = moments_of(f, vg, i);
        after[0] += m.rho;
        after[1] += m.mom;
        after[2] += m.en;
    }
    for (int c = 0; c < 3; ++c) {
        const double change = (after[c] - before[c]) * grid.dx;
        const double boundary = dt * (bf.left[c] - bf.right[c]);
        CHECK(change == doctest::Approx(boundary).epsilon(1e-11).scale(before[2] * grid.dx));
    }
}
