#include "micromac/state.hpp"

#include <cmath>

#include "micromac/errors.hpp"

namespace micromac {

Primitive primitive_of(const ConservedMoments& m, int cell) {
    if (!(m.rho > 0.0)) throw NonPhysicalState("non-positive density", cell);
    const double u = m.mom / m.rho;
    const double theta = (2.0 / 3.0) * (m.en / m.rho - 0.5 * u * u);
    if (!(theta > 0.0)) throw NonPhysicalState("non-positive temperature", cell);
    return {m.rho, u, theta};
}

ConservedMoments assemble_moments(double rho, double u, double theta) {
    return {rho, rho * u, rho * (0.5 * u * u + 1.5 * theta)};
}

double collision_frequency(const ConservedMoments& m, const GasModel& gas) {
    const Primitive p = primitive_of(m);
    const double pressure = p.rho * p.theta;
    const double mu = gas.C_mu * std::pow(p.theta, gas.omega);
    return pressure / mu;
}

ConservedMoments moments_of(const ReducedDistribution& dist, const VelocityGrid& grid, int cell) {
    const double* F = dist.F.row(cell);
    const double* G = dist.G.row(cell);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        m0 += F[j];
        m1 += v * F[j];
        m2 += 0.5 * v * v * F[j] + G[j];
    }
    return {m0 * grid.dv, m1 * grid.dv, m2 * grid.dv};
}

FluxVector moments_of(const PerturbationField& g, const VelocityGrid& grid, int cell) {
    const double* gF = g.F.row(cell);
    const double* gG = g.G.row(cell);
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        m0 += gF[j];
        m1 += v * gF[j];
        m2 += 0.5 * v * v * gF[j] + gG[j];
    }
    return {m0 * grid.dv, m1 * grid.dv, m2 * grid.dv};
}

FluxVector upscaling_moments(const PerturbationField& g, const VelocityGrid& grid, int cell) {
    const double* gF = g.F.row(cell);
    const double* gG = g.G.row(cell);
    double f0 = 0.0, f1 = 0.0, f2 = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        f0 += v * gF[j];
        f1 += v * v * gF[j];
        f2 += v * (0.5 * v * v * gF[j] + gG[j]);
    }
    return {f0 * grid.dv, f1 * grid.dv, f2 * grid.dv};
}

}  // namespace micromac
