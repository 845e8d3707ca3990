#include "micromac/indicators.hpp"

#include <cmath>

#include "micromac/maxwellian.hpp"

namespace micromac {

double Beta4Guard::apply(double f3_abs, const Primitive& p) const {
    const double floor = delta * p.rho * p.theta * std::sqrt(p.theta);
    return std::max(f3_abs, floor);
}

namespace {

double heat_flux_moment(const PerturbationField& gK, const VelocityGrid& grid, int cell) {
    const double* gF = gK.F.row(cell);
    const double* gG = gK.G.row(cell);
    double q = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        q += v * (0.5 * v * v * gF[j] + gG[j]);
    }
    return q * grid.dv;
}

}  // namespace

double micro_beta4(const PerturbationField& gK, const VelocityGrid& grid, int cell,
                   const ConservedMoments& moments, const Beta4Guard& guard) {
    const Primitive p = primitive_of(moments, cell);
    const double lambda4 = std::abs(heat_flux_moment(gK, grid, cell));
    const double den = guard.apply(std::abs(euler_flux(p)[2]), p);
    return lambda4 / den;
}

BetaSet micro_betas_full(const PerturbationField& gK, const VelocityGrid& grid, int cell,
                         const ConservedMoments& moments, const Beta4Guard& guard) {
    const Primitive p = primitive_of(moments, cell);
    const double* gF = gK.F.row(cell);
    const double* gG = gK.G.row(cell);
    double l1 = 0.0, l2 = 0.0, l3 = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        l1 += std::abs(gF[j]);
        l2 += v * std::abs(gF[j]);
        l3 += 0.5 * v * v * std::abs(gF[j]) + std::abs(gG[j]);
    }
    l1 *= grid.dv;
    l2 *= grid.dv;
    l3 *= grid.dv;
    const double e = 0.5 * p.u * p.u + 1.5 * p.theta;
    BetaSet out;
    out.beta1 = l1 / p.rho;
    out.beta2 = p.u == 0.0 ? std::numeric_limits<double>::infinity() : l2 / (p.rho * p.u);
    out.beta3 = l3 / (p.rho * e);
    out.beta4 = micro_beta4(gK, grid, cell, moments, guard);
    return out;
}

namespace {

// Second-order minmod interpolation of a per-cell moment field to the
// interface between cells i and i+1, upwinded by the mean-velocity sign.
double moment_interface_value(const double W[5], int i, double u_sign) {
    if (u_sign >= 0.0)
        return W[i] + 0.5 * minmod(W[i] - W[i - 1], W[i + 1] - W[i], W[i + 2] - W[i]);
    return W[i + 1] - 0.5 * minmod(W[i + 2] - W[i + 1], W[i + 1] - W[i], W[i + 1] - W[i - 1]);
}

}  // namespace

double predicted_g_moment(const ConservedMoments stencil[5], const ConservedMoments& center_new,
                          double dt, double dx, double nu) {
    // Prefactors of the stiff semi-implicit perturbation update (epsilon = 1):
    // relaxation splits the Maxwellian time-difference and flux-difference
    // contributions with weights 1/(1 + nu dt) and dt/(1 + nu dt).
    const double a = 1.0 / (1.0 + nu * dt);
    const double b = dt / (1.0 + nu * dt);

    Primitive p[5];
    double f3[5], w4[5], u_mid[5];
    for (int i = 0; i < 5; ++i) {
        p[i] = primitive_of(stencil[i]);
        f3[i] = 0.5 * maxwellian_raw_moment(p[i].rho, p[i].u, p[i].theta, 3);
        w4[i] = 0.5 * maxwellian_raw_moment(p[i].rho, p[i].u, p[i].theta, 4);
        u_mid[i] = p[i].u;
    }
    const Primitive pn = primitive_of(center_new);
    const double f3_new = 0.5 * maxwellian_raw_moment(pn.rho, pn.u, pn.theta, 3);

    const double phi_r = moment_interface_value(w4, 2, u_mid[2] + u_mid[3]);
    const double phi_l = moment_interface_value(w4, 1, u_mid[1] + u_mid[2]);

    const double g_moment = -a * (f3_new - f3[2]) - b / dx * (phi_r - phi_l);
    return std::abs(g_moment);
}

double macro_beta4(double predicted_lambda4, const ConservedMoments& moments,
                   const Beta4Guard& guard) {
    const Primitive p = primitive_of(moments);
    const double den = guard.apply(std::abs(euler_flux(p)[2]), p);
    return predicted_lambda4 / den;
}

double local_knudsen(const ConservedMoments stencil[3], const GasModel& gas, double dx) {
    const Primitive p = primitive_of(stencil[1]);
    const double pressure = p.rho * p.theta;
    const double temperature = p.theta / gas.R;
    const double mean_free_path =
        gas.k_B * temperature / (std::sqrt(2.0) * M_PI * pressure * gas.sigma_c * gas.sigma_c);

    const double w[3] = {stencil[1].rho, stencil[1].mom, stencil[1].en};
    const double grad[3] = {(stencil[2].rho - stencil[0].rho) / (2.0 * dx),
                            (stencil[2].mom - stencil[0].mom) / (2.0 * dx),
                            (stencil[2].en - stencil[0].en) / (2.0 * dx)};
    double length = std::numeric_limits<double>::infinity();
    for (int c = 0; c < 3; ++c) {
        if (grad[c] != 0.0) length = std::min(length, std::abs(w[c]) / std::abs(grad[c]));
    }
    if (!std::isfinite(length)) return 0.0;
    return mean_free_path / length;
}

double h_of_beta(double beta, double lower, double upper) {
    if (beta >= upper) return 1.0;
    if (beta < lower) return 0.0;
    return (beta - lower) / (upper - lower);
}

double h_of_beta(double beta, const Thresholds& thr) {
    return h_of_beta(beta, thr.beta_star, thr.beta_thr);
}

void controller_fluid_pass(const MomentField& moments_old, const MomentField& moments_new,
                           std::vector<double>& h, double dt, const SpaceGrid& grid,
                           const Controller& ctl) {
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        if (h[i] != 0.0) continue;
        if (ctl.thresholds.criterion_kind == CriterionKind::LocalKnudsen) {
            const ConservedMoments st[3] = {moments_old[i - 1], moments_old[i],
                                            moments_old[i + 1]};
            const double eps = local_knudsen(st, ctl.gas, grid.dx);
            h[i] = h_of_beta(eps, ctl.thresholds.eps_star, ctl.thresholds.eps_thr);
        } else {
            const ConservedMoments st[5] = {moments_old[i - 2], moments_old[i - 1], moments_old[i],
                                            moments_old[i + 1], moments_old[i + 2]};
            const double nu = collision_frequency(moments_old[i], ctl.gas);
            const double lambda4 = predicted_g_moment(st, moments_new[i], dt, grid.dx, nu);
            const double beta = macro_beta4(lambda4, moments_old[i], ctl.guard);
            h[i] = h_of_beta(beta, ctl.thresholds);
        }
    }
}

void controller_active_pass(const PerturbationField& gK, const MomentField& moments,
                            const VelocityGrid& vgrid, std::vector<double>& h,
                            const SpaceGrid& grid, const Controller& ctl) {
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        if (h[i] == 0.0) continue;
        const double beta = micro_beta4(gK, vgrid, i, moments[i], ctl.guard);
        h[i] = h_of_beta(beta, ctl.thresholds);
    }
}

TransitionField controller_update(const MomentField& moments_old, const MomentField& moments_new,
                                  const PerturbationField& gK, const VelocityGrid& vgrid,
                                  const std::vector<double>& h_current, double dt,
                                  const SpaceGrid& grid, const Controller& ctl) {
    TransitionField out(grid.total_cells());
    out.h = h_current;
    if (ctl.override_h) {
        ctl.override_h(out.h, 0);
    } else {
        controller_fluid_pass(moments_old, moments_new, out.h, dt, grid, ctl);
        controller_active_pass(gK, moments_new, vgrid, out.h, grid, ctl);
    }
    out.retag();
    return out;
}

}  // namespace micromac
