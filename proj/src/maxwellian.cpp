#include "micromac/maxwellian.hpp"

#include <cmath>

#include "micromac/errors.hpp"

namespace micromac {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Solve a 3x3 linear system by Gaussian elimination with partial pivoting.
bool solve3(double A[3][3], double b[3], double x[3]) {
    int p[3] = {0, 1, 2};
    for (int k = 0; k < 3; ++k) {
        int piv = k;
        for (int r = k + 1; r < 3; ++r)
            if (std::abs(A[p[r]][k]) > std::abs(A[p[piv]][k])) piv = r;
        std::swap(p[k], p[piv]);
        if (A[p[k]][k] == 0.0) return false;
        for (int r = k + 1; r < 3; ++r) {
            const double f = A[p[r]][k] / A[p[k]][k];
            for (int c = k; c < 3; ++c) A[p[r]][c] -= f * A[p[k]][c];
            b[p[r]] -= f * b[p[k]];
        }
    }
    for (int k = 2; k >= 0; --k) {
        double s = b[p[k]];
        for (int c = k + 1; c < 3; ++c) s -= A[p[k]][c] * x[c];
        x[k] = s / A[p[k]][k];
    }
    return true;
}

struct MomentEval {
    double m[3];   // discrete moments of the candidate pair
    double S[5];   // raw moments sum v^k MF dv, k = 0..4
    double theta_eff;
};

MomentEval eval_moments(const std::array<double, 3>& a, const VelocityGrid& grid,
                        std::vector<double>& MF) {
    MomentEval e{};
    e.theta_eff = -1.0 / (2.0 * a[2]);
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        const double w = std::exp(a[0] + a[1] * v + a[2] * v * v);
        MF[j] = w;
        double vk = w;
        for (int k = 0; k < 5; ++k) {
            e.S[k] += vk;
            vk *= v;
        }
    }
    for (int k = 0; k < 5; ++k) e.S[k] *= grid.dv;
    e.m[0] = e.S[0];
    e.m[1] = e.S[1];
    e.m[2] = 0.5 * e.S[2] + e.theta_eff * e.S[0];
    return e;
}

double residual_norm(const double m[3], const ConservedMoments& t, double mom_scale) {
    const double r0 = std::abs(m[0] - t.rho) / t.rho;
    const double r1 = std::abs(m[1] - t.mom) / mom_scale;
    const double r2 = std::abs(m[2] - t.en) / t.en;
    return std::max(r0, std::max(r1, r2));
}

}  // namespace

void continuous_maxwellian(double rho, double u, double theta, const VelocityGrid& grid,
                           std::vector<double>& MF, std::vector<double>& MG) {
    MF.resize(grid.n_v);
    MG.resize(grid.n_v);
    const double norm = rho / std::sqrt(kTwoPi * theta);
    for (int j = 0; j < grid.n_v; ++j) {
        const double d = grid.node(j) - u;
        MF[j] = norm * std::exp(-d * d / (2.0 * theta));
        MG[j] = theta * MF[j];
    }
}

DiscreteMaxwellian discrete_maxwellian(const ConservedMoments& target, const VelocityGrid& grid,
                                       const NewtonOptions& opt) {
    const Primitive prim = primitive_of(target);
    const double mom_scale = std::max(std::abs(target.mom), target.rho * std::sqrt(prim.theta));

    // Continuous parameters as the initial guess.
    std::array<double, 3> a = {
        std::log(prim.rho / std::sqrt(kTwoPi * prim.theta)) - prim.u * prim.u / (2.0 * prim.theta),
        prim.u / prim.theta,
        -1.0 / (2.0 * prim.theta)};

    DiscreteMaxwellian out;
    out.MF.resize(grid.n_v);
    out.MG.resize(grid.n_v);

    MomentEval e = eval_moments(a, grid, out.MF);
    double res = residual_norm(e.m, target, mom_scale);
    bool ok = false;
    for (int it = 0; it < opt.max_iter && !ok; ++it) {
        if (res <= opt.tol) {
            ok = true;
            break;
        }
        const double th = e.theta_eff;
        double J[3][3] = {
            {e.S[0], e.S[1], e.S[2]},
            {e.S[1], e.S[2], e.S[3]},
            {e.m[2], 0.5 * e.S[3] + th * e.S[1], 0.5 * e.S[4] + th * e.S[2] + 2.0 * th * th * e.S[0]}};
        double rhs[3] = {target.rho - e.m[0], target.mom - e.m[1], target.en - e.m[2]};
        double da[3];
        if (!solve3(J, rhs, da)) break;

        // Damped update: halve the step while the residual grows or the
        // exponent loses concavity.
        double step = 1.0;
        bool accepted = false;
        for (int halve = 0; halve < 40; ++halve) {
            std::array<double, 3> cand = {a[0] + step * da[0], a[1] + step * da[1],
                                          a[2] + step * da[2]};
            if (cand[2] < 0.0) {
                MomentEval ec = eval_moments(cand, grid, out.MF);
                const double rc = residual_norm(ec.m, target, mom_scale);
                if (rc < res || rc <= opt.tol) {
                    a = cand;
                    e = ec;
                    res = rc;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if (!accepted) break;
    }
    if (res <= opt.tol) ok = true;

    if (ok) {
        out.lagrange = a;
        const double th = e.theta_eff;
        if (!(th > 0.0)) throw NonPhysicalState("discrete Maxwellian: non-positive temperature");
        for (int j = 0; j < grid.n_v; ++j) out.MG[j] = th * out.MF[j];
        out.converged = true;
        return out;
    }

    // Newton divergence: fall back to the pointwise Gaussian, rescaled so the
    // discrete mass and energy match the target exactly. A residual drift
    // shift is reported through the converged flag.
    continuous_maxwellian(prim.rho, prim.u, prim.theta, grid, out.MF, out.MG);
    double s0 = 0.0, s2 = 0.0;
    for (int j = 0; j < grid.n_v; ++j) {
        const double v = grid.node(j);
        s0 += out.MF[j];
        s2 += 0.5 * v * v * out.MF[j];
    }
    s0 *= grid.dv;
    s2 *= grid.dv;
    if (!(s0 > 0.0)) throw NonPhysicalState("discrete Maxwellian: empty grid support");
    const double scale = target.rho / s0;
    s2 *= scale;
    const double theta_adj = (target.en - s2) / target.rho;
    if (!(theta_adj > 0.0))
        throw NonPhysicalState("discrete Maxwellian: fallback yields non-positive temperature");
    for (int j = 0; j < grid.n_v; ++j) {
        out.MF[j] *= scale;
        out.MG[j] = theta_adj * out.MF[j];
    }
    out.lagrange = a;
    out.converged = false;
    return out;
}

FluxVector euler_flux(const Primitive& p) {
    return {p.rho * p.u, p.rho * p.u * p.u + p.rho * p.theta,
            p.rho * p.u * (0.5 * p.u * p.u + 2.5 * p.theta)};
}

FluxVector euler_flux(const ConservedMoments& m) { return euler_flux(primitive_of(m)); }

double maxwellian_raw_moment(double rho, double u, double theta, int order) {
    switch (order) {
        case 1: return rho * u;
        case 2: return rho * (u * u + 3.0 * theta);
        case 3: return rho * u * (u * u + 5.0 * theta);
        case 4: return rho * (u * u * u * u + 8.0 * u * u * theta + 5.0 * theta * theta);
        default: throw std::invalid_argument("maxwellian_raw_moment: order must be 1..4");
    }
}

}  // namespace micromac
