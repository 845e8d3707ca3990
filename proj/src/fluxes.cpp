#include "micromac/fluxes.hpp"

#include <cmath>

#include "micromac/errors.hpp"

namespace micromac {

double minmod(double a, double b, double c) {
    if (a > 0.0 && b > 0.0 && c > 0.0) return std::min(a, std::min(b, c));
    if (a < 0.0 && b < 0.0 && c < 0.0) return std::max(a, std::max(b, c));
    return 0.0;
}

double limiter_value(Limiter kind, double num, double den) {
    if (den == 0.0) return 0.0;
    const double chi = num / den;
    switch (kind) {
        case Limiter::Minmod: return std::max(0.0, std::min(1.0, chi));
        case Limiter::VanLeer: return (chi + std::abs(chi)) / (1.0 + std::abs(chi));
    }
    return 0.0;
}

void kinetic_flux(std::span<const double> field, double v, int order, const SpaceGrid& grid,
                  std::span<double> out) {
    const int ng = grid.n_ghost;
    const double vp = v >= 0.0 ? v : 0.0;
    const double vm = v < 0.0 ? v : 0.0;
    for (int k = 0; k <= grid.n_x; ++k) {
        const int i = ng + k - 1;  // left cell of the interface
        double phi = vm * field[i + 1] + vp * field[i];
        if (order == 2) {
            double corr;
            if (v >= 0.0) {
                corr = minmod(field[i] - field[i - 1], field[i + 1] - field[i],
                              field[i + 2] - field[i]);
            } else {
                // mirrored stencil, upwind cell i+1
                corr = minmod(field[i + 2] - field[i + 1], field[i + 1] - field[i],
                              field[i + 1] - field[i - 1]);
            }
            phi += 0.5 * std::abs(v) * corr;
        }
        out[k] = phi;
    }
}

double spectral_radius(const MomentField& moments, double gamma) {
    double alpha = 0.0;
    for (size_t i = 0; i < moments.size(); ++i) {
        const Primitive p = primitive_of(moments[i], static_cast<int>(i));
        alpha = std::max(alpha, std::abs(p.u) + std::sqrt(gamma * p.theta));
    }
    return alpha;
}

void macro_flux(const MomentField& moments, const std::vector<FluxVector>& gk_moments,
                double alpha, Limiter limiter, const SpaceGrid& grid,
                std::vector<FluxVector>& out) {
    const int ng = grid.n_ghost;
    const int n_tot = grid.total_cells();
    out.assign(grid.n_x + 1, FluxVector{});

    // Total per-cell fluxes and the characteristic combinations F +- alpha*rho.
    std::vector<FluxVector> ftot(n_tot), wp(n_tot), wm(n_tot);
    for (int i = 0; i < n_tot; ++i) {
        const FluxVector fe = euler_flux(moments[i]);
        const double q[3] = {moments[i].rho, moments[i].mom, moments[i].en};
        for (int c = 0; c < 3; ++c) {
            ftot[i][c] = fe[c] + gk_moments[i][c];
            wp[i][c] = ftot[i][c] + alpha * q[c];
            wm[i][c] = ftot[i][c] - alpha * q[c];
        }
    }

    auto sigma = [&](const std::vector<FluxVector>& w, int i, int c) {
        const double den = w[i + 1][c] - w[i][c];
        const double num = w[i][c] - w[i - 1][c];
        return den * limiter_value(limiter, num, den);
    };

    for (int k = 0; k <= grid.n_x; ++k) {
        const int i = ng + k - 1;
        const double ql[3] = {moments[i].rho, moments[i].mom, moments[i].en};
        const double qr[3] = {moments[i + 1].rho, moments[i + 1].mom, moments[i + 1].en};
        for (int c = 0; c < 3; ++c) {
            out[k][c] = 0.5 * (ftot[i][c] + ftot[i + 1][c]) - 0.5 * alpha * (qr[c] - ql[c]) +
                        0.25 * (sigma(wp, i, c) - sigma(wm, i + 1, c));
        }
    }
}

}  // namespace micromac
