#include "micromac/riemann.hpp"

#include <cmath>

#include "micromac/errors.hpp"

namespace micromac {

namespace {

struct PressureFn {
    double rho, p, a, g;

    // f_K(p*) and its derivative for the star-region pressure equation.
    double value(double ps) const {
        if (ps > p) {
            const double A = 2.0 / ((g + 1.0) * rho);
            const double B = (g - 1.0) / (g + 1.0) * p;
            return (ps - p) * std::sqrt(A / (ps + B));
        }
        return 2.0 * a / (g - 1.0) * (std::pow(ps / p, (g - 1.0) / (2.0 * g)) - 1.0);
    }
    double deriv(double ps) const {
        if (ps > p) {
            const double A = 2.0 / ((g + 1.0) * rho);
            const double B = (g - 1.0) / (g + 1.0) * p;
            const double sq = std::sqrt(A / (ps + B));
            return sq * (1.0 - 0.5 * (ps - p) / (ps + B));
        }
        return std::pow(ps / p, -(g + 1.0) / (2.0 * g)) / (rho * a);
    }
};

}  // namespace

RiemannSolution::RiemannSolution(const Primitive& left, const Primitive& right, double gamma,
                                 double tol, int max_iter)
    : left_(left), right_(right), gamma_(gamma) {
    const double pl = left.rho * left.theta;
    const double pr = right.rho * right.theta;
    const double al = std::sqrt(gamma * left.theta);
    const double ar = std::sqrt(gamma * right.theta);
    const double du = right.u - left.u;

    if (2.0 * (al + ar) / (gamma - 1.0) <= du)
        throw VacuumError("Riemann data produce a vacuum region");

    const PressureFn fl{left.rho, pl, al, gamma};
    const PressureFn fr{right.rho, pr, ar, gamma};

    // Two-rarefaction guess, clipped away from zero.
    const double z = (gamma - 1.0) / (2.0 * gamma);
    double p = std::pow((al + ar - 0.5 * (gamma - 1.0) * du) /
                            (al / std::pow(pl, z) + ar / std::pow(pr, z)),
                        1.0 / z);
    p = std::max(p, tol * std::min(pl, pr));

    for (int it = 0; it < max_iter; ++it) {
        const double f = fl.value(p) + fr.value(p) + du;
        const double df = fl.deriv(p) + fr.deriv(p);
        double pn = p - f / df;
        if (pn <= 0.0) pn = 0.5 * p;
        if (std::abs(pn - p) <= tol * 0.5 * (pn + p)) {
            p = pn;
            break;
        }
        p = pn;
    }
    p_star_ = p;
    u_star_ = 0.5 * (left.u + right.u) + 0.5 * (fr.value(p) - fl.value(p));

    const double gr = (gamma - 1.0) / (gamma + 1.0);
    rho_star_l_ = p > pl ? left.rho * ((p / pl + gr) / (gr * p / pl + 1.0))
                         : left.rho * std::pow(p / pl, 1.0 / gamma);
    rho_star_r_ = p > pr ? right.rho * ((p / pr + gr) / (gr * p / pr + 1.0))
                         : right.rho * std::pow(p / pr, 1.0 / gamma);
}

Primitive RiemannSolution::sample_side(double xi, const Primitive& s, double rho_star,
                                       int sign) const {
    // sign = +1 samples the left wave family, -1 the right (mirrored).
    const double g = gamma_;
    const double ps = p_star_;
    const double pk = s.rho * s.theta;
    const double ak = std::sqrt(g * s.theta);
    const double u = sign * s.u;
    const double us = sign * u_star_;
    const double x = sign * xi;

    if (ps > pk) {  // shock
        const double sk = u - ak * std::sqrt((g + 1.0) / (2.0 * g) * ps / pk +
                                             (g - 1.0) / (2.0 * g));
        if (x <= sk) return s;
        return {rho_star, u_star_, ps / rho_star};
    }
    // rarefaction
    const double head = u - ak;
    const double as = ak * std::pow(ps / pk, (g - 1.0) / (2.0 * g));
    const double tail = us - as;
    if (x <= head) return s;
    if (x >= tail) return {rho_star, u_star_, ps / rho_star};
    const double af = 2.0 / (g + 1.0) * (ak + 0.5 * (g - 1.0) * (u - x));
    const double uf = 2.0 / (g + 1.0) * (ak + 0.5 * (g - 1.0) * u + x);
    const double rf = s.rho * std::pow(af / ak, 2.0 / (g - 1.0));
    return {rf, sign * uf, af * af / g};
}

Primitive RiemannSolution::sample(double xi) const {
    if (xi <= u_star_) return sample_side(xi, left_, rho_star_l_, +1);
    return sample_side(xi, right_, rho_star_r_, -1);
}

std::vector<Primitive> riemann_profile(const Primitive& left, const Primitive& right, double gamma,
                                       double t, const std::vector<double>& x, double x0) {
    const RiemannSolution sol(left, right, gamma);
    std::vector<Primitive> out;
    out.reserve(x.size());
    for (const double xi : x) {
        if (t <= 0.0)
            out.push_back(xi < x0 ? left : right);
        else
            out.push_back(sol.sample((xi - x0) / t));
    }
    return out;
}

}  // namespace micromac
