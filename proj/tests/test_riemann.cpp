#include <cmath>

#include "doctest.h"
#include "micromac/riemann.hpp"

using namespace micromac;

namespace {
const double g53 = 5.0 / 3.0;

// independent pressure-function evaluation (Toro form), used to verify the
// star state by residual rather than by re-running the solver's own iteration
double pressure_fn(double ps, double rho, double p, double gamma) {
    const double a = std::sqrt(gamma * p / rho);
    if (ps > p) {
        const double A = 2.0 / ((gamma + 1.0) * rho);
        const double B = (gamma - 1.0) / (gamma + 1.0) * p;
        return (ps - p) * std::sqrt(A / (ps + B));
    }
    return 2.0 * a / (gamma - 1.0) * (std::pow(ps / p, (gamma - 1.0) / (2.0 * gamma)) - 1.0);
}
}  // namespace

TEST_CASE("identical states give a constant profile") {
    const Primitive s{1.0, 0.3, 2.0};
    const RiemannSolution sol(s, s, g53);
    for (const double xi : {-2.0, -0.5, 0.0, 0.3, 2.0}) {
        const Primitive p = sol.sample(xi);
        CHECK(p.rho == doctest::Approx(s.rho).epsilon(1e-12));
        CHECK(p.u == doctest::Approx(s.u).epsilon(1e-12));
        CHECK(p.theta == doctest::Approx(s.theta).epsilon(1e-12));
    }
}

TEST_CASE("symmetric collision has a stationary contact") {
    const Primitive left{1.0, 1.0, 1.0};
    const Primitive right{1.0, -1.0, 1.0};
    const RiemannSolution sol(left, right, g53);
    CHECK(sol.star_velocity() == doctest::Approx(0.0).epsilon(1e-12));
    const Primitive pl = sol.sample(-1e-9);
    const Primitive pr = sol.sample(1e-9);
    CHECK(pl.rho == doctest::Approx(pr.rho).epsilon(1e-10));
    CHECK(pl.rho * pl.theta == doctest::Approx(pr.rho * pr.theta).epsilon(1e-10));
}

TEST_CASE("Sod-class star pressure lies between the initial pressures") {
    const GasModel gas;
    const Primitive left{2e-5, 0.0, gas.R * 273.15};
    const Primitive right{0.25e-5, 0.0, gas.R * 218.4};
    const RiemannSolution sol(left, right, g53);
    const double pl = left.rho * left.theta, pr = right.rho * right.theta;
    CHECK(sol.star_pressure() > std::min(pl, pr));
    CHECK(sol.star_pressure() < std::max(pl, pr));

    // root verified against an independently coded pressure function
    const double resid = pressure_fn(sol.star_pressure(), left.rho, pl, g53) +
                         pressure_fn(sol.star_pressure(), right.rho, pr, g53) +
                         (right.u - left.u);
    CHECK(std::abs(resid) <= 1e-12 * std::max(std::abs(left.u) + std::sqrt(g53 * left.theta),
                                              std::sqrt(g53 * right.theta)));
}

TEST_CASE("vacuum-forming data are rejected") {
    const Primitive left{1.0, -10.0, 0.1};
    const Primitive right{1.0, 10.0, 0.1};
    CHECK_THROWS_AS(RiemannSolution(left, right, g53), VacuumError);
}

TEST_CASE("profile sampling respects initial data at t = 0") {
    const Primitive left{1.0, 0.0, 1.0};
    const Primitive right{0.125, 0.0, 0.8};
    const std::vector<double> x{-1.0, -0.1, 0.1, 1.0};
    const auto prof = riemann_profile(left, right, g53, 0.0, x);
    CHECK(prof[0].rho == left.rho);
    CHECK(prof[1].rho == left.rho);
    CHECK(prof[2].rho == right.rho);
    CHECK(prof[3].rho == right.rho);
}

TEST_CASE("rarefaction fan is continuous across head and tail") {
    const Primitive left{1.0, 0.0, 1.0};
    const Primitive right{0.125, 0.0, 0.8};
    const RiemannSolution sol(left, right, g53);
    const double al = std::sqrt(g53 * left.theta);
    const double head = left.u - al;
    const Primitive a = sol.sample(head - 1e-9);
    const Primitive b = sol.sample(head + 1e-9);
    CHECK(a.rho == doctest::Approx(b.rho).epsilon(1e-6));
    CHECK(a.u == doctest::Approx(b.u).epsilon(1e-6).scale(1.0));
}
