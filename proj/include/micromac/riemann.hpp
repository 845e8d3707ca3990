#pragma once

#include <vector>

#include "micromac/state.hpp"

namespace micromac {

/// Exact solution of the 1D Euler Riemann problem for an ideal gas.
/// Primitive states use (rho, u, theta) with pressure p = rho * theta.
class RiemannSolution {
  public:
    RiemannSolution(const Primitive& left, const Primitive& right, double gamma,
                    double tol = 1e-12, int max_iter = 100);

    /// Self-similar sample at xi = x / t.
    Primitive sample(double xi) const;

    double star_pressure() const { return p_star_; }
    double star_velocity() const { return u_star_; }

  private:
    Primitive left_, right_;
    double gamma_;
    double p_star_ = 0.0, u_star_ = 0.0;
    double rho_star_l_ = 0.0, rho_star_r_ = 0.0;

    Primitive sample_side(double xi, const Primitive& s, double rho_star, int sign) const;
};

/// Sample the exact solution onto cell centers at time t.
std::vector<Primitive> riemann_profile(const Primitive& left, const Primitive& right, double gamma,
                                       double t, const std::vector<double>& x, double x0 = 0.0);

}  // namespace micromac
