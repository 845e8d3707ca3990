#include "micromac/scenario.hpp"

#include <cmath>

#include "micromac/errors.hpp"
#include "micromac/maxwellian.hpp"

namespace micromac {

CoupledState Scenario::make_state() const {
    CoupledState s(grid, vgrid);
    s.moments = make_moments();
    s.trans.retag();
    return s;
}

MomentField Scenario::make_moments() const {
    MomentField m(grid.total_cells());
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const Primitive& p = initial[i - grid.n_ghost];
        m[i] = assemble_moments(p.rho, p.u, p.theta);
    }
    return m;
}

ReducedDistribution Scenario::make_distribution() const {
    ReducedDistribution f(grid.total_cells(), vgrid.n_v);
    const MomentField m = make_moments();
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const DiscreteMaxwellian eq = discrete_maxwellian(m[i], vgrid);
        for (int j = 0; j < vgrid.n_v; ++j) {
            f.F.at(i, j) = eq.MF[j];
            f.G.at(i, j) = eq.MG[j];
        }
    }
    return f;
}

namespace {

// Velocity bound covering the bulk of the Maxwellian of the hottest initial
// region, with the bulk motion folded into an effective temperature.
double wall_temperature(double T, double u, const GasModel& gas) {
    return T + u * u / (3.0 * gas.R);
}

Scenario make(const std::string& name, int n_x, int n_v, double x_min, double x_max,
              const GasModel& gas, double T_ref, double t_end,
              std::vector<double> snapshot_times) {
    Scenario s;
    s.name = name;
    s.gas = gas;
    s.grid = SpaceGrid{n_x, x_min, x_max};
    const double v_max = 4.0 * std::sqrt(gas.R * T_ref);
    s.vgrid = VelocityGrid::symmetric_bounds(v_max, n_v);
    s.t_end = t_end;
    s.snapshot_times = std::move(snapshot_times);
    s.initial.resize(n_x);
    return s;
}

}  // namespace

Scenario build_scenario(const std::string& name, int n_x, int n_v) {
    const GasModel gas = GasModel::hydrogen();

    const bool shock = name == "shock1" || name == "shock2";
    const bool sod = name == "sod1" || name == "sod2";
    const bool blast = name == "blast1" || name == "blast2";
    if (!shock && !sod && !blast) throw UnknownScenario(name);

    if (shock) {
        const double rho = name == "shock1" ? 1e-6 : 1e-7;
        const double u = -900.0, T = 273.0;
        Scenario s = make(name, n_x, n_v, -20.0, 20.0, gas, wall_temperature(T, u, gas), 0.04,
                          {0.01, 0.02, 0.03, 0.04});
        const Primitive state{rho, u, gas.R * T};
        for (auto& p : s.initial) p = state;
        s.bc.left = BoundaryKind::specular_wall();
        s.bc.right = BoundaryKind::fixed_inflow(assemble_moments(state.rho, state.u, state.theta));
        return s;
    }

    if (sod) {
        const double rho_l = name == "sod1" ? 2e-5 : 5e-6;
        const double rho_r = name == "sod1" ? 0.25e-5 : 0.75e-6;
        const double T_l = 273.15, T_r = 218.4;
        Scenario s = make(name, n_x, n_v, -20.0, 20.0, gas, std::max(T_l, T_r), 2.4e-2,
                          {6e-3, 1.2e-2, 1.8e-2, 2.4e-2});
        for (int k = 0; k < n_x; ++k) {
            const double x = s.grid.cell_center(s.grid.n_ghost + k);
            s.initial[k] = x < 0.0 ? Primitive{rho_l, 0.0, gas.R * T_l}
                                   : Primitive{rho_r, 0.0, gas.R * T_r};
        }
        s.bc.left = BoundaryKind::neumann();
        s.bc.right = BoundaryKind::neumann();
        return s;
    }

    const double rho = name == "blast1" ? 1e-3 : 1e-4;
    const double T_hot = 1e4, T_mid = 50.0, u_jet = 200.0;
    Scenario s = make(name, n_x, n_v, 0.0, 1.0, gas, wall_temperature(T_hot, u_jet, gas), 4e-4,
                      {1e-4, 2e-4, 3e-4, 4e-4});
    for (int k = 0; k < n_x; ++k) {
        const double x = s.grid.cell_center(s.grid.n_ghost + k);
        if (x <= 0.1)
            s.initial[k] = Primitive{rho, u_jet, gas.R * T_hot};
        else if (x >= 0.9)
            s.initial[k] = Primitive{rho, -u_jet, gas.R * T_hot};
        else
            s.initial[k] = Primitive{rho, 0.0, gas.R * T_mid};
    }
    s.bc.left = BoundaryKind::specular_wall();
    s.bc.right = BoundaryKind::specular_wall();
    return s;
}

std::vector<std::string> scenario_names() {
    return {"shock1", "shock2", "sod1", "sod2", "blast1", "blast2"};
}

}  // namespace micromac
