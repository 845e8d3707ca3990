#pragma once

#include <string>
#include <vector>

#include "micromac/micromac.hpp"

namespace micromac {

/// A fully specified test problem: grids, gas, boundaries, initial data and
/// the output times of interest.
struct Scenario {
    std::string name;
    SpaceGrid grid{4, 0.0, 1.0};
    VelocityGrid vgrid{2, 1.0, -0.5};
    GasModel gas;
    DomainBoundaries bc;
    std::vector<Primitive> initial;  // interior cells only
    double t_end = 0.0;
    std::vector<double> snapshot_times;

    /// Coupled state with the initial data, h = 0 and g_K = 0 everywhere.
    CoupledState make_state() const;
    /// Interior moments of the initial data (ghosts zero until filled).
    MomentField make_moments() const;
    /// Full kinetic state: discrete Maxwellian of the initial data.
    ReducedDistribution make_distribution() const;
};

/// Known scenario names: shock1, shock2, sod1, sod2, blast1, blast2.
/// Throws UnknownScenario otherwise.
Scenario build_scenario(const std::string& name, int n_x = 300, int n_v = 40);

std::vector<std::string> scenario_names();

}  // namespace micromac
