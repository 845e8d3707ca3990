#pragma once

#include "micromac/maxwellian.hpp"
#include "micromac/state.hpp"

namespace micromac {

enum class Side { Left, Right };

/// Ghost-cell recipe for one domain side.
struct BoundaryKind {
    enum class Type { SpecularWall, FixedInflow, Neumann };
    Type type = Type::Neumann;
    ConservedMoments inflow{};  // used by FixedInflow only

    static BoundaryKind specular_wall() { return {Type::SpecularWall, {}}; }
    static BoundaryKind fixed_inflow(const ConservedMoments& state) {
        return {Type::FixedInflow, state};
    }
    static BoundaryKind neumann() { return {Type::Neumann, {}}; }
};

/// Populate macroscopic ghost cells on one side.
///  SpecularWall: mirror copy with negated momentum.
///  FixedInflow:  ghosts pinned to the stored state.
///  Neumann:      copy of the nearest interior cell.
void fill_ghosts_macro(MomentField& cells, const SpaceGrid& grid, Side side,
                       const BoundaryKind& kind);

/// Ghost h weights: mirrored for walls, 0 for inflow (equilibrium gas),
/// copied for Neumann.
void fill_ghosts_h(std::vector<double>& h, const SpaceGrid& grid, Side side,
                   const BoundaryKind& kind);

/// Populate kinetic ghost cells for a reduced pair (F, G).
///  SpecularWall: ghost(v_j) = mirrored interior(-v_j); requires a symmetric grid.
///  FixedInflow:  discrete Maxwellian of the inflow state.
///  Neumann:      copy of the nearest interior cell.
void fill_ghosts_kinetic(Field2D& F, Field2D& G, const SpaceGrid& grid, const VelocityGrid& vgrid,
                         Side side, const BoundaryKind& kind);

/// Same rules for the perturbation pair, except FixedInflow pins g_K = 0.
void fill_ghosts_perturbation(PerturbationField& g, const SpaceGrid& grid,
                              const VelocityGrid& vgrid, Side side, const BoundaryKind& kind);

}  // namespace micromac
