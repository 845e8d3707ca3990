#include "micromac/boundary.hpp"

#include "micromac/errors.hpp"

namespace micromac {

namespace {

// Ghost index k cells away from the boundary and its mirror interior cell.
struct GhostMap {
    int ghost;
    int interior;  // mirror partner (wall) / nearest interior for k = 0
};

GhostMap ghost_pair(const SpaceGrid& grid, Side side, int k) {
    if (side == Side::Left) return {grid.n_ghost - 1 - k, grid.n_ghost + k};
    return {grid.end_interior() + k, grid.end_interior() - 1 - k};
}

int nearest_interior(const SpaceGrid& grid, Side side) {
    return side == Side::Left ? grid.first_interior() : grid.end_interior() - 1;
}

}  // namespace

void fill_ghosts_macro(MomentField& cells, const SpaceGrid& grid, Side side,
                       const BoundaryKind& kind) {
    for (int k = 0; k < grid.n_ghost; ++k) {
        const GhostMap gm = ghost_pair(grid, side, k);
        switch (kind.type) {
            case BoundaryKind::Type::SpecularWall: {
                ConservedMoments m = cells[gm.interior];
                m.mom = -m.mom;
                cells[gm.ghost] = m;
                break;
            }
            case BoundaryKind::Type::FixedInflow:
                cells[gm.ghost] = kind.inflow;
                break;
            case BoundaryKind::Type::Neumann:
                cells[gm.ghost] = cells[nearest_interior(grid, side)];
                break;
        }
    }
}

void fill_ghosts_h(std::vector<double>& h, const SpaceGrid& grid, Side side,
                   const BoundaryKind& kind) {
    for (int k = 0; k < grid.n_ghost; ++k) {
        const GhostMap gm = ghost_pair(grid, side, k);
        switch (kind.type) {
            case BoundaryKind::Type::SpecularWall:
                h[gm.ghost] = h[gm.interior];
                break;
            case BoundaryKind::Type::FixedInflow:
                h[gm.ghost] = 0.0;
                break;
            case BoundaryKind::Type::Neumann:
                h[gm.ghost] = h[nearest_interior(grid, side)];
                break;
        }
    }
}

namespace {

void reflect_into_ghost(Field2D& f, const VelocityGrid& vgrid, int ghost, int interior,
                        double sign = 1.0) {
    double* g = f.row(ghost);
    const double* in = f.row(interior);
    for (int j = 0; j < vgrid.n_v; ++j) g[j] = sign * in[vgrid.reflect(j)];
}

void require_symmetric(const VelocityGrid& vgrid) {
    if (!vgrid.symmetric())
        throw AsymmetricGrid("specular wall requires a velocity grid symmetric about 0");
}

}  // namespace

void fill_ghosts_kinetic(Field2D& F, Field2D& G, const SpaceGrid& grid, const VelocityGrid& vgrid,
                         Side side, const BoundaryKind& kind) {
    switch (kind.type) {
        case BoundaryKind::Type::SpecularWall: {
            require_symmetric(vgrid);
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                reflect_into_ghost(F, vgrid, gm.ghost, gm.interior);
                reflect_into_ghost(G, vgrid, gm.ghost, gm.interior);
            }
            break;
        }
        case BoundaryKind::Type::FixedInflow: {
            const DiscreteMaxwellian eq = discrete_maxwellian(kind.inflow, vgrid);
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                for (int j = 0; j < vgrid.n_v; ++j) {
                    F.at(gm.ghost, j) = eq.MF[j];
                    G.at(gm.ghost, j) = eq.MG[j];
                }
            }
            break;
        }
        case BoundaryKind::Type::Neumann: {
            const int src = nearest_interior(grid, side);
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                for (int j = 0; j < vgrid.n_v; ++j) {
                    F.at(gm.ghost, j) = F.at(src, j);
                    G.at(gm.ghost, j) = G.at(src, j);
                }
            }
            break;
        }
    }
}

void fill_ghosts_perturbation(PerturbationField& g, const SpaceGrid& grid,
                              const VelocityGrid& vgrid, Side side, const BoundaryKind& kind) {
    switch (kind.type) {
        case BoundaryKind::Type::SpecularWall: {
            require_symmetric(vgrid);
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                reflect_into_ghost(g.F, vgrid, gm.ghost, gm.interior);
                reflect_into_ghost(g.G, vgrid, gm.ghost, gm.interior);
            }
            break;
        }
        case BoundaryKind::Type::FixedInflow: {
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                for (int j = 0; j < vgrid.n_v; ++j) {
                    g.F.at(gm.ghost, j) = 0.0;
                    g.G.at(gm.ghost, j) = 0.0;
                }
            }
            break;
        }
        case BoundaryKind::Type::Neumann: {
            const int src = nearest_interior(grid, side);
            for (int k = 0; k < grid.n_ghost; ++k) {
                const GhostMap gm = ghost_pair(grid, side, k);
                for (int j = 0; j < vgrid.n_v; ++j) {
                    g.F.at(gm.ghost, j) = g.F.at(src, j);
                    g.G.at(gm.ghost, j) = g.G.at(src, j);
                }
            }
            break;
        }
    }
}

}  // namespace micromac
