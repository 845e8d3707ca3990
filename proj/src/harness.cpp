#include "micromac/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "micromac/errors.hpp"
#include "micromac/maxwellian.hpp"

namespace micromac {

Backend backend_from_string(const std::string& name) {
    if (name == "euler") return Backend::Euler;
    if (name == "kinetic") return Backend::Kinetic;
    if (name == "micromac" || name == "micromac-split") return Backend::MicroMacroSplit;
    if (name == "micromac-nonsplit") return Backend::MicroMacroNonsplit;
    throw std::invalid_argument("unknown backend: " + name);
}

std::string to_string(Backend b) {
    switch (b) {
        case Backend::Euler: return "euler";
        case Backend::Kinetic: return "kinetic";
        case Backend::MicroMacroSplit: return "micromac-split";
        case Backend::MicroMacroNonsplit: return "micromac-nonsplit";
    }
    return "?";
}

namespace {

FluxVector interior_totals(const MomentField& m, const SpaceGrid& grid) {
    FluxVector t{};
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        t[0] += m[i].rho;
        t[1] += m[i].mom;
        t[2] += m[i].en;
    }
    for (double& c : t) c *= grid.dx;
    return t;
}

double interior_alpha(const MomentField& m, const SpaceGrid& grid, double gamma) {
    double a = 0.0;
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const Primitive p = primitive_of(m[i], i);
        a = std::max(a, std::abs(p.u) + std::sqrt(gamma * p.theta));
    }
    return a;
}

double heat_flux(const PerturbationField& g, const VelocityGrid& vgrid, int cell) {
    const double* gF = g.F.row(cell);
    const double* gG = g.G.row(cell);
    double q = 0.0;
    for (int j = 0; j < vgrid.n_v; ++j) {
        const double v = vgrid.node(j);
        q += v * (0.5 * v * v * gF[j] + gG[j]);
    }
    return q * vgrid.dv;
}

// moments must have ghost cells filled (Knudsen stencil reaches them).
SnapshotRecord make_snapshot(const Scenario& sc, const MomentField& moments,
                             const PerturbationField* g, const std::vector<double>* h,
                             double time, long step) {
    const SpaceGrid& grid = sc.grid;
    SnapshotRecord rec;
    rec.time = time;
    rec.step = step;
    const Beta4Guard guard;
    int active = 0;
    for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
        const Primitive p = primitive_of(moments[i], i);
        rec.x.push_back(grid.cell_center(i));
        rec.rho.push_back(p.rho);
        rec.u.push_back(p.u);
        rec.T.push_back(p.theta / sc.gas.R);
        rec.q.push_back(g ? heat_flux(*g, sc.vgrid, i) : 0.0);
        const double hv = h ? (*h)[i] : 0.0;
        rec.h.push_back(hv);
        if (hv > 0.0) ++active;
        const ConservedMoments st[3] = {moments[i - 1], moments[i], moments[i + 1]};
        rec.knudsen.push_back(local_knudsen(st, sc.gas, grid.dx));
        rec.beta4.push_back(g ? micro_beta4(*g, sc.vgrid, i, moments[i], guard) : 0.0);
    }
    rec.totals = interior_totals(moments, grid);
    rec.active_fraction = static_cast<double>(active) / grid.n_x;
    return rec;
}

struct SnapshotSchedule {
    std::vector<double> times;
    size_t next = 0;

    explicit SnapshotSchedule(const Scenario& sc) {
        times = sc.snapshot_times;
        times.push_back(sc.t_end);
        std::sort(times.begin(), times.end());
        times.erase(std::unique(times.begin(), times.end(),
                                [](double a, double b) { return std::abs(a - b) <= 1e-14; }),
                    times.end());
    }
    double clip(double t, double dt) const {
        if (next < times.size()) dt = std::min(dt, times[next] - t);
        return dt;
    }
    bool due(double t) {
        if (next < times.size() && t >= times[next] - 1e-12 * std::max(1.0, times[next])) {
            ++next;
            return true;
        }
        return false;
    }
};

std::string format_time(double t) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(6) << t;
    return os.str();
}

}  // namespace

void write_snapshot_csv(const std::string& path, const SnapshotRecord& rec) {
    std::ofstream out(path);
    out << std::setprecision(17);
    out << "x,rho,u,T,q,h,kn,beta4\n";
    for (size_t i = 0; i < rec.x.size(); ++i) {
        out << rec.x[i] << ',' << rec.rho[i] << ',' << rec.u[i] << ',' << rec.T[i] << ','
            << rec.q[i] << ',' << rec.h[i] << ',' << rec.knudsen[i] << ',' << rec.beta4[i]
            << '\n';
    }
}

void write_manifest(const std::string& path, const Scenario& sc, const RunOptions& opt,
                    const RunSummary& s) {
    std::ofstream out(path);
    out << std::setprecision(17);
    out << "scenario = " << sc.name << '\n';
    out << "backend = " << to_string(opt.backend) << '\n';
    out << "criterion = "
        << (opt.thresholds.criterion_kind == CriterionKind::LocalKnudsen ? "knudsen" : "beta4")
        << '\n';
    out << "nx = " << sc.grid.n_x << '\n';
    out << "nv = " << sc.vgrid.n_v << '\n';
    out << "v_max = " << sc.vgrid.max_speed() << '\n';
    out << "beta_thr = " << opt.thresholds.beta_thr << '\n';
    out << "beta_star = " << opt.thresholds.beta_star << '\n';
    out << "eps_thr = " << opt.thresholds.eps_thr << '\n';
    out << "eps_star = " << opt.thresholds.eps_star << '\n';
    out << "cfl_safety = " << opt.cfl_safety << '\n';
    out << "t_final = " << sc.t_end << '\n';
    out << "steps = " << s.steps << '\n';
    out << "rejected_steps = " << s.rejected_steps << '\n';
    out << "wall_seconds = " << s.wall_seconds << '\n';
    const char* comp[3] = {"mass", "momentum", "energy"};
    for (int c = 0; c < 3; ++c) {
        out << "total_initial_" << comp[c] << " = " << s.initial_totals[c] << '\n';
        out << "total_final_" << comp[c] << " = " << s.final_totals[c] << '\n';
        out << "conservation_error_" << comp[c] << " = " << s.conservation_error[c] << '\n';
    }
    out << "min_positivity = " << s.min_positivity << '\n';
    out << "min_h_positivity = " << s.min_h_positivity << '\n';
    out << "time_avg_active_fraction = " << s.time_avg_active_fraction << '\n';
    out << "max_active_fraction = " << s.max_active_fraction << '\n';
    // cell-fraction proxy for the speedup (machine-independent counterpart of
    // the wall-clock ratio against the full kinetic backend)
    out << "speedup_proxy = " << 1.0 - s.time_avg_active_fraction << '\n';
}

RunResult run_scenario(const Scenario& sc, const RunOptions& opt) {
    const SpaceGrid& grid = sc.grid;
    const VelocityGrid& vgrid = sc.vgrid;
    const auto t0 = std::chrono::steady_clock::now();

    RunResult res;
    RunSummary& sum = res.summary;
    SnapshotSchedule sched(sc);

    const bool is_euler = opt.backend == Backend::Euler;
    const bool is_kinetic = opt.backend == Backend::Kinetic;
    const bool is_split = opt.backend == Backend::MicroMacroSplit;

    CoupledState state = sc.make_state();
    ReducedDistribution dist;
    if (is_kinetic) dist = sc.make_distribution();

    Controller ctl;
    ctl.thresholds = opt.thresholds;
    ctl.guard = opt.guard;
    ctl.gas = sc.gas;
    ctl.override_h = opt.override_h;

    CoupledOptions copt;
    copt.limiter = opt.limiter;
    copt.kinetic_order = opt.kinetic_order;
    copt.cfl_safety = opt.cfl_safety;

    auto current_moments = [&]() -> MomentField& {
        return state.moments;
    };
    auto sync_kinetic_moments = [&]() {
        if (!is_kinetic) return;
        for (int i = grid.first_interior(); i < grid.end_interior(); ++i)
            state.moments[i] = moments_of(dist, vgrid, i);
    };
    sync_kinetic_moments();
    sum.initial_totals = interior_totals(state.moments, grid);

    double active_fraction_integral = 0.0;

    auto emit = [&](double time, long step) {
        MomentField m = current_moments();
        fill_ghosts_macro(m, grid, Side::Left, sc.bc.left);
        fill_ghosts_macro(m, grid, Side::Right, sc.bc.right);

        SnapshotRecord rec;
        if (is_euler) {
            rec = make_snapshot(sc, m, nullptr, nullptr, time, step);
        } else if (is_kinetic) {
            // reconstruct the non-equilibrium part f - E[moments] for the
            // diagnostic columns
            PerturbationField g(grid.total_cells(), vgrid.n_v);
            for (int i = grid.first_interior(); i < grid.end_interior(); ++i) {
                const DiscreteMaxwellian eq = discrete_maxwellian(m[i], vgrid);
                for (int j = 0; j < vgrid.n_v; ++j) {
                    g.F.at(i, j) = dist.F.at(i, j) - eq.MF[j];
                    g.G.at(i, j) = dist.G.at(i, j) - eq.MG[j];
                }
            }
            rec = make_snapshot(sc, m, &g, nullptr, time, step);
            rec.active_fraction = 1.0;
            std::fill(rec.h.begin(), rec.h.end(), 1.0);
        } else {
            rec = make_snapshot(sc, m, &state.gK, &state.trans.h, time, step);
        }
        if (!opt.out_dir.empty()) {
            std::ostringstream name;
            name << "snapshot_" << std::setw(4) << std::setfill('0') << res.snapshots.size()
                 << "_t" << format_time(time) << ".csv";
            write_snapshot_csv((std::filesystem::path(opt.out_dir) / name.str()).string(), rec);
        }
        res.snapshots.push_back(std::move(rec));
    };

    if (!opt.out_dir.empty()) std::filesystem::create_directories(opt.out_dir);
    emit(0.0, 0);

    double t = 0.0;
    long step = 0;
    try {
        while (t < sc.t_end - 1e-14 * sc.t_end && step < opt.max_steps) {
            double dt;
            BoundaryFluxes bf{};
            StepOutcome out;

            if (is_euler) {
                dt = opt.cfl_safety * grid.dx / interior_alpha(state.moments, grid, sc.gas.gamma);
                dt = sched.clip(t, dt);
                fill_ghosts_macro(state.moments, grid, Side::Left, sc.bc.left);
                fill_ghosts_macro(state.moments, grid, Side::Right, sc.bc.right);
                bf = euler_step(state.moments, dt, grid, sc.gas.gamma, opt.limiter);
            } else if (is_kinetic) {
                dt = opt.cfl_safety * kinetic_cfl_limit(grid, vgrid);
                dt = sched.clip(t, dt);
                fill_ghosts_kinetic(dist.F, dist.G, grid, vgrid, Side::Left, sc.bc.left);
                fill_ghosts_kinetic(dist.F, dist.G, grid, vgrid, Side::Right, sc.bc.right);
                bf = kinetic_step(dist, dt, grid, vgrid, sc.gas, opt.kinetic_order);
                sync_kinetic_moments();
            } else {
                dt = opt.cfl_safety * grid.dx / interior_alpha(state.moments, grid, sc.gas.gamma);
                const bool any_active =
                    std::any_of(state.trans.h.begin() + grid.first_interior(),
                                state.trans.h.begin() + grid.end_interior(),
                                [](double h) { return h > 0.0; });
                if (any_active) dt = std::min(dt, opt.cfl_safety * kinetic_cfl_limit(grid, vgrid));
                dt = sched.clip(t, dt);

                for (int attempt = 0;; ++attempt) {
                    out = is_split
                              ? coupled_step(state, dt, grid, vgrid, sc.gas, ctl, sc.bc, copt)
                              : nonsplit_step(state, dt, grid, vgrid, sc.gas, ctl, sc.bc, copt);
                    if (out.accepted) break;
                    ++sum.rejected_steps;
                    if (attempt >= 25 || !(out.required_dt > 0.0))
                        throw NonPhysicalState("time step rejected repeatedly at t = " +
                                               format_time(t));
                    dt = sched.clip(t, out.required_dt);
                }
                bf.left = out.diag.boundary_flux_left;
                bf.right = out.diag.boundary_flux_right;
                sum.min_positivity = std::min(sum.min_positivity, out.diag.min_f_over_scale);
                sum.min_h_positivity =
                    std::min(sum.min_h_positivity, out.diag.min_hf_over_scale);
            }

            for (int c = 0; c < 3; ++c)
                sum.boundary_integral[c] += dt * (bf.left[c] - bf.right[c]);

            t += dt;
            ++step;
            const double af =
                (is_euler) ? 0.0
                           : (is_kinetic ? 1.0
                                         : std::count_if(
                                               state.trans.h.begin() + grid.first_interior(),
                                               state.trans.h.begin() + grid.end_interior(),
                                               [](double h) { return h > 0.0; }) /
                                               static_cast<double>(grid.n_x));
            active_fraction_integral += dt * af;
            sum.max_active_fraction = std::max(sum.max_active_fraction, af);

            const bool figure_due = sched.due(t);
            const bool cadence_due = opt.snapshot_every > 0 && step % opt.snapshot_every == 0;
            if (figure_due || cadence_due) emit(t, step);
        }
    } catch (const std::exception& e) {
        throw NonPhysicalState(std::string(e.what()) + " [scenario " + sc.name + ", step " +
                               std::to_string(step) + ", t = " + format_time(t) + "]");
    }

    sum.steps = step;
    sum.final_totals = interior_totals(state.moments, grid);
    // physical floors keep symmetric problems (total momentum ~ 0) from
    // turning roundoff into an O(1) relative error
    const double v_ref = std::max(std::abs(vgrid.node(0)), std::abs(vgrid.node(vgrid.n_v - 1)));
    const double mass_ref = std::abs(sum.initial_totals[0]);
    const double floors[3] = {1e-300, mass_ref * v_ref, mass_ref * v_ref * v_ref};
    for (int c = 0; c < 3; ++c) {
        const double balance =
            (sum.final_totals[c] - sum.initial_totals[c]) - sum.boundary_integral[c];
        const double scale = std::max({std::abs(sum.initial_totals[c]),
                                       std::abs(sum.final_totals[c]),
                                       std::abs(sum.boundary_integral[c]), floors[c], 1e-300});
        sum.conservation_error[c] = std::abs(balance) / scale;
    }
    sum.time_avg_active_fraction = t > 0.0 ? active_fraction_integral / t : 0.0;
    sum.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (!opt.out_dir.empty())
        write_manifest((std::filesystem::path(opt.out_dir) / "manifest.txt").string(), sc, opt,
                       sum);

    res.state = std::move(state);
    if (is_kinetic) res.dist = std::move(dist);
    return res;
}

std::vector<ColumnDiff> compare_snapshots(const std::string& file_a, const std::string& file_b) {
    auto read = [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path);
        std::string header;
        std::getline(in, header);
        std::vector<std::string> cols;
        {
            std::istringstream hs(header);
            std::string c;
            while (std::getline(hs, c, ',')) cols.push_back(c);
        }
        std::vector<std::vector<double>> data(cols.size());
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            std::istringstream ls(line);
            std::string cell;
            size_t k = 0;
            while (std::getline(ls, cell, ',') && k < cols.size()) data[k++].push_back(std::stod(cell));
        }
        return std::pair{cols, data};
    };
    auto [cols_a, a] = read(file_a);
    auto [cols_b, b] = read(file_b);
    if (cols_a != cols_b || a.size() != b.size())
        throw std::runtime_error("snapshot schemas differ");
    std::vector<ColumnDiff> out;
    for (size_t c = 0; c < cols_a.size(); ++c) {
        if (a[c].size() != b[c].size()) throw std::runtime_error("snapshot row counts differ");
        ColumnDiff d;
        d.column = cols_a[c];
        for (size_t i = 0; i < a[c].size(); ++i) {
            const double e = std::abs(a[c][i] - b[c][i]);
            d.l1 += e;
            d.linf = std::max(d.linf, e);
        }
        out.push_back(d);
    }
    return out;
}

}  // namespace micromac
