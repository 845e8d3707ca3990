#pragma once

#include <functional>
#include <string>
#include <vector>

#include "micromac/scenario.hpp"

namespace micromac {

enum class Backend { Euler, Kinetic, MicroMacroSplit, MicroMacroNonsplit };

Backend backend_from_string(const std::string& name);
std::string to_string(Backend b);

struct RunOptions {
    Backend backend = Backend::MicroMacroSplit;
    Thresholds thresholds{};
    Beta4Guard guard{};
    Limiter limiter = Limiter::Minmod;
    int kinetic_order = 2;
    double cfl_safety = 0.7;
    int snapshot_every = 0;     // additionally snapshot every N steps when > 0
    std::string out_dir;        // empty: keep results in memory only
    std::function<void(std::vector<double>&, int)> override_h;  // forces h (tests, limits)
    int max_steps = 2'000'000;
};

/// One output frame: per-cell primitive fields plus the breakdown diagnostics
/// the figures plot.
struct SnapshotRecord {
    double time = 0.0;
    long step = 0;
    std::vector<double> x, rho, u, T, q, h, knudsen, beta4;
    FluxVector totals{};
    double active_fraction = 0.0;
};

struct RunSummary {
    FluxVector initial_totals{}, final_totals{};
    FluxVector boundary_integral{};  // time integral of (flux in at left - flux out at right)
    FluxVector conservation_error{};  // relative balance defect per component
    double min_positivity = 1.0;     // min (E + g_K)/scale over the run (split backend)
    double min_h_positivity = 1.0;   // min (h E + g_K)/scale
    double time_avg_active_fraction = 0.0;
    double max_active_fraction = 0.0;
    double wall_seconds = 0.0;
    long steps = 0;
    long rejected_steps = 0;
};

struct RunResult {
    std::vector<SnapshotRecord> snapshots;
    RunSummary summary;
    CoupledState state;        // final state (moments valid for every backend)
    ReducedDistribution dist;  // final distribution (Kinetic backend only)
};

/// Advance the scenario to t_final with the selected backend, emitting
/// snapshots at the scenario's figure times (and every `snapshot_every`
/// steps when set). Writes CSV files and a manifest when out_dir is set.
RunResult run_scenario(const Scenario& sc, const RunOptions& opt);

void write_snapshot_csv(const std::string& path, const SnapshotRecord& rec);
void write_manifest(const std::string& path, const Scenario& sc, const RunOptions& opt,
                    const RunSummary& summary);

/// Per-column L1 and Linf differences between matching snapshot files of two
/// run directories (used by the compare subcommand).
struct ColumnDiff {
    std::string column;
    double l1 = 0.0, linf = 0.0;
};
std::vector<ColumnDiff> compare_snapshots(const std::string& file_a, const std::string& file_b);

}  // namespace micromac
