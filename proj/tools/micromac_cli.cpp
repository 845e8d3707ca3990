#include <cstdio>
#include <filesystem>
#include <iostream>
#include <vector>

#include "CLI11.hpp"
#include "micromac/harness.hpp"
#include "micromac/riemann.hpp"

namespace {

int cmd_run(const std::string& scenario_name, const std::string& backend_name,
            const std::string& criterion, int nx, int nv, double beta_thr, double beta_star,
            double guard_delta, double cfl, int order, const std::string& out_dir,
            int snapshot_every) {
    micromac::Scenario sc = micromac::build_scenario(scenario_name, nx, nv);
    micromac::RunOptions opt;
    opt.backend = micromac::backend_from_string(backend_name);
    opt.thresholds.criterion_kind = criterion == "knudsen"
                                        ? micromac::CriterionKind::LocalKnudsen
                                        : micromac::CriterionKind::HeatFluxRatio;
    opt.thresholds.beta_thr = beta_thr;
    opt.thresholds.beta_star = beta_star;
    opt.guard.delta = guard_delta;
    opt.cfl_safety = cfl;
    opt.kinetic_order = order;
    opt.out_dir = out_dir;
    opt.snapshot_every = snapshot_every;

    const micromac::RunResult res = micromac::run_scenario(sc, opt);
    const micromac::RunSummary& s = res.summary;
    std::printf("scenario %s backend %s: %ld steps (%ld rejected), %.3f s wall\n",
                sc.name.c_str(), backend_name.c_str(), s.steps, s.rejected_steps,
                s.wall_seconds);
    std::printf("conservation error (mass, momentum, energy): %.3e %.3e %.3e\n",
                s.conservation_error[0], s.conservation_error[1], s.conservation_error[2]);
    std::printf("active fraction: time-avg %.4f, max %.4f\n", s.time_avg_active_fraction,
                s.max_active_fraction);
    std::printf("positivity monitor: min(E+g)/scale %.3e, min(hE+g)/scale %.3e\n",
                s.min_positivity, s.min_h_positivity);
    if (!out_dir.empty()) std::printf("wrote %zu snapshots to %s\n", res.snapshots.size(), out_dir.c_str());
    return 0;
}

int cmd_compare(const std::string& dir_a, const std::string& dir_b) {
    namespace fs = std::filesystem;
    std::vector<std::string> names;
    for (const auto& e : fs::directory_iterator(dir_a)) {
        const std::string n = e.path().filename().string();
        if (n.rfind("snapshot_", 0) == 0 && fs::exists(fs::path(dir_b) / n)) names.push_back(n);
    }
    std::sort(names.begin(), names.end());
    if (names.empty()) {
        std::cerr << "no matching snapshot files\n";
        return 1;
    }
    for (const auto& n : names) {
        std::printf("%s\n", n.c_str());
        const auto diffs = micromac::compare_snapshots((fs::path(dir_a) / n).string(),
                                                       (fs::path(dir_b) / n).string());
        std::printf("  %-8s %12s %12s\n", "column", "L1", "Linf");
        for (const auto& d : diffs)
            std::printf("  %-8s %12.5e %12.5e\n", d.column.c_str(), d.l1, d.linf);
    }
    return 0;
}

int cmd_riemann(const std::vector<double>& left, const std::vector<double>& right, double gamma,
                double t, int n, double x_min, double x_max) {
    const micromac::Primitive L{left[0], left[1], left[2]};
    const micromac::Primitive R{right[0], right[1], right[2]};
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = x_min + (i + 0.5) * (x_max - x_min) / n;
    const auto prof = micromac::riemann_profile(L, R, gamma, t, x);
    std::printf("x,rho,u,theta\n");
    for (int i = 0; i < n; ++i)
        std::printf("%.17g,%.17g,%.17g,%.17g\n", x[i], prof[i].rho, prof[i].u, prof[i].theta);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"1D multiscale kinetic/fluid solver"};
    app.require_subcommand(1);

    std::string scenario = "sod1", backend = "micromac-split", criterion = "beta4", out_dir;
    int nx = 300, nv = 40, snapshot_every = 0;
    micromac::RunOptions defaults;
    double beta_thr = defaults.thresholds.beta_thr, beta_star = defaults.thresholds.beta_star;
    double guard_delta = defaults.guard.delta, cfl = defaults.cfl_safety;
    int order = defaults.kinetic_order;

    auto* run = app.add_subcommand("run", "advance a scenario and write snapshots");
    run->add_option("--scenario", scenario, "shock1|shock2|sod1|sod2|blast1|blast2");
    run->add_option("--backend", backend, "euler|kinetic|micromac-split|micromac-nonsplit");
    run->add_option("--criterion", criterion)->check(CLI::IsMember({"beta4", "knudsen"}));
    run->add_option("--nx", nx, "space cells")->check(CLI::PositiveNumber);
    run->add_option("--nv", nv, "velocity nodes")->check(CLI::PositiveNumber);
    run->add_option("--beta-thr", beta_thr, "upper criterion threshold");
    run->add_option("--beta-star", beta_star, "lower criterion threshold");
    run->add_option("--guard-delta", guard_delta, "heat-flux denominator floor");
    run->add_option("--cfl", cfl, "CFL safety factor")->check(CLI::PositiveNumber);
    run->add_option("--order", order, "kinetic flux order")->check(CLI::IsMember({1, 2}));
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--snapshot-every", snapshot_every, "extra snapshot cadence in steps");

    std::string dir_a, dir_b;
    auto* cmp = app.add_subcommand("compare", "L1/Linf table between two run directories");
    cmp->add_option("dir_a", dir_a)->required();
    cmp->add_option("dir_b", dir_b)->required();

    std::vector<double> left{1.0, 0.0, 1.0}, right{0.125, 0.0, 0.8};
    double gamma = 5.0 / 3.0, t = 0.2, x_min = -0.5, x_max = 0.5;
    int n = 200;
    auto* rie = app.add_subcommand("riemann", "exact Riemann solution sampled on a grid");
    rie->add_option("--left", left, "rho u theta")->expected(3);
    rie->add_option("--right", right, "rho u theta")->expected(3);
    rie->add_option("--gamma", gamma);
    rie->add_option("--time", t);
    rie->add_option("--n", n);
    rie->add_option("--x-min", x_min);
    rie->add_option("--x-max", x_max);

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(scenario, backend, criterion, nx, nv, beta_thr, beta_star,
                           guard_delta, cfl, order, out_dir, snapshot_every);
        if (cmp->parsed()) return cmd_compare(dir_a, dir_b);
        if (rie->parsed()) return cmd_riemann(left, right, gamma, t, n, x_min, x_max);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
