#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "micromac/harness.hpp"
#include "micromac/maxwellian.hpp"
#include "micromac/riemann.hpp"

namespace py = pybind11;
using namespace micromac;

namespace {

py::dict summary_dict(const RunSummary& s) {
    py::dict d;
    d["steps"] = s.steps;
    d["rejected_steps"] = s.rejected_steps;
    d["wall_seconds"] = s.wall_seconds;
    d["initial_totals"] = s.initial_totals;
    d["final_totals"] = s.final_totals;
    d["conservation_error"] = s.conservation_error;
    d["min_positivity"] = s.min_positivity;
    d["min_h_positivity"] = s.min_h_positivity;
    d["time_avg_active_fraction"] = s.time_avg_active_fraction;
    d["max_active_fraction"] = s.max_active_fraction;
    return d;
}

py::dict snapshot_dict(const SnapshotRecord& r) {
    py::dict d;
    d["time"] = r.time;
    d["step"] = r.step;
    d["x"] = r.x;
    d["rho"] = r.rho;
    d["u"] = r.u;
    d["T"] = r.T;
    d["q"] = r.q;
    d["h"] = r.h;
    d["kn"] = r.knudsen;
    d["beta4"] = r.beta4;
    d["active_fraction"] = r.active_fraction;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "1D multiscale kinetic/fluid solver core";

    py::register_exception<NonPhysicalState>(m, "NonPhysicalStateError");
    py::register_exception<VacuumError>(m, "VacuumErrorPy");
    py::register_exception<UnknownScenario>(m, "UnknownScenarioError");

    m.def("scenario_names", &scenario_names);

    m.def(
        "run",
        [](const std::string& scenario, const std::string& backend, const std::string& criterion,
           int nx, int nv, double beta_thr, double beta_star, const std::string& out_dir,
           int snapshot_every) {
            Scenario sc = build_scenario(scenario, nx, nv);
            RunOptions opt;
            opt.backend = backend_from_string(backend);
            opt.thresholds.criterion_kind = criterion == "knudsen"
                                                ? CriterionKind::LocalKnudsen
                                                : CriterionKind::HeatFluxRatio;
            opt.thresholds.beta_thr = beta_thr;
            opt.thresholds.beta_star = beta_star;
            opt.out_dir = out_dir;
            opt.snapshot_every = snapshot_every;
            const RunResult res = run_scenario(sc, opt);
            py::dict d;
            d["summary"] = summary_dict(res.summary);
            py::list snaps;
            for (const auto& r : res.snapshots) snaps.append(snapshot_dict(r));
            d["snapshots"] = snaps;
            return d;
        },
        py::arg("scenario"), py::arg("backend") = "micromac-split",
        py::arg("criterion") = "beta4", py::arg("nx") = 300, py::arg("nv") = 40,
        py::arg("beta_thr") = Thresholds{}.beta_thr, py::arg("beta_star") = Thresholds{}.beta_star,
        py::arg("out_dir") = "", py::arg("snapshot_every") = 0,
        "Advance a named scenario and return snapshots plus the run summary.");

    m.def(
        "maxwellian",
        [](double rho, double u, double theta, double v_max, int n_v) {
            const VelocityGrid vg = VelocityGrid::symmetric_bounds(v_max, n_v);
            const DiscreteMaxwellian eq =
                discrete_maxwellian(assemble_moments(rho, u, theta), vg);
            py::dict d;
            std::vector<double> v(n_v);
            for (int j = 0; j < n_v; ++j) v[j] = vg.node(j);
            d["v"] = v;
            d["F"] = eq.MF;
            d["G"] = eq.MG;
            d["converged"] = eq.converged;
            return d;
        },
        py::arg("rho"), py::arg("u"), py::arg("theta"), py::arg("v_max"), py::arg("n_v"),
        "Discrete equilibrium pair whose grid moments match (rho, rho u, rho e) exactly.");

    m.def(
        "riemann",
        [](std::tuple<double, double, double> left, std::tuple<double, double, double> right,
           double gamma, double t, const std::vector<double>& x) {
            const Primitive L{std::get<0>(left), std::get<1>(left), std::get<2>(left)};
            const Primitive R{std::get<0>(right), std::get<1>(right), std::get<2>(right)};
            const auto prof = riemann_profile(L, R, gamma, t, x);
            std::vector<double> rho, u, theta;
            for (const auto& p : prof) {
                rho.push_back(p.rho);
                u.push_back(p.u);
                theta.push_back(p.theta);
            }
            py::dict d;
            d["rho"] = rho;
            d["u"] = u;
            d["theta"] = theta;
            return d;
        },
        py::arg("left"), py::arg("right"), py::arg("gamma") = 5.0 / 3.0, py::arg("t") = 0.2,
        py::arg("x"), "Exact Riemann solution sampled at positions x for time t.");

    m.def(
        "compare_snapshots",
        [](const std::string& a, const std::string& b) {
            py::dict d;
            for (const auto& c : compare_snapshots(a, b)) d[c.column.c_str()] = py::make_tuple(c.l1, c.linf);
            return d;
        },
        py::arg("file_a"), py::arg("file_b"));
}
