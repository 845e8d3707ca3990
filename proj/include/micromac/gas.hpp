#pragma once

namespace micromac {

/// Gas constants and breakdown thresholds shared by all solvers.
struct GasModel {
    double R = 208.24;          // specific gas constant [J/kg/K]
    // Viscosity coefficient in SI units, mu = C_mu * theta^omega [Pa s].
    // The tabulated hydrogen value 1.99e-3 gives mu in micropascal-seconds;
    // kept in pascal-seconds here so that nu = p/mu is consistent with the
    // hard-sphere mean free path implied by sigma_c (~9 mm at 1e-5 kg/m^3,
    // 273 K, versus kilometres with the raw tabulated scale).
    double C_mu = 1.99e-9;
    double omega = 0.81;        // viscosity exponent
    double sigma_c = 2.92e-10;  // molecular diameter [m] (hard-sphere)
    double k_B = 1.380062e-23;  // Boltzmann constant [J/K]
    double gamma = 5.0 / 3.0;   // adiabatic index of the reduced model

    static GasModel hydrogen() { return GasModel{}; }
};

enum class CriterionKind { HeatFluxRatio, LocalKnudsen };

struct Thresholds {
    double beta_thr = 1e-3;   // h = 1 above this
    double beta_star = 1e-4;  // h = 0 below this
    double eps_thr = 0.05;    // local-Knudsen variant
    double eps_star = 0.005;
    CriterionKind criterion_kind = CriterionKind::HeatFluxRatio;
};

}  // namespace micromac
