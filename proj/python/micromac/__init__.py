"""1D multiscale kinetic/fluid solver bindings."""

from ._core import (
    NonPhysicalStateError,
    UnknownScenarioError,
    compare_snapshots,
    maxwellian,
    riemann,
    run,
    scenario_names,
)

__all__ = [
    "NonPhysicalStateError",
    "UnknownScenarioError",
    "compare_snapshots",
    "maxwellian",
    "riemann",
    "run",
    "scenario_names",
]
