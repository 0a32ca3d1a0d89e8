"""Python bindings of the qelast C++ library."""

from ._qelast import (
    EnergyModel,
    ExperimentConfig,
    QelastError,
    analytic_solution,
    blockenc_apply,
    build_model,
    fit_state,
    realize_vector,
    recipe,
    report_resources,
    run_experiment,
    unit_state,
)

__all__ = [
    "EnergyModel",
    "ExperimentConfig",
    "QelastError",
    "analytic_solution",
    "blockenc_apply",
    "build_model",
    "fit_state",
    "realize_vector",
    "recipe",
    "report_resources",
    "run_experiment",
    "unit_state",
]
