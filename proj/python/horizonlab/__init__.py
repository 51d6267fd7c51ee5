"""Horizons of discretized two-dimensional spacetimes."""

from ._core import (
    HorizonError,
    Model,
    ParamError,
    PrecondError,
    build,
    counterexample_search,
    load,
    run_cli,
    scenario_names,
    validate,
)

__all__ = [
    "HorizonError",
    "Model",
    "ParamError",
    "PrecondError",
    "build",
    "counterexample_search",
    "load",
    "run_cli",
    "scenario_names",
    "validate",
]
