"""Python access to the nlslab simulator and diagnostics."""

from ._core import (
    ConfigError,
    DataError,
    DegenerateFitError,
    Error,
    InapplicableError,
    UnavailableError,
    admissible,
    canonical_config,
    classify,
    energy,
    free_propagate,
    list_presets,
    mass,
    preset_config,
    read_manifest,
    run,
    run_id,
    sha256,
    sweep,
    transform,
)

__all__ = [
    "ConfigError",
    "DataError",
    "DegenerateFitError",
    "Error",
    "InapplicableError",
    "UnavailableError",
    "admissible",
    "canonical_config",
    "classify",
    "energy",
    "free_propagate",
    "list_presets",
    "mass",
    "preset_config",
    "read_manifest",
    "run",
    "run_id",
    "sha256",
    "sweep",
    "transform",
]
