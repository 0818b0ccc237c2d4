"""Quantum state diffusion of a spin under continuous S_z measurement."""

from ._core import (
    __version__,
    analyze,
    kraus_completeness_residual,
    lindblad,
    parse_config,
    run_ensemble,
    simulate,
    validate,
)

__all__ = [
    "__version__",
    "analyze",
    "kraus_completeness_residual",
    "lindblad",
    "parse_config",
    "run_ensemble",
    "simulate",
    "validate",
]
