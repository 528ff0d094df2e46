"""Isoholonomic bounds and tight holonomic gate synthesis."""

from ._core import (
    InsufficientComplementError,
    InvalidInputError,
    NotClosedError,
    NotHermitianError,
    NotUnitaryError,
    Plan,
    bloch_trajectory,
    bound,
    falsify,
    gate,
    phases_of_gate,
    projective_bound,
    state_bound,
    synthesize,
    verify,
    __version__,
)

__all__ = [
    "InsufficientComplementError",
    "InvalidInputError",
    "NotClosedError",
    "NotHermitianError",
    "NotUnitaryError",
    "Plan",
    "bloch_trajectory",
    "bound",
    "falsify",
    "gate",
    "phases_of_gate",
    "projective_bound",
    "state_bound",
    "synthesize",
    "verify",
    "__version__",
]
