"""Fock-space deep zero problems, Weyl translates and roots-of-unity lattices."""
from .errors import (AliasingNotConverged, ConductorMismatch, EngineError, ExactnessRequired,
                     InputError, InsufficientGridError, NeedsLargerTruncation, TailGuardError,
                     VerificationFailure)
from .fock import FockVector, TailReport, basis_vector, evaluate, inner, norm, tail_report

__all__ = [
    "AliasingNotConverged", "ConductorMismatch", "EngineError", "ExactnessRequired",
    "FockVector", "InputError", "InsufficientGridError", "NeedsLargerTruncation",
    "TailGuardError", "TailReport", "VerificationFailure", "basis_vector", "evaluate",
    "inner", "norm", "tail_report",
]
