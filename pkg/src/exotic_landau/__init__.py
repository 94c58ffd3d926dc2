"""Exotic Landau model on the noncommutative plane.

Classical dynamics, the truncated Hilbert-Schmidt Fock representation,
scalar, vector and quaternionic coherent states, path-integral kernels and
the Wigner transform, each with numerical checks of its closed forms.
"""
from . import (
    classical,
    coherent,
    fock,
    kernels,
    model,
    numerics,
    propagator,
    quaternion,
    vcs,
    wigner,
)
from .exceptions import (
    CriticalPointError,
    NumericError,
    ParameterError,
    SingularCompositionError,
    TruncationError,
)
from .model import DerivedParams, ModelParams, derive

__version__ = "0.1.0"

__all__ = [
    "classical", "coherent", "fock", "kernels", "model", "numerics", "propagator",
    "quaternion", "vcs", "wigner",
    "CriticalPointError", "NumericError", "ParameterError", "SingularCompositionError", "TruncationError",
    "DerivedParams", "ModelParams", "derive",
]
