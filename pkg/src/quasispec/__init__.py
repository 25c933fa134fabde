"""Bound states of the energy-dependent one-photon-exchange quasipotential."""
__version__ = "0.1.0"

from .asymptotics import AsymptoticsReport, Branch, classify
from .errors import DomainError, NoBoundState, NoConvergence, PreconditionError, SolverError
from .momentum import CouplingSpectrum, MomentumDiscretization, coupling_spectrum
from .potential import ModelParams, v_of_r
from .radial import EigenResult, RadialGrid, solve_linear_eigenvalue, solve_self_consistent

__all__ = [
    "AsymptoticsReport",
    "Branch",
    "classify",
    "DomainError",
    "NoBoundState",
    "NoConvergence",
    "PreconditionError",
    "SolverError",
    "CouplingSpectrum",
    "MomentumDiscretization",
    "coupling_spectrum",
    "ModelParams",
    "v_of_r",
    "EigenResult",
    "RadialGrid",
    "solve_linear_eigenvalue",
    "solve_self_consistent",
]
