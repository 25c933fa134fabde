"""Coordinate-space energy-dependent quasipotential.

Natural units (hbar = c = 1), lengths in 1/m and energies in m. For binding
energy ``E > 0``::

    V_E(r) = -s (2 alpha / pi) f(E r) / r

with ``s`` the charge sign and ``f`` the kernel from :mod:`quasispec.specfun`.
``E = 0`` is a separate branch returning the Coulomb form ``-s alpha / r``;
it is never reached as a limit of the ``E > 0`` expression.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
import numpy as np

from .errors import DomainError, PreconditionError
from .specfun import EULER_GAMMA, f_kernel

__all__ = [
    "ModelParams",
    "PotentialSample",
    "v_of_r",
    "v_coulomb",
    "v_large_r_asymptote",
    "small_r_expansion",
    "tabulate",
    "SMALL_R_LIMIT",
]

SMALL_R_LIMIT = 0.1


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs of the two-fermion problem."""

    alpha: float
    mass: float = 1.0
    l: int = 0
    charge_sign: int = 1

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be > 0, got {self.alpha}")
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass}")
        if int(self.l) != self.l or self.l < 0:
            raise DomainError(f"l must be a non-negative integer, got {self.l}")
        if self.charge_sign not in (1, -1):
            raise DomainError(f"charge_sign must be +1 or -1, got {self.charge_sign}")
        object.__setattr__(self, "l", int(self.l))

    def coulomb_binding(self, principal: int) -> float:
        """Binding energy m alpha^2 / (4 n^2) of the pure Coulomb problem (reduced mass m/2)."""
        return self.mass * self.alpha**2 / (4.0 * principal**2)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "ModelParams":
        return cls(**d)


@dataclass(frozen=True)
class PotentialSample:
    r: float
    v: float


def _check_energy(E):
    if not E >= 0:
        raise DomainError(f"binding energy must be >= 0, got {E}")


def v_of_r(params: ModelParams, E: float, r):
    """Potential V_E(r); accepts scalar or array ``r``."""
    _check_energy(E)
    r_arr = np.asarray(r, dtype=float)
    if np.any(~(r_arr > 0)):
        raise DomainError("v_of_r requires r > 0")
    if E == 0:
        v = -params.alpha / r_arr
    else:
        v = -(2.0 * params.alpha / math.pi) * f_kernel(E * r_arr) / r_arr
    v = params.charge_sign * v
    return float(v) if np.ndim(v) == 0 else v


def v_coulomb(params: ModelParams, r):
    r_arr = np.asarray(r, dtype=float)
    v = -params.charge_sign * params.alpha / r_arr
    return float(v) if np.ndim(v) == 0 else v


def v_large_r_asymptote(params: ModelParams, E: float, r):
    """Leading large-distance form ``-s (2 alpha / pi) / (E r^2)`` (valid for E r >> 1)."""
    if not E > 0:
        raise DomainError("large-r asymptote needs E > 0")
    r_arr = np.asarray(r, dtype=float)
    v = -params.charge_sign * (2.0 * params.alpha / math.pi) / (E * r_arr**2)
    return float(v) if np.ndim(v) == 0 else v


def small_r_expansion(params: ModelParams, E: float, r: float) -> float:
    """Four-term expansion of V_E(r) for E r < 0.1.

    ``-s (alpha/r) [1 + (2/pi) x ln x + (2/pi)(gamma - 1) x - x^2/2]``
    with ``x = E r``. The ``x^2`` coefficient is ``(2/pi)(pi/4) = 1/2``,
    which follows from ``f(0) = pi/2`` and the ``-(pi/4) x^2`` term of f.
    """
    _check_energy(E)
    if not r > 0:
        raise DomainError("small_r_expansion requires r > 0")
    x = E * r
    if x >= SMALL_R_LIMIT:
        raise PreconditionError(f"small_r_expansion needs E*r < {SMALL_R_LIMIT}, got {x}")
    if x == 0:
        bracket = 1.0
    else:
        bracket = 1.0 + (2.0 / math.pi) * (x * math.log(x) + (EULER_GAMMA - 1.0) * x) - 0.5 * x * x
    return -params.charge_sign * params.alpha / r * bracket


def tabulate(params: ModelParams, E: float, grid) -> list[PotentialSample]:
    """Sample V_E on a RadialGrid or on explicit radii (strictly increasing, positive)."""
    r = np.asarray(getattr(grid, "r", grid), dtype=float)
    if r.ndim != 1:
        raise DomainError("grid must be one-dimensional")
    if r.size > 1 and np.any(np.diff(r) <= 0):
        raise DomainError("grid must be strictly increasing")
    v = np.atleast_1d(v_of_r(params, E, r))
    return [PotentialSample(float(ri), float(vi)) for ri, vi in zip(r, v)]
