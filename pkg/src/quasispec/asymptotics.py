"""Large-distance analysis of the radial equation.

For ``E r >> 1`` the potential falls off as ``-(2 alpha/pi)/(E r^2)`` and
the radial equation becomes ``chi'' = [kappa^2 - gamma(E)/r^2] chi`` with::

    kappa^2 = m E,    gamma(E) = 2 alpha m / (pi E) - l(l+1)

whose decaying solution is ``sqrt(r) K_nu(kappa r)``, ``nu^2 = 1/4 - gamma``.
For ``gamma > 1/4`` the order is imaginary and ``K_{i mu}`` oscillates for
``kappa r < mu``; such oscillations only matter if that region overlaps the
region ``E r >> 1`` where the form is valid.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import DomainError, PreconditionError
from .potential import ModelParams
from .specfun import bessel_k_imag_order, bessel_k_real_order

__all__ = [
    "Branch",
    "AsymptoticsReport",
    "R_CUT",
    "gamma_of",
    "kappa_of",
    "alpha_threshold_18",
    "classify",
    "critical_alpha_eq19",
    "asymptotic_chi",
]

# "E r >> 1" taken as E r >= R_CUT
R_CUT = 10.0


class Branch(str, Enum):
    A_finite = "A_finite"
    B_infinite = "B_infinite"


@dataclass(frozen=True)
class AsymptoticsReport:
    E: float
    gamma: float
    kappa: float
    nu_squared: float
    branch: Branch
    alpha_threshold_18: float
    eq19_satisfiable: bool
    r_star: float | None
    r_cut: float = R_CUT

    def to_dict(self) -> dict:
        d = asdict(self)
        d["branch"] = self.branch.value
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "AsymptoticsReport":
        d = dict(d)
        d["branch"] = Branch(d["branch"])
        return cls(**d)


def _check_E(E):
    if not E > 0:
        raise DomainError(f"E must be > 0, got {E}")


def gamma_of(params: ModelParams, E: float) -> float:
    _check_E(E)
    return 2.0 * params.alpha * params.mass / (math.pi * E) - params.l * (params.l + 1)


def kappa_of(params: ModelParams, E: float) -> float:
    _check_E(E)
    return math.sqrt(params.mass * E)


def alpha_threshold_18(params: ModelParams, E: float) -> float:
    """Coupling above which gamma(E) > 1/4."""
    _check_E(E)
    l, m = params.l, params.mass
    return math.pi * E / (8.0 * m) + l * (l + 1) * math.pi * E / (2.0 * m)


def critical_alpha_eq19(params: ModelParams, E: float, r: float) -> float:
    """Smallest coupling for which an oscillation of K_{i mu}(kappa r) can sit at ``r``.

    ``pi E/(2m) [1/4 + l(l+1)] + (pi/2)(E r)^2``
    """
    _check_E(E)
    if not r > 0:
        raise DomainError(f"r must be > 0, got {r}")
    l, m = params.l, params.mass
    return math.pi * E / (2.0 * m) * (0.25 + l * (l + 1)) + 0.5 * math.pi * (E * r) ** 2


def classify(params: ModelParams, E: float, r_cut: float = R_CUT) -> AsymptoticsReport:
    """Branch of the asymptotic solution and whether oscillations are reachable.

    ``eq19_satisfiable`` is True when the oscillation zone ``r < r_star``
    of the decaying solution reaches into the validity zone ``E r >= r_cut``.
    """
    gamma = gamma_of(params, E)
    kappa = kappa_of(params, E)
    nu2 = 0.25 - gamma
    if gamma > 0.25:
        branch = Branch.B_infinite
        r_star = math.sqrt(gamma - 0.25) / kappa
        satisfiable = r_star * E > r_cut
    else:
        branch = Branch.A_finite
        r_star = None
        satisfiable = False
    return AsymptoticsReport(
        E=E,
        gamma=gamma,
        kappa=kappa,
        nu_squared=nu2,
        branch=branch,
        alpha_threshold_18=alpha_threshold_18(params, E),
        eq19_satisfiable=satisfiable,
        r_star=r_star,
        r_cut=r_cut,
    )


def asymptotic_chi(params: ModelParams, E: float, r: float, r_cut: float = R_CUT) -> float:
    """``sqrt(r) K_nu(kappa r)`` with ``nu = sqrt(1/4 - gamma(E))`` for ``E r >= r_cut``."""
    _check_E(E)
    if not E * r >= r_cut:
        raise PreconditionError(f"asymptotic form needs E*r >= {r_cut}, got {E * r}")
    nu2 = 0.25 - gamma_of(params, E)
    x = kappa_of(params, E) * r
    if nu2 >= 0:
        k = bessel_k_real_order(math.sqrt(nu2), x)
    else:
        k = bessel_k_imag_order(math.sqrt(-nu2), x)
    return math.sqrt(r) * k
