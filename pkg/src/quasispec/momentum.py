"""Momentum-space bound states by partial-wave Nystrom discretisation.

The equation::

    (p^2/m + E) psi(p) = alpha/(2 pi^2) int d^3q psi(q) / (x (E_p + x)),
    x = |p - q|,

is linear in alpha, so at fixed energies it is an eigenvalue problem for
the coupling. In partial wave l the kernel is ``K_l(p, q) = 2 pi q^2 A_l(p, q)``
with::

    A_l(p, q) = int_{-1}^{1} dz P_l(z) / (x (E_p + x))
              = 1/(pq) int_{|p-q|}^{p+q} dx P_l(z(x)) / (E_p + x).

The x-form has a smooth integrand; when the pole at ``x = -E_p`` is close
to the interval its log is split off analytically. ``E_p = 0`` is the
Coulomb kernel ``1/x^2``, log-singular at ``p = q``.

The singular/peaked diagonal is handled by subtraction: with a reference
function ``u`` (hydrogen-like momentum profile)::

    int K psi ~ sum_j w_j K_ij [psi_j - psi_i u_j/u_i] + psi_i/u_i int K(p_i, q) u(q) dq

where the last integral is done on panels graded geometrically towards
``q = p_i``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial.legendre import leggauss, legval
from scipy.linalg import eigh
from scipy.optimize import brentq

from .errors import DomainError, NoBoundState, NoConvergence
from .potential import ModelParams

__all__ = [
    "MomentumDiscretization",
    "CouplingSpectrum",
    "angular_integral",
    "partial_wave_kernel",
    "coupling_spectrum",
    "solve_self_consistent_momentum",
    "MAX_L",
]

MAX_L = 3
_GL_DIRECT = leggauss(16)
_GL_POLY = leggauss(8)
_GL_PANEL = leggauss(16)
_GRADING_LEVELS = 45


@dataclass(frozen=True)
class MomentumDiscretization:
    """Gauss-Legendre nodes mapped to (0, inf) by ``p = p0 (1+t)/(1-t)``."""

    nodes: np.ndarray
    weights: np.ndarray
    l: int
    scale: float
    mapping: str = "p0*(1+t)/(1-t)"

    def __post_init__(self):
        if self.nodes.size < 40:
            raise DomainError("at least 40 momentum nodes are required")
        if np.any(np.diff(self.nodes) <= 0) or np.any(self.nodes <= 0):
            raise DomainError("nodes must be positive and strictly increasing")
        if np.any(self.weights <= 0):
            raise DomainError("weights must be positive")
        if not 0 <= self.l <= MAX_L:
            raise DomainError(f"partial waves 0..{MAX_L} only")

    @classmethod
    def build(cls, n_nodes: int, scale: float, l: int = 0) -> "MomentumDiscretization":
        if not scale > 0:
            raise DomainError("scale must be > 0")
        t, wt = leggauss(n_nodes)
        p = scale * (1.0 + t) / (1.0 - t)
        w = wt * 2.0 * scale / (1.0 - t) ** 2
        return cls(nodes=p, weights=w, l=l, scale=scale)

    @classmethod
    def default(cls, params: ModelParams, E: float, n_nodes: int = 200) -> "MomentumDiscretization":
        scale = max(math.sqrt(params.mass * E), params.mass * params.alpha)
        return cls.build(n_nodes, scale, params.l)


@dataclass
class CouplingSpectrum:
    E_param: float
    trial_binding: float
    l: int
    eigen_couplings: list = field(default_factory=list)
    n_nodes: int = 0

    def to_dict(self) -> dict:
        return {
            "E_param": self.E_param,
            "trial_binding": self.trial_binding,
            "l": self.l,
            "eigen_couplings": list(self.eigen_couplings),
            "n_nodes": self.n_nodes,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "CouplingSpectrum":
        return cls(**d)


def _legendre_of(l: int, z):
    c = np.zeros(l + 1)
    c[l] = 1.0
    return legval(z, c)


def angular_integral(E, p, q, l: int):
    """A_l(p, q) = int_{-1}^{1} P_l(z) dz / (x (E + x)); broadcasts over p, q."""
    E = float(E)
    if E < 0:
        raise DomainError("E_param must be >= 0")
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    if np.any(p <= 0) or np.any(q <= 0):
        raise DomainError("momenta must be > 0")
    p, q = np.broadcast_arrays(p, q)
    lo = np.abs(p - q)
    hi = p + q
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pq2 = 2.0 * p * q
    s2 = p * p + q * q

    out = np.empty(p.shape)
    direct = (E + lo) >= (hi - lo)
    if np.any(direct):
        t, w = _GL_DIRECT
        x = mid[direct][..., None] + half[direct][..., None] * t
        zz = (s2[direct][..., None] - x * x) / pq2[direct][..., None]
        vals = _legendre_of(l, zz) / (E + x)
        out[direct] = half[direct] * np.sum(w * vals, axis=-1)
    near = ~direct
    if np.any(near):
        t, w = _GL_POLY
        x = mid[near][..., None] + half[near][..., None] * t
        zz = (s2[near][..., None] - x * x) / pq2[near][..., None]
        z_pole = (s2[near] - E * E) / pq2[near]
        p_pole = _legendre_of(l, z_pole)
        quotient = (_legendre_of(l, zz) - p_pole[..., None]) / (x + E)
        poly = half[near] * np.sum(w * quotient, axis=-1)
        with np.errstate(divide="ignore"):
            logpart = p_pole * np.log((E + hi[near]) / (E + lo[near]))
        out[near] = poly + logpart
    return out / (p * q)


def partial_wave_kernel(E_param: float, p, q, l: int):
    """K_l(p, q) = 2 pi q^2 A_l(p, q)."""
    q = np.asarray(q, dtype=float)
    return 2.0 * math.pi * q * q * angular_integral(E_param, p, q, l)


def _reference(q, l, beta):
    return q**l / (q * q + beta * beta) ** (l + 2)


def _graded_panels(p_i: float, q_far: float) -> tuple[np.ndarray, np.ndarray]:
    """Panels on (0, q_far) graded geometrically towards p_i from both sides.

    The excluded sliver ``p_i (1 +- 2^-levels)`` contributes below round-off.
    """
    k = np.arange(_GRADING_LEVELS + 1)
    left = p_i * (1.0 - 2.0 ** -k)
    right = p_i * (1.0 + 2.0 ** -k[::-1])
    n_tail = max(1, int(math.ceil(math.log2(q_far / (2.0 * p_i)))))
    tail = 2.0 * p_i * 2.0 ** np.arange(0, n_tail + 1)
    a = np.concatenate([left[:-1], right[:-1], tail[:-1]])
    b = np.concatenate([left[1:], right[1:], tail[1:]])
    return a, b


def _reference_integrals(E_param, p, l, beta):
    """int_0^inf K_l(p_i, q) u(q) dq for every node p_i."""
    t, w = _GL_PANEL
    out = np.empty(p.shape)
    q_far_base = 1e7 * max(beta, float(p.max()))
    for i, p_i in enumerate(p):
        a, b = _graded_panels(p_i, q_far_base)
        half = 0.5 * (b - a)
        q = (0.5 * (a + b))[:, None] + half[:, None] * t
        q = q.ravel()
        keep = q != p_i
        vals = np.zeros_like(q)
        vals[keep] = partial_wave_kernel(E_param, p_i, q[keep], l) * _reference(q[keep], l, beta)
        out[i] = np.sum((half[:, None] * w).ravel() * vals)
    return out


def _symmetric_operator(E_param, trial_binding, disc, mass, beta=None):
    p, w, l = disc.nodes, disc.weights, disc.l
    if beta is None:
        beta = math.sqrt(mass * trial_binding) if trial_binding > 0 else disc.scale
    P, Qm = np.meshgrid(p, p, indexing="ij")
    off = ~np.eye(p.size, dtype=bool)
    A = np.zeros((p.size, p.size))
    A[off] = angular_integral(E_param, P[off], Qm[off], l)
    S = 2.0 * math.pi * A  # symmetric
    wq2 = w * p * p
    u = _reference(p, l, beta)
    integrals = _reference_integrals(E_param, p, l, beta)
    diag = (integrals - S @ (wq2 * u)) / u
    G = S + np.diag(diag / wq2)
    scale = np.sqrt(wq2 / (p * p / mass + trial_binding))
    return (scale[:, None] * G * scale[None, :]) / (2.0 * math.pi**2)


def coupling_spectrum(E_param: float, trial_binding: float, disc: MomentumDiscretization,
                      mass: float = 1.0, n_keep: int = 8) -> CouplingSpectrum:
    """Couplings alpha_n at which a bound state with the given energies exists.

    ``trial_binding`` is the energy on the kinetic side, ``E_param`` the one
    inside the kernel; they coincide for physical states.
    """
    if E_param < 0:
        raise DomainError("E_param must be >= 0")
    if not trial_binding > 0:
        raise DomainError("trial_binding must be > 0")
    H = _symmetric_operator(E_param, trial_binding, disc, mass)
    if not np.all(np.isfinite(H)):
        raise NoConvergence("non-finite entries in the Nystrom matrix")
    lam = eigh(H, eigvals_only=True)
    positive = np.sort(lam[lam > 0])[::-1]
    couplings = (1.0 / positive[:n_keep]).tolist()
    return CouplingSpectrum(E_param=float(E_param), trial_binding=float(trial_binding),
                            l=disc.l, eigen_couplings=couplings, n_nodes=int(disc.nodes.size))


def solve_self_consistent_momentum(params: ModelParams, n_radial: int = 0, n_nodes: int = 200,
                                   bracket: tuple[float, float] | None = None,
                                   rtol: float = 1e-12) -> float:
    """Binding energy E with alpha_{n_radial}(E; E_param = E) = alpha."""
    c = params.coulomb_binding(n_radial + params.l + 1)

    def mismatch(E):
        disc = MomentumDiscretization.default(params, E, n_nodes)
        spec = coupling_spectrum(E, E, disc, params.mass, n_keep=n_radial + 1)
        if len(spec.eigen_couplings) <= n_radial:
            return math.inf
        return spec.eigen_couplings[n_radial] - params.alpha

    lo, hi = bracket if bracket is not None else (0.05 * c, 1.5 * c)
    f_lo, f_hi = mismatch(lo), mismatch(hi)
    if not (f_lo < 0 < f_hi):
        raise NoBoundState(f"alpha_n(E) - alpha does not change sign on [{lo}, {hi}]")
    try:
        return brentq(mismatch, lo, hi, xtol=1e-15 * hi, rtol=rtol)
    except RuntimeError as exc:
        raise NoConvergence(str(exc)) from exc
