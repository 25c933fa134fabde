"""Radial bound states of the energy-dependent quasipotential.

The radial equation, with reduced mass m/2, is::

    chi''(r) = [ m (V_{E_p}(r) - eps) + l(l+1)/r^2 ] chi(r)

with eigenvalue ``eps < 0`` and binding energy ``-eps``. Freezing the energy
parameter ``E_p`` inside the potential gives a linear Sturm-Liouville
problem; the physical states additionally satisfy ``E_p = -eps``.

Numerics
--------
* Numerov on a logarithmic mesh: ``u = ln r``, ``phi = chi / sqrt(r)``,
  ``phi'' = [r^2 m (V - eps) + (l + 1/2)^2] phi``. A uniform mesh in r is
  also supported.
* Levels are bracketed by node counting of the outward solution
  (Sturm oscillation) and refined by outward/inward matching at the outer
  turning point with the Numerov cusp energy correction.
* The inward solution starts where the WKB decay exponent past the turning
  point reaches ``TAIL_ACTION``; beyond that chi is zero to double precision.
* Self-consistency is a 1-D root find on ``g(E) = eps_n(E) + E``. The
  potential is pointwise increasing in E, so ``eps_n(E)`` and therefore
  ``g`` are increasing and each node count has at most one root.
"""
from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field, replace

import numpy as np
from scipy.optimize import brentq

from . import _numerov
from .errors import DomainError, NoBoundState, NoConvergence
from .potential import ModelParams, v_of_r

__all__ = [
    "RadialGrid",
    "EigenResult",
    "OutwardSolution",
    "SelfConsistencyReport",
    "integrate_outward",
    "count_nodes",
    "solve_linear_eigenvalue",
    "solve_self_consistent",
    "scan_extra_levels",
    "classify_level",
    "COULOMB_LIKE_TOL",
]

log = logging.getLogger(__name__)

TAIL_ACTION = 200.0
COULOMB_LIKE_TOL = 0.5
_MAX_EXTENSIONS = 30
_MAX_MISSING_EXTENSIONS = 6
_R_MAX_CAP = 1e16


@dataclass(frozen=True)
class RadialGrid:
    r_min: float
    r_max: float
    n_points: int = 20000
    spacing: str = "logarithmic"

    def __post_init__(self):
        if not self.r_min > 0:
            raise DomainError("r_min must be > 0")
        if not self.r_max > self.r_min:
            raise DomainError("r_max must exceed r_min")
        if self.n_points < 100:
            raise DomainError("n_points must be >= 100")
        if self.spacing not in ("uniform", "logarithmic"):
            raise DomainError(f"unknown spacing {self.spacing!r}")
        object.__setattr__(self, "n_points", int(self.n_points))

    @property
    def step(self) -> float:
        """Mesh step in the integration variable (ln r or r)."""
        if self.spacing == "logarithmic":
            return math.log(self.r_max / self.r_min) / (self.n_points - 1)
        return (self.r_max - self.r_min) / (self.n_points - 1)

    @property
    def r(self) -> np.ndarray:
        i = np.arange(self.n_points)
        if self.spacing == "logarithmic":
            return self.r_min * np.exp(i * self.step)
        return self.r_min + i * self.step

    def extended(self, factor: float = 2.0) -> "RadialGrid":
        """Same step, larger r_max."""
        if self.spacing == "logarithmic":
            extra = int(math.ceil(math.log(factor) / self.step))
            return replace(self, r_max=self.r_min * math.exp((self.n_points - 1 + extra) * self.step),
                           n_points=self.n_points + extra)
        new_max = self.r_min + (self.r_max - self.r_min) * factor
        extra = int(math.ceil((new_max - self.r_max) / self.step))
        return replace(self, r_max=self.r_max + extra * self.step, n_points=self.n_points + extra)

    @classmethod
    def for_coupling(cls, params: ModelParams, n_radial: int = 0, e_param: float = 0.0,
                     n_points: int = 20000, binding: float | None = None) -> "RadialGrid":
        """Default log mesh for level ``n_radial``.

        Reaches both the decay length of the state (``20/kappa`` and at
        least ``60`` Coulomb decay lengths) and the ``E r >> 1`` region
        (``20/E``) of the potential.
        """
        m, a = params.mass, params.alpha
        principal = n_radial + params.l + 1
        if binding is None:
            binding = params.coulomb_binding(principal)
        kappa = math.sqrt(m * binding)
        r_max = max(20.0 / kappa, 120.0 * principal / (m * a))
        if e_param > 0:
            r_max = max(r_max, 20.0 / e_param)
        return cls(r_min=1e-5 / (m * a), r_max=r_max, n_points=n_points)

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "RadialGrid":
        return cls(**d)


@dataclass
class EigenResult:
    """A bound state of the radial equation.

    ``binding_energy`` is ``-eps``; ``e_param`` is the energy frozen into the
    potential (equal to the binding energy for a self-consistent state).
    ``chi`` is normalised with the trapezoid rule on ``r``.
    """

    binding_energy: float
    node_count: int
    r: np.ndarray
    chi: np.ndarray
    norm: float
    converged: bool
    iterations: int
    residual: float
    e_param: float
    l: int
    alpha: float
    mass: float = 1.0
    grid: RadialGrid | None = None
    classification: str | None = None

    @property
    def energy(self) -> float:
        return -self.binding_energy

    @property
    def binding_over_m_alpha2(self) -> float:
        return self.binding_energy / (self.mass * self.alpha**2)

    def to_dict(self, wavefunction: bool = True) -> dict:
        d = {
            "binding_energy": self.binding_energy,
            "binding_energy_over_m_alpha2": self.binding_over_m_alpha2,
            "node_count": self.node_count,
            "norm": self.norm,
            "converged": self.converged,
            "iterations": self.iterations,
            "residual": self.residual,
            "e_param": self.e_param,
            "l": self.l,
            "alpha": self.alpha,
            "mass": self.mass,
            "grid": None if self.grid is None else self.grid.to_dict(),
            "classification": self.classification,
        }
        if wavefunction:
            d["r"] = self.r.tolist()
            d["chi"] = self.chi.tolist()
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "EigenResult":
        d = dict(d)
        d.pop("binding_energy_over_m_alpha2", None)
        grid = d.pop("grid", None)
        r = np.asarray(d.pop("r", []), dtype=float)
        chi = np.asarray(d.pop("chi", []), dtype=float)
        return cls(r=r, chi=chi, grid=None if grid is None else RadialGrid.from_dict(grid), **d)


@dataclass
class OutwardSolution:
    r: np.ndarray
    chi: np.ndarray
    log_scale: float
    nodes: int


@dataclass
class SelfConsistencyReport:
    e_param_history: list = field(default_factory=list)
    mismatch_history: list = field(default_factory=list)
    bracket: tuple | None = None

    def to_dict(self) -> dict:
        return {
            "e_param_history": list(self.e_param_history),
            "mismatch_history": list(self.mismatch_history),
            "bracket": None if self.bracket is None else list(self.bracket),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SelfConsistencyReport":
        b = d.get("bracket")
        return cls(list(d["e_param_history"]), list(d["mismatch_history"]),
                   None if b is None else tuple(b))


# ---------------------------------------------------------------- internals


class _FrozenProblem:
    """Discretised radial equation at fixed E_param; Q(eps) = A + B eps."""

    def __init__(self, params: ModelParams, e_param: float, grid: RadialGrid):
        if e_param < 0:
            raise DomainError("E_param must be >= 0")
        self.params = params
        self.e_param = e_param
        self.grid = grid
        m, l = params.mass, params.l
        r = grid.r
        self.r = r
        self.h = grid.step
        self.h2_12 = self.h**2 / 12.0
        v = v_of_r(params, e_param, r)
        if grid.spacing == "logarithmic":
            jac2 = r * r
            self.A = jac2 * m * v + (l + 0.5) ** 2
            self.shape_factor = np.sqrt(r)
            phi_start = r[:2] ** (l + 0.5)
        else:
            jac2 = np.ones_like(r)
            self.A = m * v + l * (l + 1) / (r * r)
            self.shape_factor = np.ones_like(r)
            phi_start = r[:2] ** (l + 1)
        self.B = -m * jac2
        # chi ~ r^{l+1} (1 + c r) from the Coulomb singularity at the origin
        c = -params.charge_sign * m * params.alpha / (2.0 * (l + 1))
        self.y0, self.y1 = phi_start * (1.0 + c * r[:2])

    def Q(self, eps: float) -> np.ndarray:
        return self.A + self.B * eps

    def _ends(self, Q: np.ndarray):
        n = Q.shape[0]
        neg = np.flatnonzero(Q < 0)
        icl = int(neg[-1]) if neg.size else int(np.argmin(Q))
        if icl >= n - 3:
            return n - 3, n - 1, True
        action = np.cumsum(np.sqrt(np.maximum(Q[icl + 1:], 0.0))) * self.h
        k = int(np.searchsorted(action, TAIL_ACTION))
        i_end = icl + 1 + k
        if i_end >= n - 1:
            return max(icl, 2), n - 1, True
        return max(icl, 2), i_end, False

    def count(self, eps: float) -> int:
        """Number of Dirichlet eigenvalues below ``eps`` (Sturm count)."""
        Q = self.Q(eps)
        _, i_end, _ = self._ends(Q)
        return int(_numerov.count_outward_nodes(Q, self.h2_12, self.y0, self.y1, i_end))

    def match(self, eps: float):
        """Matched solution and the cusp energy correction at ``eps``."""
        Q = self.Q(eps)
        n = Q.shape[0]
        icl, i_end, box = self._ends(Q)
        y_out, _, _ = _numerov.outward(Q, self.h2_12, self.y0, self.y1, icl + 1)
        if box:
            y_last, y_prev = 0.0, 1e-200
        else:
            y_last = 1.0
            y_prev = math.exp(self.h * math.sqrt(max(0.5 * (Q[i_end] + Q[i_end - 1]), 0.0)))
        y_in = _numerov.inward(Q, self.h2_12, y_last, y_prev, i_end, icl - 1)
        scale = y_out[icl] / y_in[icl]
        y = np.zeros(n)
        y[: icl + 1] = y_out[: icl + 1]
        y[icl + 1 : i_end + 1] = y_in[icl + 1 : i_end + 1] * scale
        top = np.max(np.abs(y))
        y /= top
        y_right = y_in[icl + 1] * scale / top
        y_left = y_out[icl - 1] / top
        F = 1.0 - self.h2_12 * Q[icl - 1 : icl + 2]
        ycusp = (y_left * F[0] + y_right * F[2] + 10.0 * F[1] * y[icl]) / 12.0
        dfcusp = F[1] * (y[icl] / ycusp - 1.0)
        weight = -self.B * y * y
        norm = float(np.sum(weight)) * self.h
        de = dfcusp / self.h2_12 * ycusp**2 * self.h / norm
        return de, y, icl, i_end, box

    def residual(self, eps: float, y: np.ndarray, i_end: int) -> float:
        top = np.max(np.abs(y[: i_end + 1]))
        res = _numerov.numerov_residual(self.Q(eps), self.h2_12, y, 0, i_end)
        return float(res / top)


def _frozen_eigen(prob: _FrozenProblem, n_radial: int, tol: float, max_iter: int):
    m = prob.params.mass
    lo, hi = -10.0 * m, -1e-12 * m
    n_lo, n_hi = prob.count(lo), prob.count(hi)
    if n_lo > n_radial or n_hi < n_radial + 1:
        raise NoBoundState(
            f"no level with {n_radial} nodes in eps in [{lo}, {hi}] "
            f"(counts {n_lo}, {n_hi})"
        )
    iterations = 0
    while n_lo != n_radial or n_hi != n_radial + 1:
        mid = -math.sqrt(lo * hi)
        c = prob.count(mid)
        iterations += 1
        if c <= n_radial:
            lo, n_lo = mid, c
        else:
            hi, n_hi = mid, c
        if iterations > max_iter:
            raise NoConvergence("node bracketing did not isolate the level")

    eps = -math.sqrt(lo * hi)
    converged = False
    de = math.inf
    for _ in range(max_iter):
        iterations += 1
        if prob.count(eps) <= n_radial:
            lo = eps
        else:
            hi = eps
        de, y, icl, i_end, box = prob.match(eps)
        if abs(de) <= tol * abs(eps):
            converged = True
            break
        if hi - lo <= tol * abs(eps):
            converged = True
            break
        nxt = eps + de
        if not lo < nxt < hi:
            nxt = -math.sqrt(lo * hi) if hi / lo > 1e-3 else 0.5 * (lo + hi)
        eps = nxt
    return eps, y, i_end, box, converged, iterations


def _tail_decayed(chi: np.ndarray) -> bool:
    k = max(2, chi.size // 50)
    return float(np.max(np.abs(chi[-k:]))) <= 1e-8 * float(np.max(np.abs(chi)))


# ---------------------------------------------------------------- public API


def integrate_outward(params: ModelParams, E_param: float, trial_energy: float,
                      grid: RadialGrid) -> OutwardSolution:
    """Regular solution chi ~ r^{l+1} integrated outward over the whole grid.

    Unnormalised. ``chi * exp(log_scale)`` is the solution with the
    starting amplitude ``r_min^{l+1}``; rescaling keeps ``|chi|`` below 1e150.
    """
    if not trial_energy < 0:
        raise DomainError("trial_energy must be < 0 (bound-state convention)")
    prob = _FrozenProblem(params, E_param, grid)
    Q = prob.Q(trial_energy)
    y, nodes, log_scale = _numerov.outward(Q, prob.h2_12, prob.y0, prob.y1, Q.shape[0] - 1)
    return OutwardSolution(prob.r, y * prob.shape_factor, float(log_scale), int(nodes))


def count_nodes(chi) -> int:
    """Strict sign changes of ``chi``; runs of exact zeros count once."""
    chi = np.asarray(chi, dtype=float)
    if chi.size == 0:
        raise DomainError("count_nodes needs at least one sample")
    s = np.sign(chi)
    s = s[s != 0]
    return int(np.count_nonzero(s[1:] != s[:-1]))


def solve_linear_eigenvalue(params: ModelParams, E_param: float, n_radial: int,
                            grid: RadialGrid | None = None, tol: float = 1e-12,
                            max_iter: int = 200, auto_extend: bool = True) -> EigenResult:
    """Level with ``n_radial`` nodes for the potential frozen at ``E_param``.

    ``E_param = 0`` uses the exact Coulomb potential. If the wavefunction
    has not decayed to 1e-8 of its peak at the end of the grid, r_max is
    doubled and the level recomputed.
    """
    if n_radial < 0:
        raise DomainError("n_radial must be >= 0")
    if grid is None:
        grid = RadialGrid.for_coupling(params, n_radial, E_param)
    missing = 0
    for _ in range(_MAX_EXTENSIONS + 1):
        prob = _FrozenProblem(params, E_param, grid)
        try:
            eps, y, i_end, box, converged, iterations = _frozen_eigen(prob, n_radial, tol, max_iter)
        except NoBoundState:
            # a weakly bound level may only appear once the box is large enough;
            # without a classically allowed region there is nothing to find
            allowed = bool(np.any(prob.Q(-1e-12 * params.mass) < 0))
            if not auto_extend or not allowed or missing >= _MAX_MISSING_EXTENSIONS:
                raise
            missing += 1
            grid = grid.extended(2.0)
            continue
        chi = y * prob.shape_factor
        if not auto_extend or not box or _tail_decayed(chi) or grid.r_max > _R_MAX_CAP:
            break
        log.debug("extending grid beyond r_max=%g", grid.r_max)
        grid = grid.extended(2.0)
    r = prob.r
    norm0 = float(np.trapezoid(chi * chi, r))
    chi = chi / math.sqrt(norm0)
    residual = prob.residual(eps, y, i_end)
    if not converged:
        raise NoConvergence(f"level n={n_radial} not converged in {max_iter} iterations")
    return EigenResult(
        binding_energy=-eps,
        node_count=count_nodes(chi),
        r=r,
        chi=chi,
        norm=float(np.trapezoid(chi * chi, r)),
        converged=converged,
        iterations=iterations,
        residual=residual,
        e_param=float(E_param),
        l=params.l,
        alpha=params.alpha,
        mass=params.mass,
        grid=grid,
    )


def _g_eval(params, n_radial, E, grid, report, tol):
    """g(E) = eps_n(E) + E; with no bound level eps is taken as 0."""
    try:
        res = solve_linear_eigenvalue(params, E, n_radial, grid, tol=tol)
        g = res.energy + E
    except NoBoundState:
        res = None
        g = E
    report.e_param_history.append(float(E))
    report.mismatch_history.append(float(g))
    return g, res


def solve_self_consistent(params: ModelParams, n_radial: int, grid: RadialGrid | None = None,
                          e_init: float | None = None, tol: float = 1e-10,
                          max_iter: int = 200) -> tuple[EigenResult, SelfConsistencyReport]:
    """Binding energy E* with ``eps_n(E*) = -E*``.

    ``tol`` bounds ``|g(E*)|`` in units of the mass.
    """
    m = params.mass
    if e_init is None:
        e_init = params.coulomb_binding(n_radial + params.l + 1)
    if not e_init > 0:
        raise DomainError("e_init must be > 0")
    if grid is None:
        grid = RadialGrid.for_coupling(params, n_radial, e_init)
    report = SelfConsistencyReport()
    cache: dict[float, EigenResult | None] = {}

    def g(E):
        val, res = _g_eval(params, n_radial, E, grid, report, tol=1e-13)
        cache[E] = res
        if len(report.e_param_history) > max_iter:
            raise NoConvergence("self-consistency iteration limit reached", report)
        return val

    E = e_init
    gE = g(E)
    if gE < 0:
        lo, hi = E, 2 * E
        while g(hi) < 0:
            lo, hi = hi, 2 * hi
            if hi > 2 * m:
                raise NoBoundState("no sign change of g below 2m", report)
    else:
        lo, hi = E / 2, E
        while g(lo) >= 0:
            lo, hi = lo / 2, lo
            if lo < 1e-14 * m:
                raise NoBoundState("no sign change of g above 1e-14 m", report)
    report.bracket = (lo, hi)
    return _finish_root(params, n_radial, grid, lo, hi, g, cache, report, tol, max_iter)


def _finish_root(params, n_radial, grid, lo, hi, g, cache, report, tol, max_iter):
    try:
        root = brentq(g, lo, hi, xtol=1e-15 * hi, rtol=1e-13, maxiter=max_iter)
    except RuntimeError as exc:
        raise NoConvergence(str(exc), report) from exc
    res = cache.get(root)
    if res is None:
        g(root)
        res = cache[root]
    if res is None:
        raise NoBoundState("level vanished at the root", report)
    mismatch = res.energy + root
    if abs(mismatch) > tol * params.mass:
        raise NoConvergence(f"|g(E*)| = {abs(mismatch):.3e} above tolerance", report)
    return res, report


def classify_level(params: ModelParams, binding: float, tol: float = COULOMB_LIKE_TOL) -> str:
    """'coulomb-like' if some m alpha^2/(4 n^2) is within relative ``tol``."""
    c = params.mass * params.alpha**2 / 4.0
    # nearest principal numbers bracket the best match
    n_star = max(1.0, math.sqrt(c / binding))
    best = min(abs(binding - c / k**2) / (c / k**2)
               for k in {max(1, int(math.floor(n_star))), int(math.ceil(n_star)), int(math.ceil(n_star)) + 1})
    return "coulomb-like" if best < tol else "anomalous-candidate"


def scan_extra_levels(params: ModelParams, grid: RadialGrid | None, n_max: int,
                      e_window: tuple[float, float], mesh_points: int = 24,
                      coulomb_tol: float = COULOMB_LIKE_TOL) -> list[EigenResult]:
    """All self-consistent levels with node count <= n_max inside ``e_window``.

    ``g_n`` is sampled on a log mesh of the window; every sign change is
    refined, so multiple roots for one node count would all be reported.
    """
    e_lo, e_hi = e_window
    if not 0 < e_lo <= e_hi < 2 * params.mass:
        raise DomainError("e_window must lie inside (0, 2m)")
    if e_lo == e_hi:
        return []
    levels = []
    for n in range(n_max + 1):
        g_grid = grid if grid is not None else RadialGrid.for_coupling(params, n, e_lo)
        report = SelfConsistencyReport()
        cache: dict[float, EigenResult | None] = {}

        def g(E, n=n, g_grid=g_grid, report=report, cache=cache):
            val, res = _g_eval(params, n, E, g_grid, report, tol=1e-13)
            cache[E] = res
            return val

        mesh = np.geomspace(e_lo, e_hi, mesh_points)
        vals = [g(E) for E in mesh]
        for a, b, ga, gb in zip(mesh[:-1], mesh[1:], vals[:-1], vals[1:]):
            if ga == 0.0:
                roots = [(a, a)]
            elif ga < 0 < gb or gb < 0 < ga:
                roots = [(a, b)]
            else:
                continue
            for lo, hi in roots:
                if lo == hi:
                    res = cache[lo]
                else:
                    res, _ = _finish_root(params, n, g_grid, lo, hi, g, cache,
                                          report, tol=1e-10, max_iter=200)
                res.classification = classify_level(params, res.binding_energy, coulomb_tol)
                levels.append(res)
    return levels
