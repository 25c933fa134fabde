"""Special functions behind the coordinate-space quasipotential.

Cosine/sine integrals, the auxiliary kernel
``f(x) = Ci(x) sin x - si(x) cos x`` and the Macdonald function
``K_nu(x)`` for real and for purely imaginary order.

Evaluation branches
-------------------
Ci, si
    power series for ``x <= 2``, continued fraction for ``E1(ix)`` above.
f
    convergent series composition for ``x < 1``, direct Ci/si composition
    for ``1 <= x <= 30``, inverse-power asymptotic series for ``x > 30``.
K_nu, K_{i mu}
    tanh-sinh quadrature of the integral representations. For imaginary
    order the contour is shifted to ``Im t = theta`` so that the
    ``exp(-pi mu / 2)`` scale of the function is factored out analytically
    instead of emerging from cancellation.

All array-taking functions accept scalars or ndarrays; scalar input gives
a Python float.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError
from .quadrature import tanh_sinh

__all__ = [
    "EULER_GAMMA",
    "Constants",
    "CONSTANTS",
    "EvalPoint",
    "cosine_integral",
    "sine_integral_si",
    "f_kernel",
    "cosine_integral_eval",
    "sine_integral_si_eval",
    "f_kernel_eval",
    "bessel_k_real_order",
    "bessel_k_imag_order",
    "bessel_k_imag_order_scaled",
    "k_imag_zeros",
    "F_SERIES_MAX",
    "F_ASYMPTOTIC_MIN",
]

EULER_GAMMA = 0.57721566490153286061
_EPS = np.finfo(float).eps

CISI_SERIES_MAX = 2.0
F_SERIES_MAX = 1.0
F_ASYMPTOTIC_MIN = 30.0

_SERIES_TERMS = 20  # 2^40 / 40! ~ 1e-36

# exp(-46) ~ 1e-20: integrands are truncated below this fraction of their peak
_LOG_CUT = 46.0


@dataclass(frozen=True)
class Constants:
    euler_gamma: float = EULER_GAMMA
    pi: float = math.pi


CONSTANTS = Constants()


@dataclass(frozen=True)
class EvalPoint:
    """A function value with a conservative absolute error bound."""

    x: float
    value: float
    abs_error_estimate: float


def _as_array(x):
    arr = np.asarray(x, dtype=float)
    return arr, arr.ndim == 0


def _out(arr, scalar):
    return float(arr) if scalar else arr


# ---------------------------------------------------------------- Ci / si


def _cisi_series(x: np.ndarray):
    """Ci(x), Si(x) and an error bound from the power series (x <= 2)."""
    x2 = x * x
    t = np.ones_like(x)  # (-1)^k x^{2k} / (2k)!
    ci_sum = np.zeros_like(x)
    si_sum = x.copy()
    abs_sum = np.abs(x)
    # fixed term count keeps each element independent of the batch it is in
    for k in range(1, _SERIES_TERMS + 1):
        t = -t * x2 / ((2 * k - 1) * (2 * k))
        ci_term = t / (2 * k)
        si_term = t * x / ((2 * k + 1) ** 2)
        ci_sum += ci_term
        si_sum += si_term
        abs_sum += np.abs(ci_term) + np.abs(si_term)
    log_part = EULER_GAMMA + np.log(x)
    ci = log_part + ci_sum
    err = 4 * _EPS * (np.abs(log_part) + abs_sum) + np.abs(t)
    return ci, si_sum, err


def _e1_imag_cf(x: np.ndarray) -> np.ndarray:
    """``exp(ix) E1(ix)`` by the modified Lentz continued fraction (x >= 2)."""
    tiny = 1e-300
    b = 1.0 + 1j * x
    c = np.full(x.shape, 1.0 / tiny, dtype=complex)
    d = 1.0 / b
    h = d.copy()
    live = np.ones(x.shape, dtype=bool)
    for i in range(1, 500):
        a = -float(i * i)
        b = b + 2.0
        d = 1.0 / (a * d + b)
        c = b + a / c
        delta = c * d
        h = np.where(live, h * delta, h)
        live &= np.abs(delta - 1.0) >= _EPS
        if not np.any(live):
            break
    return h


def _cisi(x: np.ndarray):
    """Ci(x), si(x) = Si(x) - pi/2 and absolute error bound, x > 0."""
    ci = np.empty_like(x)
    si = np.empty_like(x)
    err = np.empty_like(x)
    small = x <= CISI_SERIES_MAX
    if np.any(small):
        c, s, e = _cisi_series(x[small])
        ci[small] = c
        si[small] = s - 0.5 * math.pi
        err[small] = e + _EPS
    big = ~small
    if np.any(big):
        xb = x[big]
        e1 = _e1_imag_cf(xb) * np.exp(-1j * xb)  # E1(ix) = -Ci(x) + i si(x)
        ci[big] = -e1.real
        si[big] = e1.imag
        err[big] = 8 * _EPS / xb
    return ci, si, err


def _check_positive(arr, name, strict=True):
    bad = arr <= 0 if strict else arr < 0
    if np.any(bad) or np.any(np.isnan(arr)):
        rel = ">" if strict else ">="
        raise DomainError(f"{name} requires x {rel} 0")


def cosine_integral(x):
    """Ci(x) = gamma + ln x + int_0^x (cos t - 1)/t dt for x > 0."""
    arr, scalar = _as_array(x)
    _check_positive(arr, "cosine_integral")
    ci, _, _ = _cisi(np.atleast_1d(arr))
    return _out(ci.reshape(arr.shape), scalar)


def sine_integral_si(x):
    """si(x) = Si(x) - pi/2 for x >= 0."""
    arr, scalar = _as_array(x)
    _check_positive(arr, "sine_integral_si", strict=False)
    flat = np.atleast_1d(arr)
    out = np.full(flat.shape, -0.5 * math.pi)
    pos = flat > 0
    if np.any(pos):
        out[pos] = _cisi(flat[pos])[1]
    return _out(out.reshape(arr.shape), scalar)


def cosine_integral_eval(x: float) -> EvalPoint:
    _check_positive(np.asarray(x, dtype=float), "cosine_integral")
    ci, _, err = _cisi(np.array([float(x)]))
    return EvalPoint(float(x), float(ci[0]), float(err[0]))


def sine_integral_si_eval(x: float) -> EvalPoint:
    x = float(x)
    _check_positive(np.asarray(x), "sine_integral_si", strict=False)
    if x == 0.0:
        return EvalPoint(0.0, -0.5 * math.pi, _EPS)
    _, si, err = _cisi(np.array([x]))
    return EvalPoint(x, float(si[0]), float(err[0]))


# ---------------------------------------------------------------- f(x)


def _f_asymptotic(x: np.ndarray):
    """sum_k (-1)^k (2k)!/x^{2k+1}, truncated at the smallest term."""
    inv2 = 1.0 / (x * x)
    term = 1.0 / x
    total = term.copy()
    err = np.abs(term)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 200):
        nxt = -term * (2 * k - 1) * (2 * k) * inv2
        active &= (np.abs(nxt) < np.abs(term)) & (np.abs(term) > _EPS * 1e-3 * np.abs(total))
        # first omitted term bounds the remainder of an alternating series
        err = np.where(active, np.abs(nxt), err)
        total = np.where(active, total + nxt, total)
        term = np.where(active, nxt, term)
        if not np.any(active):
            break
    return total, err + 2 * _EPS * np.abs(total)


def _f_series(x: np.ndarray):
    ci, si_big, err = _cisi_series(x)
    s, c = np.sin(x), np.cos(x)
    # f = Ci sin x - Si cos x + (pi/2) cos x
    val = ci * s - si_big * c + 0.5 * math.pi * c
    return val, err + 4 * _EPS


def _f_direct(x: np.ndarray):
    ci, si, err = _cisi(x)
    val = ci * np.sin(x) - si * np.cos(x)
    return val, 2 * err + 4 * _EPS * (np.abs(ci) + np.abs(si))


def _f_all(x: np.ndarray, branch: str | None = None):
    val = np.empty_like(x)
    err = np.empty_like(x)
    if branch is not None:
        fn = {"series": _f_series, "direct": _f_direct, "asymptotic": _f_asymptotic}[branch]
        return fn(x)
    zero = x == 0.0
    val[zero] = 0.5 * math.pi
    err[zero] = 0.0
    for mask, fn in (
        ((x > 0) & (x < F_SERIES_MAX), _f_series),
        ((x >= F_SERIES_MAX) & (x <= F_ASYMPTOTIC_MIN), _f_direct),
        (x > F_ASYMPTOTIC_MIN, _f_asymptotic),
    ):
        if np.any(mask):
            v, e = fn(x[mask])
            val[mask] = v
            err[mask] = e
    return val, err


def f_kernel(x, branch: str | None = None):
    """Kernel ``f(x) = Ci(x) sin x - si(x) cos x`` for x >= 0.

    ``branch`` forces one evaluation route ("series", "direct",
    "asymptotic"); used to check continuity at the crossovers.
    """
    arr, scalar = _as_array(x)
    _check_positive(arr, "f_kernel", strict=False)
    flat = np.atleast_1d(arr).astype(float)
    val, _ = _f_all(flat, branch)
    return _out(val.reshape(arr.shape), scalar)


def f_kernel_eval(x: float) -> EvalPoint:
    x = float(x)
    _check_positive(np.asarray(x), "f_kernel", strict=False)
    val, err = _f_all(np.array([x]))
    return EvalPoint(x, float(val[0]), float(err[0]))


# ---------------------------------------------------------------- K_nu


def bessel_k_real_order(nu: float, x: float) -> float:
    """K_nu(x) for real order, from int_0^inf exp(-x cosh t) cosh(nu t) dt."""
    return _bessel_k_real(nu, x)[0]


def _bessel_k_real(nu: float, x: float) -> tuple[float, float]:
    nu = abs(float(nu))
    x = float(x)
    if not x > 0:
        raise DomainError("bessel_k_real_order requires x > 0")

    def log_integrand(t):
        # log(exp(-x cosh t) cosh(nu t)) without overflow
        return -x * np.cosh(t) + nu * t + np.log1p(np.exp(-2.0 * nu * t)) - math.log(2.0)

    t_peak = math.asinh(nu / x)
    h_peak = float(log_integrand(t_peak))
    target = h_peak - _LOG_CUT
    span = 1.0
    while log_integrand(t_peak + span) > target:
        span *= 2.0
    t_end = brentq(lambda t: log_integrand(t) - target, t_peak, t_peak + span, xtol=1e-6)

    def integrand(t):
        return np.exp(log_integrand(t) - h_peak)

    if t_peak > 0:
        a, b = [0.0, t_peak], [t_peak, t_end]
    else:
        a, b = [0.0], [t_end]
    val, err = tanh_sinh(integrand, a, b, rtol=1e-14)
    scale = math.exp(h_peak)
    return val * scale, (err + 1e-15 * val) * scale


def _imag_contour(mu: float, x: float):
    """Return (log_prefactor, scaled_integral, error) for K_{i mu}(x).

    K_{i mu}(x) = exp(log_prefactor) * scaled_integral.
    """
    delta = min(0.5 * math.pi, 1.0 / mu)
    theta = min(0.5 * math.pi - delta, math.asin(min(1.0, mu / x)))
    c, s = math.cos(theta), math.sin(theta)
    a = x * c
    t_end = math.acosh(1.0 + _LOG_CUT / a)

    def integrand(t):
        return np.exp(-a * (np.cosh(t) - 1.0)) * np.cos(mu * t - x * s * np.sinh(t))

    # panels of roughly equal accumulated phase (<= 4 pi each)
    phase_end = mu * t_end + x * s * math.sinh(t_end)
    n_panels = max(1, int(math.ceil(phase_end / (4 * math.pi))))
    if n_panels == 1:
        edges = np.array([0.0, t_end])
    else:
        tt = np.linspace(0.0, t_end, 8 * n_panels + 1)
        phase = mu * tt + x * s * np.sinh(tt)
        edges = np.interp(np.linspace(0.0, phase_end, n_panels + 1), phase, tt)
    val, err = tanh_sinh(integrand, edges[:-1], edges[1:], rtol=1e-13, atol=1e-16)
    return -mu * theta - a, val, err


def _check_imag_args(mu, x):
    if not mu > 0:
        raise DomainError("bessel_k_imag_order requires mu > 0")
    if not x > 0:
        raise DomainError("bessel_k_imag_order requires x > 0")


def bessel_k_imag_order(mu: float, x: float) -> float:
    """Real-valued K_{i mu}(x) = int_0^inf exp(-x cosh t) cos(mu t) dt."""
    mu, x = float(mu), float(x)
    _check_imag_args(mu, x)
    log_pref, val, _ = _imag_contour(mu, x)
    return math.exp(log_pref) * val


def bessel_k_imag_order_scaled(mu: float, x: float) -> tuple[float, float]:
    """``(v, log_scale)`` with ``K_{i mu}(x) = v * exp(log_scale)``.

    ``v`` is O(1) even where K_{i mu} itself is ~exp(-pi mu/2); use it for
    sign tests and zero location.
    """
    mu, x = float(mu), float(x)
    _check_imag_args(mu, x)
    log_pref, val, _ = _imag_contour(mu, x)
    return val, log_pref


def k_imag_zeros(
    mu: float,
    x_min: float,
    n_mesh: int | None = None,
    mesh: str = "log",
    xtol: float = 1e-12,
) -> list[float]:
    """Zeros of K_{i mu}(x) on [x_min, mu], ascending.

    A sign scan on ``n_mesh`` points (default ``max(1000, ceil(50 mu))``)
    brackets the zeros, which are then refined with Brent's method. The
    zeros are evenly spaced in ``ln x`` for ``x << mu``, so the default mesh
    is logarithmic; ``mesh="uniform"`` is available. Zeros closer together
    than the mesh spacing are missed, so the result is empty when no sign
    change is seen.
    """
    mu, x_min = float(mu), float(x_min)
    _check_imag_args(mu, x_min)
    if not x_min < mu:
        raise DomainError("k_imag_zeros requires x_min < mu")
    if n_mesh is None:
        n_mesh = max(1000, int(math.ceil(50 * mu)))
    if mesh == "log":
        grid = np.geomspace(x_min, mu, n_mesh)
    elif mesh == "uniform":
        grid = np.linspace(x_min, mu, n_mesh)
    else:
        raise ValueError(f"unknown mesh {mesh!r}")

    # below mu the contour angle does not depend on x, so the scaled value
    # is a smooth function of x with the sign of K
    def g(x):
        return _imag_contour(mu, x)[1]

    vals = np.array([g(x) for x in grid])
    zeros = []
    for i in range(n_mesh - 1):
        if vals[i] == 0.0:
            zeros.append(float(grid[i]))
        elif vals[i] * vals[i + 1] < 0:
            zeros.append(brentq(g, grid[i], grid[i + 1], xtol=xtol, rtol=4 * _EPS))
    if vals[-1] == 0.0:
        zeros.append(float(grid[-1]))
    return zeros
