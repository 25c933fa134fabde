"""Compiled Numerov sweeps for ``y'' = Q y`` on a uniform mesh."""
from __future__ import annotations

import math

import numpy as np
from numba import njit

_BIG = 1e150
_LOG_BIG = math.log(_BIG)


@njit(cache=True)
def outward(Q, h2_12, y0, y1, stop):
    """Integrate from index 0 to ``stop`` (inclusive).

    Returns ``(y, nodes, log_scale)``; ``y`` is rescaled by ``1/_BIG`` whenever
    it exceeds ``_BIG`` and ``log_scale`` accumulates the discarded logs.
    Sign changes are counted against the last non-zero sign.
    """
    n = stop + 1
    y = np.empty(n)
    y[0] = y0
    y[1] = y1
    f_prev = 1.0 - h2_12 * Q[0]
    f_cur = 1.0 - h2_12 * Q[1]
    nodes = 0
    log_scale = 0.0
    last_sign = 0.0
    for k in range(2):
        if y[k] != 0.0:
            s = 1.0 if y[k] > 0 else -1.0
            if last_sign != 0.0 and s != last_sign:
                nodes += 1
            last_sign = s
    for i in range(1, stop):
        f_next = 1.0 - h2_12 * Q[i + 1]
        y[i + 1] = ((12.0 - 10.0 * f_cur) * y[i] - f_prev * y[i - 1]) / f_next
        if y[i + 1] != 0.0:
            s = 1.0 if y[i + 1] > 0 else -1.0
            if last_sign != 0.0 and s != last_sign:
                nodes += 1
            last_sign = s
        if abs(y[i + 1]) > _BIG:
            for j in range(i + 2):
                y[j] /= _BIG
            log_scale += _LOG_BIG
        f_prev = f_cur
        f_cur = f_next
    return y, nodes, log_scale


@njit(cache=True)
def count_outward_nodes(Q, h2_12, y0, y1, stop):
    """Node count of the outward solution without storing it."""
    a = y0
    b = y1
    f_prev = 1.0 - h2_12 * Q[0]
    f_cur = 1.0 - h2_12 * Q[1]
    nodes = 0
    last_sign = 1.0 if b > 0 else -1.0
    for i in range(1, stop):
        f_next = 1.0 - h2_12 * Q[i + 1]
        c = ((12.0 - 10.0 * f_cur) * b - f_prev * a) / f_next
        if c != 0.0:
            s = 1.0 if c > 0 else -1.0
            if s != last_sign:
                nodes += 1
            last_sign = s
        if abs(c) > _BIG:
            b /= _BIG
            c /= _BIG
        a = b
        b = c
        f_prev = f_cur
        f_cur = f_next
    return nodes


@njit(cache=True)
def inward(Q, h2_12, y_last, y_prev, start, stop):
    """Integrate from index ``start`` down to ``stop``; entries outside stay zero."""
    n = Q.shape[0]
    y = np.zeros(n)
    y[start] = y_last
    y[start - 1] = y_prev
    f_next = 1.0 - h2_12 * Q[start]
    f_cur = 1.0 - h2_12 * Q[start - 1]
    for i in range(start - 1, stop, -1):
        f_prev = 1.0 - h2_12 * Q[i - 1]
        y[i - 1] = ((12.0 - 10.0 * f_cur) * y[i] - f_next * y[i + 1]) / f_prev
        if abs(y[i - 1]) > _BIG:
            for j in range(i - 1, start + 1):
                y[j] /= _BIG
        f_next = f_cur
        f_cur = f_prev
    return y


@njit(cache=True)
def numerov_residual(Q, h2_12, y, lo, hi):
    """max |F_{i+1} y_{i+1} - (12 - 10 F_i) y_i + F_{i-1} y_{i-1}| over lo < i < hi."""
    worst = 0.0
    for i in range(lo + 1, hi):
        fm = 1.0 - h2_12 * Q[i - 1]
        f0 = 1.0 - h2_12 * Q[i]
        fp = 1.0 - h2_12 * Q[i + 1]
        r = abs(fp * y[i + 1] - (12.0 - 10.0 * f0) * y[i] + fm * y[i - 1])
        if r > worst:
            worst = r
    return worst
