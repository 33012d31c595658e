"""Stopping rule: Massart-type bound on the empirical Rademacher average.

For a binary function family whose coverage vectors have squared norms
``t`` (the tree counts), the empirical Rademacher average over ``r``
samples is at most ``min_s w(s)`` with

    w(s) = (1/s) * ln sum_t exp(s^2 t / (2 r^2)).

The sum runs over distinct tree counts, plus one all-zero vector for the
never-covered pairs when ``include_zero`` is set.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

S_MIN = 1e-6
GROWTH = 2.0
TOL = 1e-6
_INVPHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class StopEvaluation:
    r: int
    w_s: float
    s_star: float
    delta_i: float
    eta: float


def _as_values(values) -> np.ndarray:
    if hasattr(values, "values") and callable(values.values):
        values = values.values()
    return np.asarray(values, dtype=np.float64)


def massart_w(s: float, values, r: int, include_zero: bool = True) -> float:
    if s <= 0:
        raise ValueError(f"s must be positive, got {s}")
    t = _as_values(values)
    a = (s * s / (2.0 * r * r)) * t
    if include_zero:
        a = np.append(a, 0.0)
    if len(a) == 0:
        return 0.0
    top = a.max()
    return float((top + math.log(np.exp(a - top).sum())) / s)


def _golden(f, lo: float, hi: float, tol: float) -> Tuple[float, float]:
    x1 = hi - _INVPHI * (hi - lo)
    x2 = lo + _INVPHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    for _ in range(500):
        if hi - lo <= tol * 0.5 * (x1 + x2):
            break
        if f2 > f1:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INVPHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INVPHI * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def bracket_w(values, r: int, include_zero: bool = True, s_min: float = S_MIN) -> Tuple[float, float]:
    """Interval ``[lo, hi]`` holding the minimizer of ``w``.

    Doubles (or halves) from ``s = 1`` until ``w`` rises on both flanks;
    ``lo`` is clamped at ``s_min``.
    """
    t = _as_values(values)

    def f(s: float) -> float:
        return massart_w(s, t, r, include_zero)

    mid, fm = 1.0, f(1.0)
    hi = mid * GROWTH
    fh = f(hi)
    if fh < fm:
        lo = mid
        mid, fm = hi, fh
        hi = mid * GROWTH
        while (fh := f(hi)) < fm:
            lo, mid, fm = mid, hi, fh
            hi *= GROWTH
        return lo, hi
    lo = mid / GROWTH
    while lo > s_min and (fl := f(lo)) < fm:
        hi, mid, fm = mid, lo, fl
        lo /= GROWTH
    return max(lo, s_min), hi


def minimize_w(
    values, r: int, tol: float = TOL, include_zero: bool = True, s_min: float = S_MIN
) -> Tuple[float, float]:
    """Minimize ``w`` over ``s > 0``; returns ``(s_star, w(s_star))``.

    Golden-section search over :func:`bracket_w`. When ``w`` keeps falling
    towards zero the answer is clamped at ``s_min``.
    """
    t = _as_values(values)
    if len(t) == 0:
        return 1.0, 0.0

    def f(s: float) -> float:
        return massart_w(s, t, r, include_zero)

    lo, hi = bracket_w(t, r, include_zero, s_min)
    s, w = _golden(f, lo, hi, tol)
    f_lo = f(lo)
    if f_lo < w:
        s, w = lo, f_lo
    return s, w


def eta_bound(w_s: float, r: int, delta_i: float) -> float:
    """Bound on the largest deviation of any empirical centrality, at confidence ``delta_i``."""
    if w_s < 0 or r < 1 or not 0 < delta_i < 1:
        raise ValueError(f"bad arguments w_s={w_s}, r={r}, delta_i={delta_i}")
    a = math.log(3.0 / delta_i)
    return 2.0 * w_s + (a + math.sqrt((a + 4.0 * r * w_s) * a)) / r + math.sqrt(a / (2.0 * r))


def evaluate_stop(values, r: int, delta: float, iteration: int, include_zero: bool = True) -> StopEvaluation:
    s_star, w_s = minimize_w(values, r, include_zero=include_zero)
    delta_i = delta / 2.0**iteration
    return StopEvaluation(r=r, w_s=w_s, s_star=s_star, delta_i=delta_i, eta=eta_bound(w_s, r, delta_i))
