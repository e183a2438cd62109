"""Pure-numpy implementations of the hot numeric kernels.

Mirrors :mod:`expderiv._kernels.numba_backend` function for function; the
dispatching package picks one of the two at import time.  Summation orders
are fixed (ascending k for the exponential series, descending k for the
zeta partial sum) so each backend is run-to-run deterministic.
"""
from __future__ import annotations

import math

import numpy as np

_TWO_PI = 2.0 * math.pi
_BLOCK = 4096

# Gauss-Kronrod (G7, K15) nodes on [-1, 1] and the two weight sets.  The
# Kronrod value is the panel estimate; |K15 - G7| is its error estimate.
GK_NODES = np.array(
    [
        -0.991455371120813,
        -0.949107912342759,
        -0.864864423359769,
        -0.741531185599394,
        -0.586087235467691,
        -0.405845151377397,
        -0.207784955007898,
        0.0,
        0.207784955007898,
        0.405845151377397,
        0.586087235467691,
        0.741531185599394,
        0.864864423359769,
        0.949107912342759,
        0.991455371120813,
    ]
)
GK_WEIGHTS_K = np.array(
    [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
        0.204432940075298,
        0.190350578064785,
        0.169004726639267,
        0.140653259715525,
        0.104790010322250,
        0.063092092629979,
        0.022935322010529,
    ]
)
GK_WEIGHTS_G = np.array(
    [
        0.0,
        0.129484966168870,
        0.0,
        0.279705391489277,
        0.0,
        0.381830050505119,
        0.0,
        0.417959183673469,
        0.0,
        0.381830050505119,
        0.0,
        0.279705391489277,
        0.0,
        0.129484966168870,
        0.0,
    ]
)


def power_series_sum(
    n: int, x: float, rel_tol: float, max_terms: int
) -> tuple[float, float, int, bool]:
    """Partial sum of sum_{k>=1} k^n e^{-kx} with a certified tail bound.

    Stops at the first K in the decreasing region k > n/x where the
    geometric tail bound term_K * r/(1-r), r = e^{-x} (1 + 1/K)^n, falls
    below rel_tol * partial.  Returns (partial, tail_bound, K, converged).
    """
    partial = 0.0
    last_bound = math.inf
    k0 = 1
    n_over_x = n / x
    while k0 <= max_terms:
        hi = min(k0 + _BLOCK - 1, max_terms)
        k = np.arange(k0, hi + 1, dtype=np.float64)
        terms = np.exp(n * np.log(k) - k * x)
        csum = partial + np.cumsum(terms)
        r = np.exp(-x + n * np.log1p(1.0 / k))
        valid = (k > n_over_x) & (r < 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            bound = np.where(valid, terms * r / (1.0 - r), np.inf)
        # bound == 0 covers terms that underflow binary64 entirely
        ok = valid & ((bound < rel_tol * np.abs(csum)) | (bound == 0.0))
        if ok.any():
            i = int(np.argmax(ok))
            return float(csum[i]), float(bound[i]), int(k[i]), True
        partial = float(csum[-1])
        last_bound = float(bound[-1])
        k0 = hi + 1
    return partial, last_bound, max_terms, False


def _bose_weight(t: np.ndarray, n: int, scale: float) -> np.ndarray:
    """t^n / (e^{scale*t} - 1) elementwise, switching to a log form when the
    direct factors would overflow binary64."""
    tmax = float(t.max(initial=0.0))
    direct = (n == 0 or n * math.log(max(tmax, 1e-300)) < 650.0) and scale * tmax < 650.0
    if direct:
        return t**n / np.expm1(scale * t)
    st = scale * t
    return np.exp(n * np.log(t) - st - np.log1p(-np.exp(-st)))


def osc_panels(
    a: np.ndarray, b: np.ndarray, n: int, x: float, phase: int
) -> tuple[np.ndarray, np.ndarray]:
    """Batched GK15 panels of t^n/(e^{2 pi t}-1) * sin(xt + n pi/2).

    ``phase`` must be n mod 4; the quarter-turn shift is applied exactly as
    {sin, cos, -sin, -cos}, never as a floating shift of the argument.
    Returns per-panel (K15 value, |K15 - G7| error estimate).
    """
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t = mid[:, None] + half[:, None] * GK_NODES[None, :]
    w = _bose_weight(t, n, _TWO_PI)
    ang = x * t
    if phase == 0:
        osc = np.sin(ang)
    elif phase == 1:
        osc = np.cos(ang)
    elif phase == 2:
        osc = -np.sin(ang)
    else:
        osc = -np.cos(ang)
    f = w * osc
    k15 = (f @ GK_WEIGHTS_K) * half
    g7 = (f @ GK_WEIGHTS_G) * half
    return k15, np.abs(k15 - g7)


def zeta_panels(a: np.ndarray, b: np.ndarray, s: float) -> tuple[np.ndarray, np.ndarray]:
    """Batched GK15 panels of t^{s-1}/(e^t - 1) for s > 1."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    t = mid[:, None] + half[:, None] * GK_NODES[None, :]
    tmax = float(t.max(initial=0.0))
    if (s - 1.0) * math.log(max(tmax, 1e-300)) < 650.0 and tmax < 650.0:
        w = t ** (s - 1.0) / np.expm1(t)
    else:
        w = np.exp((s - 1.0) * np.log(t) - t - np.log1p(-np.exp(-t)))
    k15 = (w @ GK_WEIGHTS_K) * half
    g7 = (w @ GK_WEIGHTS_G) * half
    return k15, np.abs(k15 - g7)


def zeta_power_sum(s: float, big_k: int) -> float:
    """sum_{k=1}^{K} k^{-s}, accumulated smallest terms first."""
    total = 0.0
    hi = big_k
    while hi >= 1:
        lo = max(1, hi - _BLOCK + 1)
        k = np.arange(hi, lo - 1, -1, dtype=np.float64)
        total += float(np.sum(k**-s))
        hi = lo - 1
    return total
