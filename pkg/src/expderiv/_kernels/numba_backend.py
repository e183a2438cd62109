"""Numba-jitted implementations of the hot numeric kernels.

Same contracts as :mod:`expderiv._kernels.numpy_backend`; plain loops that
numba compiles once per process (``cache=True`` persists the compilation
across processes).  No fastmath: results stay IEEE-reproducible.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

from .numpy_backend import GK_NODES, GK_WEIGHTS_G, GK_WEIGHTS_K

_TWO_PI = 2.0 * math.pi


@njit(cache=True)
def power_series_sum(n, x, rel_tol, max_terms):
    partial = 0.0
    last_bound = np.inf
    n_over_x = n / x
    for k in range(1, max_terms + 1):
        fk = float(k)
        term = math.exp(n * math.log(fk) - fk * x)
        partial += term
        if fk > n_over_x:
            r = math.exp(-x + n * math.log1p(1.0 / fk))
            if r < 1.0:
                bound = term * r / (1.0 - r)
                if bound < rel_tol * abs(partial) or bound == 0.0:
                    return partial, bound, k, True
                last_bound = bound
    return partial, last_bound, max_terms, False


@njit(cache=True)
def _panel_eval(a, b, n, x, phase, scale, zeta_mode, s):
    n_panels = a.shape[0]
    k15 = np.empty(n_panels)
    err = np.empty(n_panels)
    tmax = 0.0
    for i in range(n_panels):
        if b[i] > tmax:
            tmax = b[i]
    if zeta_mode:
        direct = (s - 1.0) * math.log(max(tmax, 1e-300)) < 650.0 and scale * tmax < 650.0
    else:
        direct = (
            n == 0 or n * math.log(max(tmax, 1e-300)) < 650.0
        ) and scale * tmax < 650.0
    for i in range(n_panels):
        mid = 0.5 * (a[i] + b[i])
        half = 0.5 * (b[i] - a[i])
        acc_k = 0.0
        acc_g = 0.0
        for j in range(15):
            t = mid + half * GK_NODES[j]
            if zeta_mode:
                if direct:
                    w = t ** (s - 1.0) / math.expm1(scale * t)
                else:
                    st = scale * t
                    w = math.exp(
                        (s - 1.0) * math.log(t) - st - math.log1p(-math.exp(-st))
                    )
                f = w
            else:
                if direct:
                    w = t ** n / math.expm1(scale * t)
                else:
                    st = scale * t
                    w = math.exp(n * math.log(t) - st - math.log1p(-math.exp(-st)))
                ang = x * t
                if phase == 0:
                    osc = math.sin(ang)
                elif phase == 1:
                    osc = math.cos(ang)
                elif phase == 2:
                    osc = -math.sin(ang)
                else:
                    osc = -math.cos(ang)
                f = w * osc
            acc_k += GK_WEIGHTS_K[j] * f
            acc_g += GK_WEIGHTS_G[j] * f
        k15[i] = acc_k * half
        err[i] = abs(acc_k - acc_g) * half
    return k15, err


def osc_panels(a, b, n, x, phase):
    return _panel_eval(a, b, n, x, phase, _TWO_PI, False, 0.0)


def zeta_panels(a, b, s):
    return _panel_eval(a, b, 0, 0.0, 0, 1.0, True, s)


@njit(cache=True)
def zeta_power_sum(s, big_k):
    total = 0.0
    for k in range(big_k, 0, -1):
        total += float(k) ** -s
    return total
