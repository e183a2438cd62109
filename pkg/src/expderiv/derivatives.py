"""Binary64 evaluation of d^n/dx^n [1/(e^x - 1)] by independent routes.

Routes implemented here:

* ``deriv_expanded``  - single Stirling sum of order n+1 in u = 1/(e^x - 1):
  (-1)^n sum_{k=1}^{n+1} S(n+1, k) (k-1)! u^k.
* ``deriv_factored``  - prefactored form (-1)^n (1 + u) sum_{k=1}^{n}
  S(n, k) k! u^k; algebraically equal to the expanded form through the
  Stirling recurrence, numerically a distinct code path.
* ``deriv_series``    - direct summation of (-1)^n sum_{k>=1} k^n e^{-kx}
  with a certified geometric tail bound.
* ``reg_deriv_smallx``- Bernoulli expansion of the regularized function
  1/(e^x - 1) - 1/x, differentiated termwise (|x| < 2 pi).
* ``finite_difference_oracle`` - central differences, the numeric
  cross-check of everything above (n <= 6 only; binary64 differencing
  degrades fast with order).

Plus the two geometric-polynomial identities the closed forms rest on:
``geometric_moment`` (sum_m m^n x^m for |x| < 1) and
``fermi_maclaurin_coeff`` (Maclaurin coefficients of 1/(mu e^{lambda t}+1)).

All functions are pure; a shared read-only StirlingTriangle may be passed
in, otherwise a cached one is used.  Near the pole the derivative scales
like n!/|x|^{n+1}, so every comparison made by the verification suites is
relative, never absolute.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from . import _kernels
from .errors import (
    ConvergenceError,
    DivergentSeriesError,
    DomainError,
    PoleError,
    SingularParameterError,
    UnsupportedOrderError,
)
from .exact import (
    MAX_FLOAT_ORDER,
    StirlingTriangle,
    bernoulli,
    eval_geometric_polynomial,
    factorial,
    geometric_polynomial,
    stirling_table,
)

__all__ = [
    "Method",
    "EvalResult",
    "SeriesPolicy",
    "deriv_expanded",
    "deriv_factored",
    "deriv_series",
    "geometric_moment",
    "fermi_maclaurin_coeff",
    "reg_deriv_smallx",
    "finite_difference_oracle",
    "expanded_coeffs",
    "factored_coeffs",
    "inv_expm1",
]

_EPS = math.ulp(1.0)


class Method(str, Enum):
    """Tags identifying which route produced an EvalResult."""

    CLOSED_FORM1 = "ClosedForm1"
    CLOSED_FORM2 = "ClosedForm2"
    SERIES = "Series"
    QUADRATURE = "Quadrature"
    SMALLX_SERIES = "SmallXSeries"
    FINITE_DIFFERENCE = "FiniteDifference"


@dataclass(frozen=True)
class EvalResult:
    """One derivative evaluation: order, point, binary64 value, route, error claim."""

    order: int
    point: float
    value: float
    method: Method
    err_estimate: float


@dataclass(frozen=True)
class SeriesPolicy:
    """Truncation control for the direct series summation."""

    rel_tol: float = 1e-12
    max_terms: int = 10_000_000

    def __post_init__(self):
        if not (0.0 < self.rel_tol < 1.0):
            raise DomainError("SeriesPolicy.rel_tol must lie in (0, 1)")
        if self.max_terms < 1:
            raise DomainError("SeriesPolicy.max_terms must be >= 1")


def inv_expm1(x: float) -> float:
    """u = 1/(e^x - 1) without cancellation.

    For x > 0.5 uses e^{-x}/(1 - e^{-x}) (keeps subnormal accuracy out to
    x ~ 745); otherwise 1/expm1(x), accurate to O(eps) relative for small
    |x| and valid for x < 0 too.
    """
    if x == 0.0:
        raise PoleError("1/(e^x - 1) has a pole at x = 0")
    if x > 0.5:
        t = math.exp(-x)
        return t / (1.0 - t)
    return 1.0 / math.expm1(x)


def _check_order(n: int) -> None:
    if n < 0:
        raise DomainError("derivative order must be >= 0")
    if n > MAX_FLOAT_ORDER:
        raise UnsupportedOrderError(
            f"order {n} exceeds the binary64 evaluation cap {MAX_FLOAT_ORDER}"
        )


def _triangle_for(n: int, triangle: StirlingTriangle | None) -> StirlingTriangle:
    if triangle is None:
        return stirling_table(n)
    if triangle.max_order < n:
        raise DomainError(
            f"triangle covers max_order {triangle.max_order}, need {n}"
        )
    return triangle


def expanded_coeffs(n: int, triangle: StirlingTriangle | None = None) -> tuple[int, ...]:
    """Exact coefficients c_k = S(n+1, k) (k-1)! of the expanded closed form,
    indexed k = 0..n+1 (c_0 = 0)."""
    tri = _triangle_for(n + 1, triangle)
    row = tri.rows[n + 1]
    return (0,) + tuple(row[k] * math.factorial(k - 1) for k in range(1, n + 2))


def factored_coeffs(n: int, triangle: StirlingTriangle | None = None) -> tuple[int, ...]:
    """Exact coefficients of (1 + u) * sum_{k=1}^{n} S(n, k) k! u^k, expanded
    symbolically, indexed k = 0..n+1."""
    tri = _triangle_for(max(n, 1), triangle)
    row = tri.rows[n]
    omega = [0] * (n + 1)
    for k in range(1, n + 1):
        omega[k] = row[k] * math.factorial(k)
    out = [0] * (n + 2)
    for k in range(1, n + 1):
        out[k] += omega[k]
        out[k + 1] += omega[k]
    return tuple(out)


def _float_coeffs(coeffs: tuple[int, ...], what: str) -> list[float]:
    try:
        return [float(c) for c in coeffs]
    except OverflowError as exc:
        raise UnsupportedOrderError(
            f"{what}: Stirling-weighted coefficients exceed the binary64 range"
        ) from exc


def _horner_from_k1(fc: list[float], u: float) -> float:
    """sum_{k>=1} fc[k] u^k, Horner in u (fc[0] ignored)."""
    acc = 0.0
    for c in reversed(fc[1:]):
        acc = acc * u + c
    return acc * u


def _closed_form_err(fc: list[float], u: float, value: float) -> float:
    # Horner forward-error bound: all coefficients here are >= 0, so the
    # polynomial evaluated at |u| bounds the term-magnitude sum.
    mag = _horner_from_k1(fc, abs(u))
    return 2.0 * (len(fc) + 1) * _EPS * mag + _EPS * abs(value)


def _require_finite(value: float, what: str) -> float:
    if not math.isfinite(value):
        raise UnsupportedOrderError(f"{what}: value exceeds the binary64 range")
    return value


def deriv_expanded(
    n: int, x: float, triangle: StirlingTriangle | None = None
) -> EvalResult:
    """n-th derivative via the single Stirling sum of order n+1.

    n = 0 returns the base function u itself (the closed forms are stated
    for n >= 1; extending with the identity keeps the API total).
    """
    _check_order(n)
    u = inv_expm1(x)
    if n == 0:
        return EvalResult(0, x, u, Method.CLOSED_FORM1, _EPS * abs(u))
    fc = _float_coeffs(expanded_coeffs(n, triangle), f"deriv_expanded(n={n})")
    sign = -1.0 if n % 2 else 1.0
    value = _require_finite(sign * _horner_from_k1(fc, u), f"deriv_expanded(n={n})")
    return EvalResult(n, x, value, Method.CLOSED_FORM1, _closed_form_err(fc, u, value))


def deriv_factored(
    n: int, x: float, triangle: StirlingTriangle | None = None
) -> EvalResult:
    """n-th derivative via the prefactored geometric-polynomial form."""
    _check_order(n)
    u = inv_expm1(x)
    if n == 0:
        return EvalResult(0, x, u, Method.CLOSED_FORM2, _EPS * abs(u))
    tri = _triangle_for(n, triangle)
    row = tri.rows[n]
    fc = _float_coeffs(
        (0,) + tuple(row[k] * math.factorial(k) for k in range(1, n + 1)),
        f"deriv_factored(n={n})",
    )
    sign = -1.0 if n % 2 else 1.0
    value = _require_finite(
        sign * (1.0 + u) * _horner_from_k1(fc, u), f"deriv_factored(n={n})"
    )
    err = abs(1.0 + u) * _closed_form_err(fc, u, value) + _EPS * abs(value)
    return EvalResult(n, x, value, Method.CLOSED_FORM2, err)


def deriv_series(n: int, x: float, policy: SeriesPolicy | None = None) -> EvalResult:
    """n-th derivative by direct summation of (-1)^n sum_k k^n e^{-kx}, x > 0.

    The summation stops once terms are decreasing (k > n/x) and the
    geometric tail bound drops below rel_tol times the partial sum; the
    bound is reported as the error estimate.
    """
    _check_order(n)
    if x <= 0.0:
        raise DivergentSeriesError("series sum_k k^n e^{-kx} requires x > 0")
    pol = policy or SeriesPolicy()
    partial, bound, k_stop, converged = _kernels.power_series_sum(
        n, x, pol.rel_tol, pol.max_terms
    )
    sign = -1.0 if n % 2 else 1.0
    if not converged:
        raise ConvergenceError(
            f"series for n={n}, x={x} did not meet rel_tol={pol.rel_tol} "
            f"within max_terms={pol.max_terms}",
            best=sign * partial,
        )
    return EvalResult(n, x, sign * partial, Method.SERIES, bound)


def geometric_moment(
    n: int, x: float, triangle: StirlingTriangle | None = None
) -> float:
    """sum_{m>=0} m^n x^m for |x| < 1, via (1/(1-x)) * omega_n(x/(1-x)).

    This is the brute-force-verified orientation of the moment identity
    (the argument is x/(1-x), not x/(x-1)).
    """
    _check_order(n)
    if abs(x) >= 1.0:
        raise DomainError("geometric moment requires |x| < 1")
    tri = _triangle_for(n, triangle)
    poly = geometric_polynomial(n, tri)
    w = x / (1.0 - x)
    return eval_geometric_polynomial(poly, w) / (1.0 - x)


def fermi_maclaurin_coeff(
    n: int,
    lam: float,
    mu: float,
    triangle: StirlingTriangle | None = None,
) -> float:
    """Coefficient of t^n in the Maclaurin expansion of 1/(mu e^{lambda t} + 1):
    lambda^n omega_n(-mu/(mu+1)) / ((mu+1) n!)."""
    _check_order(n)
    if mu == -1.0:
        raise SingularParameterError("mu = -1 makes 1/(mu e^{lambda t} + 1) singular")
    tri = _triangle_for(n, triangle)
    poly = geometric_polynomial(n, tri)
    w = -mu / (mu + 1.0)
    return (
        lam**n
        * eval_geometric_polynomial(poly, w)
        / ((mu + 1.0) * float(factorial(n)))
    )


def reg_deriv_smallx(n: int, x: float, n_terms: int = 40) -> EvalResult:
    """n-th derivative of the regularized function 1/(e^x - 1) - 1/x for
    |x| < 2 pi, from its Bernoulli expansion differentiated termwise.

    Coefficients decay like (2 pi)^{-m}, so the default 40 terms give
    ~1e-15 relative accuracy for |x| <= 1.  The error estimate extends the
    last included terms by the geometric ratio |x|/(2 pi).
    """
    _check_order(n)
    if abs(x) >= 2.0 * math.pi:
        raise DomainError("Bernoulli expansion requires |x| < 2*pi")
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    total = 0.0
    tail_seed = 0.0
    prev_mag = 0.0
    for m in range(n, n + n_terms):
        coeff = Fraction(bernoulli(m + 1), (m + 1) * math.factorial(m - n))
        term = float(coeff) * x ** (m - n)
        total += term
        tail_seed = max(abs(term), prev_mag)
        prev_mag = abs(term)
    rho = abs(x) / (2.0 * math.pi)
    err = tail_seed * rho / (1.0 - rho) if rho > 0.0 else 0.0
    return EvalResult(n, x, total, Method.SMALLX_SERIES, err)


def finite_difference_oracle(n: int, x: float, h: float | None = None) -> float:
    """Central n-th difference of 1/(e^x - 1) divided by h^n, n <= 6.

    Default step h = eps^{1/(n+2)} * max(1, |x|).  The stencil
    [x - nh/2, x + nh/2] must exclude the pole at 0.
    """
    if n < 0 or n > 6:
        raise UnsupportedOrderError(
            "finite differencing in binary64 is limited to 0 <= n <= 6"
        )
    if h is None:
        h = _EPS ** (1.0 / (n + 2)) * max(1.0, abs(x))
    lo = x - n * h / 2.0
    hi = x + n * h / 2.0
    if lo <= 0.0 <= hi:
        raise PoleError(f"stencil [{lo}, {hi}] crosses the pole at 0")
    acc = 0.0
    for j in range(n + 1):
        point = x + (n / 2.0 - j) * h
        acc += (-1.0) ** j * math.comb(n, j) / math.expm1(point)
    return acc / h**n
