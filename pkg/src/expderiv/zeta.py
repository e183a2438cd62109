"""Zeta values by series, the x -> 0 limit of the regularized derivative,
and exact certificates for the Bernoulli/zeta identities.

The chain certified here: the limit of d^n/dx^n [1/(e^x - 1) - 1/x] as
x -> 0 equals 2 n!/(2 pi)^{n+1} sin(n pi/2) zeta(n+1), which forces

    B_{n+1}/(n+1)! = 2/(2 pi)^{n+1} sin(n pi/2) zeta(n+1),

both sides vanishing when n+1 is odd, and for n+1 = 2m Euler's classical

    B_{2m} = (-1)^{m+1} 2 (2m)!/(2 pi)^{2m} zeta(2m).

sin(n pi/2) is never computed by floating trig; it is selected exactly
from n mod 4.  pi enters only through (2 pi)^{n+1}, whose rounding is
<= (n+1) eps relative - far inside the 1e-12 certificate thresholds.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import _kernels
from .derivatives import reg_deriv_smallx
from .errors import DomainError, UnstableLimitError
from .exact import MAX_FLOAT_ORDER, bernoulli, factorial, rational_str
from .quadrature import QuadPolicy, reg_deriv_quadrature

__all__ = [
    "IdentityCertificate",
    "zeta_series",
    "zero_limit_closed_form",
    "zero_limit_numeric",
    "check_bernoulli_zeta",
    "check_euler",
    "check_zero_limit",
]

# sin(n pi/2) by n mod 4
_SIN_QUARTER = (0.0, 1.0, 0.0, -1.0)

_TINY = 1e-300


@dataclass(frozen=True)
class IdentityCertificate:
    """Outcome of one identity check.

    ``lhs`` is a decimal string (exact "p/q" for rational sides, shortest
    round-trip decimal for binary64 sides); ``rhs`` is the binary64 value
    of the other side.  ``rel_defect`` is |lhs - rhs| / max(|lhs|, |rhs|,
    1e-300); identities whose two sides vanish identically pass on
    ``abs_defect`` <= 1e-15 instead of the relative test.
    """

    identity_id: str
    parameter: int
    lhs: str
    rhs: float
    rel_defect: float
    abs_defect: float
    tolerance: float
    passed: bool


def _certificate(
    identity_id: str,
    parameter: int,
    lhs_str: str,
    lhs_value: float,
    rhs: float,
    tolerance: float,
    zero_case: bool,
    extra_ok: bool = True,
) -> IdentityCertificate:
    abs_defect = abs(lhs_value - rhs)
    rel_defect = abs_defect / max(abs(lhs_value), abs(rhs), _TINY)
    if zero_case:
        passed = abs_defect <= 1e-15
    else:
        passed = rel_defect <= tolerance
    return IdentityCertificate(
        identity_id=identity_id,
        parameter=parameter,
        lhs=lhs_str,
        rhs=rhs,
        rel_defect=rel_defect,
        abs_defect=abs_defect,
        tolerance=tolerance,
        passed=passed and extra_ok,
    )


def zeta_series(s: int, rel_tol: float = 1e-13) -> float:
    """zeta(s) for integer s >= 2 by partial summation plus the integral
    tail correction K^{1-s}/(s-1).

    K is chosen so the correction's own error (<= s K^{-s}/2) is below
    rel_tol times the partial sum; terms are accumulated smallest first.
    """
    if s != int(s) or s < 2:
        raise DomainError("zeta_series requires integer s >= 2")
    if not (0.0 < rel_tol < 1.0):
        raise DomainError("rel_tol must lie in (0, 1)")
    s = int(s)
    big_k = max(2, math.ceil((s / (2.0 * rel_tol)) ** (1.0 / s)))
    while True:
        partial = _kernels.zeta_power_sum(float(s), big_k)
        if s * big_k ** float(-s) / 2.0 <= rel_tol * partial:
            break
        big_k *= 2
    return partial + big_k ** (1.0 - s) / (s - 1.0)


def zero_limit_closed_form(n: int) -> float:
    """2 n!/(2 pi)^{n+1} sin(n pi/2) zeta(n+1): the closed-form value of
    lim_{x->0} d^n/dx^n [1/(e^x - 1) - 1/x], n >= 1."""
    if n < 1:
        raise DomainError("the limit formula requires n >= 1")
    if n > MAX_FLOAT_ORDER:
        raise DomainError(f"n exceeds the binary64 cap {MAX_FLOAT_ORDER}")
    sgn = _SIN_QUARTER[n % 4]
    if sgn == 0.0:
        return 0.0
    return (
        2.0 * float(factorial(n)) * sgn * zeta_series(n + 1, 1e-14)
        / (2.0 * math.pi) ** (n + 1)
    )


def zero_limit_numeric(n: int, policy: QuadPolicy | None = None) -> float:
    """The same limit measured from the quadrature route: evaluate the
    regularized derivative at x = 1e-1, 1e-2, 1e-3 and Richardson-
    extrapolate the leading linear-in-x correction.

    Raises UnstableLimitError when the sequence is not settling (the
    decade-to-decade differences must shrink) or when the extrapolation
    disagrees with the small-x Bernoulli series by more than 1e-5.
    """
    if n < 1:
        raise DomainError("the limit requires n >= 1")
    pol = policy or QuadPolicy(abs_tol=1e-11)
    v1, v2, v3 = (reg_deriv_quadrature(n, x, pol).value for x in (0.1, 0.01, 0.001))
    noise = 20.0 * pol.abs_tol
    d1, d2 = v2 - v1, v3 - v2
    if abs(d1) > noise and abs(d2) > max(0.5 * abs(d1), noise):
        raise UnstableLimitError(
            f"limit sequence for n={n} is not settling: "
            f"decade differences {d1:.3e}, {d2:.3e}"
        )
    extrapolated = v3 + (v3 - v2) / 9.0
    series_value = reg_deriv_smallx(n, 0.0).value
    if abs(extrapolated - series_value) > 1e-5:
        raise UnstableLimitError(
            f"extrapolated limit {extrapolated!r} for n={n} disagrees with the "
            f"Bernoulli-series value {series_value!r} beyond 1e-5"
        )
    return extrapolated


def check_bernoulli_zeta(n: int, tol: float = 1e-12) -> IdentityCertificate:
    """Certificate for B_{n+1}/(n+1)! = 2/(2 pi)^{n+1} sin(n pi/2) zeta(n+1),
    n >= 1.  When n+1 is odd both sides are zeros and the certificate
    passes on absolute defect <= 1e-15."""
    if n < 1:
        raise DomainError("identity requires n >= 1")
    lhs_exact = Fraction(bernoulli(n + 1), factorial(n + 1))
    sgn = _SIN_QUARTER[n % 4]
    if sgn == 0.0:
        rhs = 0.0
    else:
        rhs = 2.0 * sgn * zeta_series(n + 1, 1e-14) / (2.0 * math.pi) ** (n + 1)
    return _certificate(
        "BernoulliZeta",
        n,
        rational_str(lhs_exact),
        float(lhs_exact),
        rhs,
        tol,
        zero_case=(n % 2 == 0),
    )


def check_euler(m: int, tol: float = 1e-12) -> IdentityCertificate:
    """Certificate for Euler's B_{2m} = (-1)^{m+1} 2 (2m)!/(2 pi)^{2m} zeta(2m),
    m >= 1.  The sign of the floating side must match the exact B_{2m}
    sign exactly, on top of the relative-defect test."""
    if m < 1:
        raise DomainError("Euler's formula requires m >= 1")
    lhs_exact = bernoulli(2 * m)
    rhs = (
        (-1.0) ** (m + 1)
        * 2.0
        * float(factorial(2 * m))
        * zeta_series(2 * m, 1e-14)
        / (2.0 * math.pi) ** (2 * m)
    )
    sign_ok = (rhs > 0) == (lhs_exact > 0) and (rhs < 0) == (lhs_exact < 0)
    return _certificate(
        "EulerEven",
        m,
        rational_str(lhs_exact),
        float(lhs_exact),
        rhs,
        tol,
        zero_case=False,
        extra_ok=sign_ok,
    )


def check_zero_limit(
    n: int, tol: float = 1e-6, policy: QuadPolicy | None = None
) -> IdentityCertificate:
    """Certificate comparing the quadrature-extrapolated limit against its
    closed form; passes on |lhs - rhs| <= max(tol, tol * |rhs|)."""
    lhs = zero_limit_numeric(n, policy)
    rhs = zero_limit_closed_form(n)
    abs_defect = abs(lhs - rhs)
    rel_defect = abs_defect / max(abs(lhs), abs(rhs), _TINY)
    return IdentityCertificate(
        identity_id="ZeroLimit",
        parameter=n,
        lhs=repr(lhs),
        rhs=rhs,
        rel_defect=rel_defect,
        abs_defect=abs_defect,
        tolerance=tol,
        passed=abs_defect <= max(tol, tol * abs(rhs)),
    )
