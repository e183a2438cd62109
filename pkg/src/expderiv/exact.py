"""Exact combinatorial substrate.

Arbitrary-precision integers and rationals (Python ``int`` and
``fractions.Fraction``) carrying Stirling numbers of the second kind,
geometric-polynomial coefficients, factorials, binomials, and Bernoulli
numbers.  Everything in this module is exact; binary64 enters only through
the dedicated evaluation helper :func:`eval_geometric_polynomial`.

All containers are immutable after construction, so a triangle built once
can be shared freely between threads.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, UnsupportedOrderError

__all__ = [
    "StirlingTriangle",
    "GeometricPolynomial",
    "stirling_table",
    "geometric_polynomial",
    "eval_geometric_polynomial",
    "bernoulli",
    "factorial",
    "binomial",
    "rational_str",
    "parse_rational",
    "MAX_FLOAT_ORDER",
]

# Factorial overflow boundary of binary64: 170! is finite, 171! is not.
# Floating evaluation paths elsewhere in the package refuse larger orders.
MAX_FLOAT_ORDER = 170


def factorial(n: int) -> int:
    """Exact n! for n >= 0."""
    if n < 0:
        raise DomainError("factorial requires n >= 0")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    """Exact binomial coefficient C(n, k); zero outside 0 <= k <= n."""
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class StirlingTriangle:
    """Exact jagged table of S(m, k) for 0 <= k <= m <= max_order.

    Built by :func:`stirling_table`; rows are tuples of Python ints and the
    instance is never mutated afterwards.
    """

    __slots__ = ("rows", "max_order")

    def __init__(self, rows: tuple[tuple[int, ...], ...]):
        self.rows = rows
        self.max_order = len(rows) - 1

    def value(self, m: int, k: int) -> int:
        """S(m, k), with the usual conventions S(m, k) = 0 for k > m or k < 0."""
        if m < 0 or m > self.max_order:
            raise DomainError(
                f"S({m}, {k}) outside triangle of max_order {self.max_order}"
            )
        if k < 0 or k > m:
            return 0
        return self.rows[m][k]

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"StirlingTriangle(max_order={self.max_order})"


@lru_cache(maxsize=None)
def stirling_table(max_order: int) -> StirlingTriangle:
    """Complete exact triangle of S(m, k) up to ``max_order``.

    Built bottom-up from S(0, 0) = 1 with the recurrence
    S(m+1, k) = k*S(m, k) + S(m, k-1).  Cached: repeated calls share one
    immutable instance.
    """
    if max_order < 0:
        raise DomainError("max_order must be >= 0")
    rows: list[tuple[int, ...]] = [(1,)]
    for m in range(max_order):
        prev = rows[m]
        nxt = [0] * (m + 2)
        for k in range(1, m + 2):
            nxt[k] = k * (prev[k] if k <= m else 0) + prev[k - 1]
        rows.append(tuple(nxt))
    return StirlingTriangle(tuple(rows))


@dataclass(frozen=True)
class GeometricPolynomial:
    """Exact coefficient vector a_k = S(n, k) * k! of the order-n geometric polynomial.

    a_0 = 1 for n = 0 and a_0 = 0 otherwise; a_n = n!; all a_k >= 0.
    Values at 1 are the ordered Bell (Fubini) numbers.
    """

    order: int
    coeffs: tuple[int, ...]


def geometric_polynomial(n: int, triangle: StirlingTriangle) -> GeometricPolynomial:
    """Geometric polynomial of order n, exact, from a prebuilt triangle."""
    if n < 0:
        raise DomainError("polynomial order must be >= 0")
    if n > triangle.max_order:
        raise DomainError(
            f"order {n} exceeds triangle max_order {triangle.max_order}"
        )
    row = triangle.rows[n]
    coeffs = tuple(row[k] * math.factorial(k) for k in range(n + 1))
    return GeometricPolynomial(order=n, coeffs=coeffs)


def eval_geometric_polynomial(p: GeometricPolynomial, x: float) -> float:
    """Horner evaluation of sum_k a_k x^k in binary64.

    Requires every coefficient to be finite once rounded to binary64; the
    coefficients grow like the Fubini numbers, which pass the binary64 range
    near order 160.
    """
    try:
        fc = [float(c) for c in p.coeffs]
    except OverflowError as exc:
        raise UnsupportedOrderError(
            f"geometric polynomial coefficients of order {p.order} "
            "exceed the binary64 range"
        ) from exc
    acc = 0.0
    for c in reversed(fc):
        acc = acc * x + c
    return acc


# Bernoulli numbers, first convention (B_1 = -1/2), grown on demand with the
# recurrence sum_{j=0}^{n} C(n+1, j) B_j = 0.  New entries are computed into
# a local list and appended under a lock so concurrent readers only ever see
# finished values.
_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli(n: int) -> Fraction:
    """Exact Bernoulli number B_n (B_0 = 1, B_1 = -1/2, odd B_n = 0 for n >= 3)."""
    if n < 0:
        raise DomainError("Bernoulli index must be >= 0")
    if n < len(_BERNOULLI):
        return _BERNOULLI[n]
    with _BERNOULLI_LOCK:
        while len(_BERNOULLI) <= n:
            m = len(_BERNOULLI)
            acc = Fraction(0)
            for j in range(m):
                acc += math.comb(m + 1, j) * _BERNOULLI[j]
            _BERNOULLI.append(-acc / (m + 1))
    return _BERNOULLI[n]


def rational_str(q: Fraction | int) -> str:
    """Canonical decimal-string form: reduced "p/q", or "p" when q == 1."""
    return str(Fraction(q))


def parse_rational(s: str) -> Fraction:
    """Inverse of :func:`rational_str`."""
    return Fraction(s)
