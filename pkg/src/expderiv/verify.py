"""Self-verification suites: every module invariant as a machine-checkable
record, aggregated into a deterministic report.

Each suite re-derives its expected values through an independent route
(set-partition enumeration, exact power-series division, direct summation,
closed-form oracles) rather than trusting the code path under test.  The
CLI ``verify`` command is a thin front end over :func:`run_suite`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .derivatives import (
    deriv_expanded,
    deriv_factored,
    deriv_series,
    expanded_coeffs,
    factored_coeffs,
    fermi_maclaurin_coeff,
    geometric_moment,
    reg_deriv_smallx,
)
from .exact import bernoulli, factorial, rational_str, stirling_table
from .errors import DomainError
from .quadrature import (
    QuadPolicy,
    deriv_quadrature,
    fourier_sine_coth_check,
    zeta_integral,
)
from .zeta import check_bernoulli_zeta, check_euler, check_zero_limit, zeta_series

__all__ = ["CheckRecord", "VerifyReport", "SUITES", "run_suite"]

_TINY = 1e-300


@dataclass(frozen=True)
class CheckRecord:
    """One verified fact: an identifier, its parameters, the observed defect
    against the stated tolerance, and optional printable sides."""

    check: str
    params: dict
    defect: float
    tol: float
    passed: bool
    lhs: str | None = None
    rhs: str | None = None


@dataclass(frozen=True)
class VerifyReport:
    suite: str
    checks: list[CheckRecord] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.checks)

    @property
    def passed(self) -> int:
        return sum(1 for c in self.checks if c.passed)

    @property
    def failed(self) -> int:
        return self.total - self.passed

    @property
    def worst_defect(self) -> float:
        return max((c.defect for c in self.checks), default=0.0)

    @property
    def all_passed(self) -> bool:
        return self.failed == 0


def _rel(a: float, b: float) -> float:
    return abs(a - b) / max(abs(a), abs(b), _TINY)


def _record_rel(check, params, a, b, tol) -> CheckRecord:
    d = _rel(a, b)
    return CheckRecord(check, params, d, tol, d <= tol, repr(a), repr(b))


def _record_abs(check, params, a, b, tol) -> CheckRecord:
    d = abs(a - b)
    return CheckRecord(check, params, d, tol, d <= tol, repr(a), repr(b))


# ---------------------------------------------------------------- oracles

def _partition_counts(n: int) -> list[int]:
    """counts[k] = number of set partitions of an n-set into k nonempty
    blocks, by direct enumeration of restricted-growth strings."""
    counts = [0] * (n + 1)
    if n == 0:
        counts[0] = 1
        return counts

    def grow(i: int, used: int):
        if i == n:
            counts[used] += 1
            return
        for block in range(used + 1):
            grow(i + 1, used if block < used else used + 1)

    grow(0, 0)
    return counts


def _bernoulli_by_series_division(n_max: int) -> list[Fraction]:
    """B_0..B_{n_max} as Taylor coefficients of x/(e^x - 1), by exact
    reciprocation of (e^x - 1)/x = sum_i x^i/(i+1)!."""
    d = [Fraction(1, math.factorial(i + 1)) for i in range(n_max + 1)]
    c = [Fraction(1)]
    for m in range(1, n_max + 1):
        c.append(-sum(d[j] * c[m - j] for j in range(1, m + 1)))
    return [c[m] * math.factorial(m) for m in range(n_max + 1)]


def _fermi_taylor_exact(mu: Fraction, lam: Fraction, n_max: int) -> list[Fraction]:
    """Maclaurin coefficients of 1/(mu e^{lam t} + 1) by exact series
    reciprocation of mu e^{lam t} + 1 = (mu+1) + sum_{i>=1} mu lam^i/i! t^i."""
    a = [mu + 1] + [mu * lam**i / math.factorial(i) for i in range(1, n_max + 1)]
    e = [Fraction(1) / a[0]]
    for m in range(1, n_max + 1):
        e.append(-sum(a[j] * e[m - j] for j in range(1, m + 1)) / a[0])
    return e


def _direct_power_sum(n: int, x: float, m_max: int = 2000) -> float:
    """sum_{m>=0} m^n x^m by brute-force partial summation."""
    total = 1.0 if n == 0 else 0.0  # m = 0 term, with 0^0 = 1
    for m in range(1, m_max + 1):
        total += float(m) ** n * x**m
    return total


# ----------------------------------------------------------------- suites

def _suite_stirling(opts: dict) -> list[CheckRecord]:
    max_n = int(opts.get("max_n") or 30)
    tri = stirling_table(max_n)
    out = []
    for m in range(max_n):
        residual = max(
            abs(
                tri.value(m + 1, k)
                - k * tri.value(m, k)
                - tri.value(m, k - 1)
            )
            for k in range(1, m + 2)
        )
        out.append(
            CheckRecord("stirling-recurrence", {"row": m + 1}, float(residual), 0.0,
                        residual == 0)
        )
    for n in range(min(max_n, 10) + 1):
        counts = _partition_counts(n)
        mismatch = sum(
            1 for k in range(n + 1) if counts[k] != tri.value(n, k)
        )
        out.append(
            CheckRecord("stirling-bruteforce", {"n": n}, float(mismatch), 0.0,
                        mismatch == 0)
        )
    diag_bad = sum(1 for n in range(max_n + 1) if tri.value(n, n) != 1)
    out.append(
        CheckRecord("stirling-diagonal", {"max_n": max_n}, float(diag_bad), 0.0,
                    diag_bad == 0)
    )
    return out


def _suite_equiv(opts: dict) -> list[CheckRecord]:
    max_n = int(opts.get("max_n") or 50)
    tri = stirling_table(max_n + 1)
    out = []
    for n in range(1, max_n + 1):
        same = expanded_coeffs(n, tri) == factored_coeffs(n, tri)
        out.append(
            CheckRecord("closed-form-equivalence", {"n": n},
                        0.0 if same else 1.0, 0.0, same)
        )
    return out


def _suite_bernoulli(opts: dict) -> list[CheckRecord]:
    max_n = int(opts.get("max_n") or 30)
    oracle = _bernoulli_by_series_division(max_n)
    out = []
    for n in range(max_n + 1):
        same = bernoulli(n) == oracle[n]
        out.append(
            CheckRecord("bernoulli-series-division", {"n": n},
                        0.0 if same else 1.0, 0.0, same,
                        rational_str(bernoulli(n)), rational_str(oracle[n]))
        )
    odd_bad = sum(1 for n in range(3, max_n + 1, 2) if bernoulli(n) != 0)
    out.append(
        CheckRecord("bernoulli-odd-zero", {"max_n": max_n}, float(odd_bad), 0.0,
                    odd_bad == 0)
    )
    return out


_CROSS_X = (0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0)


def _suite_cross(opts: dict) -> list[CheckRecord]:
    n_lo, n_hi = opts.get("n_range") or (1, 15)
    tri = stirling_table(n_hi + 1)
    out = []
    for n in range(n_lo, n_hi + 1):
        for x in _CROSS_X:
            vals = (
                deriv_expanded(n, x, tri).value,
                deriv_factored(n, x, tri).value,
                deriv_series(n, x).value,
            )
            worst = max(
                _rel(vals[i], vals[j])
                for i in range(3)
                for j in range(i + 1, 3)
            )
            out.append(
                CheckRecord("cross-method", {"n": n, "x": x}, worst, 1e-10,
                            worst <= 1e-10)
            )
    return out


def _suite_moment(opts: dict) -> list[CheckRecord]:
    out = []
    tri = stirling_table(10)
    for n in range(11):
        for x in (0.1, -0.1, 0.5, -0.5, 0.9):
            out.append(
                _record_rel("geometric-moment", {"n": n, "x": x},
                            geometric_moment(n, x, tri),
                            _direct_power_sum(n, x), 1e-12)
            )
    return out


def _suite_smallx(opts: dict) -> list[CheckRecord]:
    out = []
    tri = stirling_table(9)
    for n in range(9):
        for x in (0.05, 0.1, 0.5):
            reg = reg_deriv_smallx(n, x).value
            pole = float(Fraction((-1) ** n * factorial(n)) / Fraction(x) ** (n + 1))
            out.append(
                _record_rel("smallx-consistency", {"n": n, "x": x},
                            reg + pole, deriv_expanded(n, x, tri).value, 1e-8)
            )
    return out


_FERMI_PAIRS = ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(1, 2)),
                (Fraction(1, 2), Fraction(3)))


def _suite_maclaurin(opts: dict) -> list[CheckRecord]:
    out = []
    tri = stirling_table(6)
    for lam, mu in _FERMI_PAIRS:
        oracle = _fermi_taylor_exact(mu, lam, 6)
        for n in range(7):
            got = fermi_maclaurin_coeff(n, float(lam), float(mu), tri)
            want = float(oracle[n])
            d = abs(got - want)
            tol = max(1e-12, 1e-12 * abs(want))
            out.append(
                CheckRecord("maclaurin-coefficient",
                            {"n": n, "lambda": float(lam), "mu": float(mu)},
                            d, tol, d <= tol, repr(got), repr(want))
            )
    return out


def _suite_quad(opts: dict) -> list[CheckRecord]:
    n_hi = int(opts.get("max_n") or 8)
    tri = stirling_table(n_hi + 1)
    out = []
    for n in range(1, n_hi + 1):
        for x in (0.25, 0.5, 1.0, 2.0, 5.0):
            q = deriv_quadrature(n, x).value
            c = deriv_expanded(n, x, tri).value
            d = abs(q - c)
            tol = max(1e-8, 1e-8 * max(abs(q), abs(c)))
            out.append(
                CheckRecord("quadrature-vs-closed", {"n": n, "x": x}, d, tol,
                            d <= tol, repr(q), repr(c))
            )
    return out


def _suite_fourier(opts: dict) -> list[CheckRecord]:
    return [
        CheckRecord("fourier-sine-coth", {"x": x},
                    fourier_sine_coth_check(x), 1e-10,
                    fourier_sine_coth_check(x) <= 1e-10)
        for x in (0.5, 1.0, 2.0)
    ]


def _suite_zeta(opts: dict) -> list[CheckRecord]:
    out = []
    for s in (2, 3, 4, 6, 11, 20):
        out.append(
            _record_rel("zeta-integral-vs-series", {"s": s},
                        zeta_integral(float(s)), zeta_series(s, 1e-13), 1e-8)
        )
    return out


def _cert_record(cert) -> CheckRecord:
    return CheckRecord(
        check=f"identity-{cert.identity_id}",
        params={"parameter": cert.parameter},
        defect=cert.rel_defect if cert.identity_id != "ZeroLimit" else cert.abs_defect,
        tol=cert.tolerance,
        passed=cert.passed,
        lhs=cert.lhs,
        rhs=repr(cert.rhs),
    )


def _suite_bz(opts: dict) -> list[CheckRecord]:
    max_n = int(opts.get("max_n") or 25)
    return [_cert_record(check_bernoulli_zeta(n)) for n in range(1, max_n + 1)]


def _suite_euler(opts: dict) -> list[CheckRecord]:
    max_m = int(opts.get("max_m") or 15)
    return [_cert_record(check_euler(m)) for m in range(1, max_m + 1)]


def _suite_limit(opts: dict) -> list[CheckRecord]:
    max_n = int(opts.get("max_n") or 6)
    return [_cert_record(check_zero_limit(n)) for n in range(1, max_n + 1)]


SUITES = {
    "stirling": _suite_stirling,
    "equiv": _suite_equiv,
    "bernoulli": _suite_bernoulli,
    "cross": _suite_cross,
    "moment": _suite_moment,
    "smallx": _suite_smallx,
    "maclaurin": _suite_maclaurin,
    "quad": _suite_quad,
    "fourier": _suite_fourier,
    "zeta": _suite_zeta,
    "bernoulli-zeta": _suite_bz,
    "euler": _suite_euler,
    "limit": _suite_limit,
}


def run_suite(name: str, **opts) -> VerifyReport:
    """Run one named suite (or ``all``) and return its report."""
    if name == "all":
        checks: list[CheckRecord] = []
        for key in SUITES:
            checks.extend(SUITES[key](opts))
        return VerifyReport(suite="all", checks=checks)
    if name not in SUITES:
        raise DomainError(
            f"unknown suite {name!r}; choose from {', '.join([*SUITES, 'all'])}"
        )
    return VerifyReport(suite=name, checks=SUITES[name](opts))
