"""Terminating hypergeometric polynomials, Pochhammer symbols and log-gamma.

Every closed-form wavefunction in this package is a finite polynomial in its
hypergeometric argument, so only the terminating series are provided. The
float path accumulates terms through their ratio to keep intermediate values
bounded and in double-double precision, so heavy cancellation between
alternating terms costs no accuracy at double output; the exact path uses :class:`fractions.Fraction` and is meant for test
oracles.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DomainError

__all__ = [
    "PolyCoefficients",
    "pochhammer",
    "hyp2f1_terminating",
    "hyp1f1_terminating",
    "hyp2f1_coefficients",
    "hyp1f1_coefficients",
    "hyp2f1_exact",
    "hyp1f1_exact",
    "log_gamma",
]


@dataclass(frozen=True)
class PolyCoefficients:
    """Power-series coefficients; ``coefficients[j]`` multiplies ``x**j``."""

    degree: int
    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")

    def __call__(self, x):
        # Horner, highest power first
        x = np.asarray(x, dtype=float)
        acc = np.zeros_like(x)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc if acc.ndim else float(acc)


def pochhammer(a: float, m: int) -> float:
    """Rising factorial ``a (a+1) ... (a+m-1)``; equals 1 for ``m == 0``."""
    if m < 0:
        raise DomainError(f"pochhammer order must be >= 0, got {m}")
    result = 1.0
    for j in range(m):
        result *= a + j
    return result


def _check_degree(n: int) -> None:
    if int(n) != n or n < 0:
        raise DomainError(f"polynomial degree must be a nonnegative integer, got {n!r}")


def _check_lower(c, n: int) -> None:
    for j in range(n):
        if c + j == 0:
            raise DomainError(
                f"lower parameter c={c} makes (c)_{j + 1} vanish inside a degree-{n} sum"
            )


def _ratio_coefficients(n: int, b, c) -> list:
    """Coefficients of 2F1(-n, b; c; x), or 1F1(-n; c; x) when ``b is None``."""
    coeffs = [1.0]
    term = 1.0
    for j in range(n):
        term = term * (j - n) / ((c + j) * (j + 1))
        if b is not None:
            term *= b + j
        coeffs.append(term)
    return coeffs


def hyp2f1_coefficients(n: int, b: float, c: float) -> PolyCoefficients:
    _check_degree(n)
    _check_lower(c, n)
    return PolyCoefficients(int(n), tuple(_ratio_coefficients(int(n), b, c)))


def hyp1f1_coefficients(n: int, c: float) -> PolyCoefficients:
    _check_degree(n)
    _check_lower(c, n)
    return PolyCoefficients(int(n), tuple(_ratio_coefficients(int(n), None, c)))


# Double-double arithmetic: a value is an unevaluated sum hi + lo. Alternating
# polynomial sums cancel heavily (terms ~1e6 summing to O(1) at n = 13), so
# terms and partial sums are carried at about 32 significant digits.
_SPLIT = 134217729.0  # 2**27 + 1


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _fast_two_sum(a, b):
    s = a + b
    return s, b - (s - a)


def _split(a):
    t = _SPLIT * a
    hi = t - (t - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def _dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    return _fast_two_sum(s, e + x[1] + y[1])


def _dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    return _fast_two_sum(p, e + x[0] * y[1] + x[1] * y[0])


def _dd_div(x, y):
    q1 = x[0] / y[0]
    r = _dd_add(x, _dd_mul(y, (-q1, 0.0 * q1)))
    q2 = r[0] / y[0]
    r = _dd_add(r, _dd_mul(y, (-q2, 0.0 * q2)))
    q3 = r[0] / y[0]
    hi, lo = _fast_two_sum(q1, q2)
    return _dd_add((hi, lo), (q3, 0.0 * q3))


def _sum_by_ratio(n: int, b, c, x):
    x = np.asarray(x, dtype=float)
    zero = np.zeros_like(x)
    xx = (x, zero)
    total = (np.ones_like(x), zero)
    term = total
    for j in range(n):
        num = (float(j - n), 0.0)
        if b is not None:
            num = _dd_mul(num, _two_sum(float(b), float(j)))
        den = _dd_mul(_two_sum(float(c), float(j)), (float(j + 1), 0.0))
        term = _dd_mul(_dd_mul(term, xx), _dd_div(num, den))
        total = _dd_add(total, term)
    out = total[0] + total[1]
    return out if out.ndim else float(out)


def hyp2f1_terminating(n: int, b: float, c: float, x):
    """Evaluate ``2F1(-n, b; c; x)`` as an exact finite sum.

    Args:
        n: Degree of the polynomial (the first upper parameter is ``-n``).
        b: Second upper parameter.
        c: Lower parameter; must not be 0, -1, ..., -(n-1).
        x: Scalar or array argument. No radius restriction applies.

    Raises:
        DomainError: A Pochhammer factor in the denominator vanishes.
    """
    _check_degree(n)
    _check_lower(c, n)
    return _sum_by_ratio(int(n), b, c, x)


def hyp1f1_terminating(n: int, c: float, x):
    """Evaluate Kummer's ``1F1(-n; c; x)`` as an exact finite sum."""
    _check_degree(n)
    _check_lower(c, n)
    return _sum_by_ratio(int(n), None, c, x)


def _exact_sum(n: int, b, c, x) -> Fraction:
    x = Fraction(x)
    c = Fraction(c)
    b = None if b is None else Fraction(b)
    total = Fraction(1)
    term = Fraction(1)
    for j in range(n):
        term = term * (j - n) * x / ((c + j) * (j + 1))
        if b is not None:
            term *= b + j
        total += term
    return total


def hyp2f1_exact(n: int, b, c, x) -> Fraction:
    """Rational-arithmetic ``2F1(-n, b; c; x)``.

    Inputs may be ints, Fractions, or decimal strings such as ``"0.1"``; the
    result carries no rounding error.
    """
    _check_degree(n)
    _check_lower(Fraction(c), n)
    return _exact_sum(int(n), b, c, x)


def hyp1f1_exact(n: int, c, x) -> Fraction:
    """Rational-arithmetic ``1F1(-n; c; x)``."""
    _check_degree(n)
    _check_lower(Fraction(c), n)
    return _exact_sum(int(n), None, c, x)


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for positive real ``x``.

    Raises:
        DomainError: ``x <= 0``. Normalization arguments of valid bound states
            are always positive, so this flags an upstream parameter problem.
    """
    if not x > 0:
        raise DomainError(f"log_gamma needs x > 0, got {x}")
    return math.lgamma(x)


def log_gamma_sum(plus: Sequence[float], minus: Sequence[float] = ()) -> float:
    """``sum(log_gamma(plus)) - sum(log_gamma(minus))``."""
    return math.fsum(log_gamma(a) for a in plus) - math.fsum(log_gamma(a) for a in minus)
