"""Generators for the Bernoulli/Daehee families and the Stirling triangles.

Every family is produced by building its generating function with the
series engine and reading off EGF coefficients; there are no fast paths.
A family value is a :class:`MultiPoly` in lam and x (the families that are
numbers simply do not involve x).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List, Tuple

from .ring import LAMBDA, ONE, XVAR, ZERO, MultiPoly, Scalar, substitute_x_affine
from .series import (
    SeriesError,
    TruncatedSeries,
    div_exact,
    egf_coefficient,
    exp,
    expm1_t,
    int_pow,
    log1p,
    log1p_t,
    scaled_log,
    sym_binom_pow,
    t_series,
)


class Family(str, enum.Enum):
    BERNOULLI = "bernoulli"
    BERNOULLI_2ND = "bernoulli2nd"
    HIGHER_BERNOULLI = "higher_bernoulli"
    DEGEN_BERNOULLI = "degen_bernoulli"
    HIGHER_DEGEN_BERNOULLI = "higher_degen_bernoulli"
    DAEHEE = "daehee"
    HIGHER_DAEHEE = "higher_daehee"
    DEGEN_DAEHEE_1ST = "degen_daehee_1st"
    DEGEN_DAEHEE_2ND = "degen_daehee_2nd"
    HIGHER_DEGEN_DAEHEE_2ND = "higher_degen_daehee_2nd"

    @property
    def is_higher(self) -> bool:
        return self.value.startswith("higher_")


@dataclass(frozen=True)
class FamilyId:
    name: Family
    order_r: int = 1

    def __post_init__(self):
        object.__setattr__(self, "name", Family(self.name))
        if not self.name.is_higher and self.order_r != 1:
            raise ValueError(f"{self.name.value} does not take an order (got r={self.order_r})")


class TriangleKind(str, enum.Enum):
    STIRLING1 = "stirling1"
    STIRLING2 = "stirling2"
    DEGEN_STIRLING2 = "degen_stirling2"


@dataclass(frozen=True)
class Triangle:
    kind: TriangleKind
    rows: Tuple[Tuple[MultiPoly, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def __call__(self, n: int, k: int) -> MultiPoly:
        """Entry (n, k), zero above the diagonal or for negative k."""
        if k < 0 or k > n:
            return ZERO
        return self.rows[n][k]


def falling_factorial(n: int, degenerate: bool = False, at=None) -> MultiPoly:
    """(x)_n, or the lam-analogue x(x-lam)...(x-(n-1)lam) when degenerate.

    ``at`` replaces x by a rational or by another polynomial (e.g. y).
    """
    if at is None:
        base = XVAR
    else:
        base = at if isinstance(at, MultiPoly) else MultiPoly(at)
    step = LAMBDA if degenerate else ONE
    result = ONE
    for i in range(n):
        result = result * (base - step * i)
    return result


# -- triangles -------------------------------------------------------------


@lru_cache(maxsize=None)
def _stirling1_rows(n_max: int) -> Tuple[Tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(n_max):
        prev = rows[-1]
        row = []
        for k in range(n + 2):
            left = prev[k - 1] if k >= 1 else 0
            here = prev[k] if k <= n else 0
            row.append(left - n * here)
        rows.append(tuple(row))
    return tuple(rows)


@lru_cache(maxsize=None)
def _stirling2_rows(n_max: int) -> Tuple[Tuple[int, ...], ...]:
    rows = [(1,)]
    for n in range(n_max):
        prev = rows[-1]
        row = []
        for k in range(n + 2):
            left = prev[k - 1] if k >= 1 else 0
            here = prev[k] if k <= n else 0
            row.append(k * here + left)
        rows.append(tuple(row))
    return tuple(rows)


def _triangle_from_kernel(kind: TriangleKind, kernel: TruncatedSeries) -> Triangle:
    # rows[n][m] = n! [t^n] kernel^m / m!
    n_max = kernel.order
    cols = []
    power = TruncatedSeries.constant(1, n_max)
    for m in range(n_max + 1):
        cols.append([egf_coefficient(power, n) / factorial(m) for n in range(n_max + 1)])
        power = power * kernel
    rows = tuple(tuple(cols[k][n] for k in range(n + 1)) for n in range(n_max + 1))
    return Triangle(kind, rows)


@lru_cache(maxsize=None)
def triangle(kind: TriangleKind, n_max: int) -> Triangle:
    """Stirling triangles of the first kind (signed), second kind, and the
    degenerate second kind built from ((1+lam*t)^(1/lam) - 1)^m / m!."""
    kind = TriangleKind(kind)
    if kind is TriangleKind.STIRLING1:
        rows = _stirling1_rows(n_max)
    elif kind is TriangleKind.STIRLING2:
        rows = _stirling2_rows(n_max)
    else:
        return _triangle_from_kernel(kind, sym_binom_pow(t_series(n_max), 1) - 1)
    return Triangle(kind, tuple(tuple(MultiPoly(v) for v in row) for row in rows))


def triangle_from_series(kind: TriangleKind, n_max: int) -> Triangle:
    """Independent path: S1 from log(1+t)^m/m!, S2 from (e^t-1)^m/m!."""
    kind = TriangleKind(kind)
    if kind is TriangleKind.STIRLING1:
        kernel = log1p_t(n_max)
    elif kind is TriangleKind.STIRLING2:
        kernel = expm1_t(n_max)
    else:
        kernel = sym_binom_pow(t_series(n_max), 1) - 1
    return _triangle_from_kernel(kind, kernel)


# -- generating functions --------------------------------------------------
#
# A kernel like t/(e^t - 1) is a quotient of two series of valuation 1, so it
# is computed from operands one order higher to come out at order N.


def _bernoulli_kernel(N: int) -> TruncatedSeries:
    return div_exact(t_series(N + 1), expm1_t(N + 1))


def _bernoulli_2nd_kernel(N: int) -> TruncatedSeries:
    return div_exact(t_series(N + 1), log1p_t(N + 1))


def _degen_bernoulli_kernel(N: int) -> TruncatedSeries:
    t = t_series(N + 1)
    return div_exact(t, sym_binom_pow(t, 1) - 1)


def _daehee_kernel(N: int) -> TruncatedSeries:
    return div_exact(log1p_t(N + 1), t_series(N + 1))


def _degen_daehee_2nd_kernel(N: int) -> TruncatedSeries:
    log_t = log1p_t(N + 1)
    return div_exact(log_t, sym_binom_pow(log_t, 1) - 1)


_KERNELS = {
    Family.BERNOULLI: _bernoulli_kernel,
    Family.HIGHER_BERNOULLI: _bernoulli_kernel,
    Family.DEGEN_BERNOULLI: _degen_bernoulli_kernel,
    Family.HIGHER_DEGEN_BERNOULLI: _degen_bernoulli_kernel,
    Family.DAEHEE: _daehee_kernel,
    Family.HIGHER_DAEHEE: _daehee_kernel,
    Family.DEGEN_DAEHEE_2ND: _degen_daehee_2nd_kernel,
    Family.HIGHER_DEGEN_DAEHEE_2ND: _degen_daehee_2nd_kernel,
}


def argument_factor(name: Family, exponent: MultiPoly, N: int) -> TruncatedSeries:
    """The factor carrying the polynomial argument: e^{at}, (1+t)^a,
    (1+lam*t)^{a/lam} or (1+lam*log(1+t))^{a/lam}."""
    t = t_series(N)
    if name in (Family.BERNOULLI, Family.HIGHER_BERNOULLI):
        return exp(t * exponent)
    if name in (Family.DAEHEE, Family.HIGHER_DAEHEE):
        return exp(log1p(t) * exponent)
    if name in (Family.DEGEN_BERNOULLI, Family.HIGHER_DEGEN_BERNOULLI):
        return sym_binom_pow(t, exponent)
    if name in (Family.DEGEN_DAEHEE_2ND, Family.HIGHER_DEGEN_DAEHEE_2ND):
        return sym_binom_pow(log1p(t), exponent)
    raise ValueError(f"{name.value} has no polynomial argument")


def series_with_argument(fid: FamilyId, N: int, exponent: MultiPoly = XVAR) -> TruncatedSeries:
    """A polynomial family's generating function with x replaced by ``exponent``."""
    kernel = int_pow(_KERNELS[fid.name](N), fid.order_r)
    return kernel * argument_factor(fid.name, exponent, N)


@lru_cache(maxsize=256)
def generating_series(fid: FamilyId, n_max: int) -> TruncatedSeries:
    """The family's generating function truncated at t^n_max."""
    if n_max < 0:
        raise SeriesError("n_max must be non-negative")
    if isinstance(fid, (str, Family)):
        fid = FamilyId(fid)
    if fid.name is Family.BERNOULLI_2ND:
        return _bernoulli_2nd_kernel(n_max)
    if fid.name is Family.DEGEN_DAEHEE_1ST:
        # lam*log(1 + log(1+lam*t)/lam) / log(1+lam*t) = log(1+s)/s, s = log(1+lam*t)/lam
        s = scaled_log(t_series(n_max + 1))
        return div_exact(log1p(s), s)
    return series_with_argument(fid, n_max)


def family_value(fid: FamilyId, n: int, n_max: int = None) -> MultiPoly:
    """The n-th member of a family (EGF coefficient)."""
    if isinstance(fid, (str, Family)):
        fid = FamilyId(fid)
    if n_max is None:
        n_max = n
    if not 0 <= n <= n_max:
        raise SeriesError(f"index {n} outside 0..{n_max}")
    return egf_coefficient(generating_series(fid, n_max), n)


def family_values(fid: FamilyId, n_max: int) -> List[MultiPoly]:
    if isinstance(fid, (str, Family)):
        fid = FamilyId(fid)
    f = generating_series(fid, n_max)
    return [egf_coefficient(f, n) for n in range(n_max + 1)]


@lru_cache(maxsize=None)
def higher_bernoulli_value(n: int, alpha: int, x_shift: Scalar = 0, with_x: bool = True) -> MultiPoly:
    """B_n^(alpha)(x + x_shift), or B_n^(alpha)(x_shift) when ``with_x`` is False.

    Built per (n, alpha) from (t/(e^t-1))^alpha e^{xt}; alpha may be any
    integer, including values tied to n.
    """
    p = family_value(FamilyId(Family.HIGHER_BERNOULLI, alpha), n)
    return substitute_x_affine(p, x_shift, 1 if with_x else 0)


def bernoulli_2nd_value(n: int) -> Fraction:
    """b_n from t/log(1+t)."""
    return family_value(FamilyId(Family.BERNOULLI_2ND), n).constant_value()
