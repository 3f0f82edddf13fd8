"""Truncated formal power series in t with MultiPoly coefficients.

A :class:`TruncatedSeries` of order N keeps the plain coefficients of
t^0 .. t^N.  Operands of binary operations must share the same order; the
one exception is :func:`div_exact`, whose quotient is only determined to
order ``N - val(g)`` and is returned at that order.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Callable, Iterable, List, Sequence, Union

from .ring import LAM, LAMBDA, ONE, X, Y, ZERO, MultiPoly

Coefficient = Union[MultiPoly, int, Fraction]


class SeriesError(ValueError):
    """Raised when a series operation's precondition does not hold."""


def _as_poly(c: Coefficient) -> MultiPoly:
    return c if isinstance(c, MultiPoly) else MultiPoly(c)


class TruncatedSeries:
    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence[Coefficient], order: int = None):
        coeffs = [_as_poly(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise SeriesError("truncation order must be non-negative")
        if len(coeffs) > order + 1:
            raise SeriesError(f"{len(coeffs)} coefficients do not fit order {order}")
        coeffs.extend([ZERO] * (order + 1 - len(coeffs)))
        self.order = order
        self.coeffs = tuple(coeffs)

    @classmethod
    def constant(cls, c: Coefficient, order: int) -> "TruncatedSeries":
        return cls([c], order)

    @classmethod
    def variable(cls, order: int) -> "TruncatedSeries":
        """The series t itself."""
        return cls([0, 1] if order >= 1 else [0], order)

    @classmethod
    def zero(cls, order: int) -> "TruncatedSeries":
        return cls([], order)

    def __getitem__(self, n: int) -> MultiPoly:
        return self.coeffs[n]

    def __len__(self) -> int:
        return self.order + 1

    def __iter__(self):
        return iter(self.coeffs)

    def valuation(self) -> Union[int, float]:
        """Index of the lowest non-zero coefficient (inf for the zero series)."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return float("inf")

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def truncate(self, order: int) -> "TruncatedSeries":
        if order > self.order:
            raise SeriesError(f"cannot raise truncation order {self.order} to {order}")
        return TruncatedSeries(self.coeffs[: order + 1], order)

    def map(self, fn: Callable[[MultiPoly], MultiPoly]) -> "TruncatedSeries":
        return TruncatedSeries([fn(c) for c in self.coeffs], self.order)

    def derivative(self) -> "TruncatedSeries":
        """d/dt, one order lower."""
        if self.order == 0:
            raise SeriesError("derivative of an order-0 series is undefined")
        return TruncatedSeries([c * n for n, c in enumerate(self.coeffs) if n], self.order - 1)

    def integral(self) -> "TruncatedSeries":
        """Antiderivative with zero constant term, one order higher."""
        return TruncatedSeries(
            [ZERO] + [c / (n + 1) for n, c in enumerate(self.coeffs)], self.order + 1
        )

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "TruncatedSeries") -> None:
        if self.order != other.order:
            raise SeriesError(f"order mismatch: {self.order} vs {other.order}")

    def _lift(self, other) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            self._check(other)
            return other
        if isinstance(other, (MultiPoly, int, Fraction)):
            return TruncatedSeries.constant(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-c for c in self.coeffs], self.order)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return TruncatedSeries([a - b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, (MultiPoly, int, Fraction)):
            return TruncatedSeries([c * other for c in self.coeffs], self.order)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        a, b = self.coeffs, other.coeffs
        nz_a = [i for i, c in enumerate(a) if c]
        nz_b = [j for j, c in enumerate(b) if c]
        out = [ZERO] * (self.order + 1)
        for i in nz_a:
            ai = a[i]
            for j in nz_b:
                if i + j > self.order:
                    break
                out[i + j] = out[i + j] + ai * b[j]
        return TruncatedSeries(out, self.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([c / other for c in self.coeffs], self.order)
        if isinstance(other, TruncatedSeries):
            return div_exact(self, other)
        return NotImplemented

    def __pow__(self, r: int) -> "TruncatedSeries":
        return int_pow(self, r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs))

    # -- display / serialization --------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [c.to_json() for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "TruncatedSeries":
        return cls([MultiPoly.from_json(c) for c in data["coeffs"]], data["order"])

    def __repr__(self) -> str:
        body = ", ".join(str(c) for c in self.coeffs)
        return f"TruncatedSeries(order={self.order}, [{body}])"


def series_arith(f: TruncatedSeries, g: TruncatedSeries, op: str) -> TruncatedSeries:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown series operation {op!r}")


def _unit_inverse(c: MultiPoly) -> Fraction:
    if not c or not c.is_constant():
        raise SeriesError(f"leading coefficient {c} is not a unit")
    return 1 / c.constant_value()


def _divide_unit(f: Sequence[MultiPoly], g: Sequence[MultiPoly]) -> List[MultiPoly]:
    # g[0] is a non-zero rational constant; len(f) == len(g)
    inv = _unit_inverse(g[0])
    nz_g = [k for k in range(1, len(g)) if g[k]]
    h: List[MultiPoly] = []
    for n in range(len(f)):
        acc = f[n]
        for k in nz_g:
            if k > n:
                break
            if h[n - k]:
                acc = acc - g[k] * h[n - k]
        h.append(acc * inv)
    return h


def div_exact(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """The quotient h with f = g*h, known exactly up to order N - val(g).

    The lowest non-zero coefficient of g has to be a non-zero rational
    constant, and f must vanish to at least the same order as g.
    """
    if f.order != g.order:
        raise SeriesError(f"order mismatch: {f.order} vs {g.order}")
    v = g.valuation()
    if v == float("inf"):
        raise SeriesError("division by the zero series")
    if f.valuation() < v:
        raise SeriesError(f"valuation of numerator {f.valuation()} is below that of divisor {v}")
    _unit_inverse(g.coeffs[v])
    return TruncatedSeries(_divide_unit(f.coeffs[v:], g.coeffs[v:]), f.order - v)


def _require_no_constant(u: TruncatedSeries, what: str) -> None:
    if u.coeffs[0]:
        raise SeriesError(f"{what} needs a series with zero constant term, got {u.coeffs[0]}")


def compose(g: TruncatedSeries, f: TruncatedSeries) -> TruncatedSeries:
    """g(f(t)) by Horner's rule."""
    if f.order != g.order:
        raise SeriesError(f"order mismatch: {g.order} vs {f.order}")
    _require_no_constant(f, "compose")
    result = TruncatedSeries.constant(g.coeffs[-1], g.order)
    for c in reversed(g.coeffs[:-1]):
        result = result * f + c
    return result


def exp(u: TruncatedSeries) -> TruncatedSeries:
    """exp(u) via n*E_n = sum_k k*u_k*E_{n-k}, which follows from E' = u'E."""
    _require_no_constant(u, "exp")
    nz = [k for k in range(1, u.order + 1) if u.coeffs[k]]
    e = [ONE]
    for n in range(1, u.order + 1):
        acc = ZERO
        for k in nz:
            if k > n:
                break
            if e[n - k]:
                acc = acc + u.coeffs[k] * e[n - k] * k
        e.append(acc / n)
    return TruncatedSeries(e, u.order)


def _log_of_unit(u: TruncatedSeries, scale: MultiPoly) -> TruncatedSeries:
    # integral of u' / (1 + scale*u)
    if u.order == 0:
        return TruncatedSeries.zero(0)
    du = u.derivative()
    denom = (u * scale + 1).truncate(u.order - 1)
    return TruncatedSeries(_divide_unit(du.coeffs, denom.coeffs), u.order - 1).integral()


def log1p(u: TruncatedSeries) -> TruncatedSeries:
    """log(1 + u) for u with zero constant term."""
    _require_no_constant(u, "log1p")
    return _log_of_unit(u, ONE)


def scaled_log(u: TruncatedSeries) -> TruncatedSeries:
    """(1/lam) * log(1 + lam*u), a series with coefficients polynomial in lam."""
    _require_no_constant(u, "scaled_log")
    return _log_of_unit(u, LAMBDA)


def _check_exponent(a: MultiPoly) -> None:
    if not (a.free_of(LAM) and a.degree(X) <= 1 and a.degree(Y) <= 1):
        raise SeriesError(f"exponent {a} is not of the form c0 + c1*x + c2*y")
    if any(e[X] and e[Y] for e in a.terms):
        raise SeriesError(f"exponent {a} is not of the form c0 + c1*x + c2*y")


def sym_binom_pow(u: TruncatedSeries, a: Coefficient) -> TruncatedSeries:
    """(1 + lam*u)^(a/lam), defined as exp(a * scaled_log(u))."""
    a = _as_poly(a)
    _check_exponent(a)
    _require_no_constant(u, "sym_binom_pow")
    if not a:
        return TruncatedSeries.constant(1, u.order)
    return exp(scaled_log(u) * a)


def int_pow(f: TruncatedSeries, r: int) -> TruncatedSeries:
    """f^r for any integer r; negative r needs a unit constant term."""
    if r < 0:
        if f.valuation() != 0:
            raise SeriesError("negative power of a series without unit constant term")
        f = div_exact(TruncatedSeries.constant(1, f.order), f)
        r = -r
    result = TruncatedSeries.constant(1, f.order)
    base = f
    while r:
        if r & 1:
            result = result * base
        r >>= 1
        if r:
            base = base * base
    return result


def egf_coefficient(f: TruncatedSeries, n: int) -> MultiPoly:
    """n! times the coefficient of t^n."""
    if not 0 <= n <= f.order:
        raise SeriesError(f"index {n} outside 0..{f.order}")
    return f.coeffs[n] * factorial(n)


def from_egf(values: Iterable[Coefficient], order: int = None) -> TruncatedSeries:
    """Series whose n-th EGF coefficient is values[n]."""
    return TruncatedSeries(
        [_as_poly(v) / factorial(n) for n, v in enumerate(values)], order
    )


def t_series(order: int) -> TruncatedSeries:
    return TruncatedSeries.variable(order)


def log1p_t(order: int) -> TruncatedSeries:
    return log1p(t_series(order))


def expm1_t(order: int) -> TruncatedSeries:
    return exp(t_series(order)) - 1


__all__ = [
    "SeriesError",
    "TruncatedSeries",
    "compose",
    "div_exact",
    "egf_coefficient",
    "exp",
    "expm1_t",
    "from_egf",
    "int_pow",
    "log1p",
    "log1p_t",
    "scaled_log",
    "series_arith",
    "sym_binom_pow",
    "t_series",
]
