"""Exact coefficient arithmetic: rationals and sparse polynomials in lam, x, y.

Rationals are :class:`fractions.Fraction`, which already keeps values
reduced with a positive denominator.  :class:`MultiPoly` stores a map from
exponent triples ``(deg_lam, deg_x, deg_y)`` to non-zero rationals, so two
polynomials are equal exactly when their term maps are equal.
"""

from __future__ import annotations

import operator
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, Iterable, Iterator, List, Tuple, Union

Rational = Fraction
Exponent = Tuple[int, int, int]
Scalar = Union[int, Fraction]

LAM, X, Y = 0, 1, 2
VARIABLE_NAMES = ("λ", "x", "y")

_RAT_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
    "div": operator.truediv,
}


def rat_arith(a: Scalar, b: Scalar, op: str) -> Fraction:
    """Apply ``op`` (add, sub, mul or div) to two rationals exactly.

    Raises ZeroDivisionError for a zero divisor and ValueError for an
    unknown operation name.
    """
    try:
        fn = _RAT_OPS[op]
    except KeyError:
        raise ValueError(f"unknown rational operation {op!r}") from None
    if op == "div" and b == 0:
        raise ZeroDivisionError(f"division of {a} by zero")
    return fn(Fraction(a), Fraction(b))


def format_rational(q: Scalar) -> str:
    """Serialize as ``"p/q"`` (or ``"p"`` when the denominator is 1)."""
    return str(Fraction(q))


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip().replace("−", "-"))


class MultiPoly:
    """Immutable sparse polynomial in lam, x, y with rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Union[Dict[Exponent, Scalar], Scalar, None] = None):
        if terms is None:
            clean: Dict[Exponent, Fraction] = {}
        elif isinstance(terms, dict):
            clean = {}
            for exp, c in terms.items():
                if len(exp) != 3 or any(e < 0 for e in exp):
                    raise ValueError(f"bad exponent triple {exp!r}")
                if c:
                    clean[tuple(exp)] = Fraction(c)
        else:
            clean = {(0, 0, 0): Fraction(terms)} if terms else {}
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Exponent, Fraction]) -> "MultiPoly":
        # caller guarantees no zero coefficients
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, coeff: Scalar = 1, lam: int = 0, x: int = 0, y: int = 0) -> "MultiPoly":
        return cls({(lam, x, y): coeff})

    # -- inspection --------------------------------------------------------

    @property
    def terms(self) -> Dict[Exponent, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[Exponent, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(exp == (0, 0, 0) for exp in self._terms)

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial; ValueError otherwise."""
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._terms.get((0, 0, 0), Fraction(0))

    def coefficient(self, lam: int = 0, x: int = 0, y: int = 0) -> Fraction:
        return self._terms.get((lam, x, y), Fraction(0))

    def degree(self, var: int) -> int:
        """Degree in one variable (LAM, X or Y); -1 for the zero polynomial."""
        return max((exp[var] for exp in self._terms), default=-1)

    def free_of(self, var: int) -> bool:
        return all(exp[var] == 0 for exp in self._terms)

    # -- ring operations ---------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for exp, c in other._terms.items():
            s = out.get(exp, 0) + c
            if s:
                out[exp] = s
            else:
                out.pop(exp, None)
        return MultiPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({exp: -c for exp, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return ZERO
            return MultiPoly._raw({exp: c * other for exp, c in self._terms.items()})
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Exponent, Fraction] = {}
        get = out.get
        for (a0, a1, a2), ca in self._terms.items():
            for (b0, b1, b2), cb in other._terms.items():
                key = (a0 + b0, a1 + b1, a2 + b2)
                out[key] = get(key, 0) + ca * cb
        return MultiPoly._raw({exp: c for exp, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "MultiPoly":
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        if other == 0:
            raise ZeroDivisionError("polynomial division by zero")
        inv = 1 / Fraction(other)
        return MultiPoly._raw({exp: c * inv for exp, c in self._terms.items()})

    def __pow__(self, k: int) -> "MultiPoly":
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers are supported")
        result, base = ONE, self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- substitutions -----------------------------------------------------

    def evaluate(self, lam: Scalar = None, x: Scalar = None, y: Scalar = None) -> "MultiPoly":
        """Substitute rational values for any subset of the variables."""
        values = (lam, x, y)
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            key = list(exp)
            for var, v in enumerate(values):
                if v is not None:
                    c = c * Fraction(v) ** exp[var] if exp[var] else c
                    key[var] = 0
            key = tuple(key)
            out[key] = out.get(key, 0) + c
        return MultiPoly._raw({exp: c for exp, c in out.items() if c})

    def affine(self, var: int, c0: Scalar, c1: Scalar) -> "MultiPoly":
        """Replace the variable ``var`` by ``c0 + c1*var``."""
        c0, c1 = Fraction(c0), Fraction(c1)
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self._terms.items():
            e = exp[var]
            for j, coeff in enumerate(_affine_power(c0, c1, e)):
                if not coeff:
                    continue
                key = exp[:var] + (j,) + exp[var + 1:]
                out[key] = out.get(key, 0) + c * coeff
        return MultiPoly._raw({exp: c for exp, c in out.items() if c})

    # -- display / serialization --------------------------------------------

    def to_json(self) -> List[list]:
        return [[format_rational(c), *exp] for exp, c in sorted(self._terms.items())]

    @classmethod
    def from_json(cls, data: Iterable) -> "MultiPoly":
        return cls({(int(a), int(b), int(c)): parse_rational(q) for q, a, b, c in data})

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        # highest x-degree first reads like the textbook form
        order = sorted(self._terms, key=lambda e: (-e[X], -e[Y], -e[LAM]))
        pieces = []
        for exp in order:
            c = self._terms[exp]
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(VARIABLE_NAMES, exp)
                if e
            )
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append(("-" if c < 0 else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


@lru_cache(maxsize=None)
def _affine_power(c0: Fraction, c1: Fraction, e: int) -> Tuple[Fraction, ...]:
    # coefficients of (c0 + c1*v)^e by ascending power of v
    return tuple(comb(e, j) * c0 ** (e - j) * c1 ** j for j in range(e + 1))


ZERO = MultiPoly()
ONE = MultiPoly(1)
LAMBDA = MultiPoly.monomial(lam=1)
XVAR = MultiPoly.monomial(x=1)
YVAR = MultiPoly.monomial(y=1)


def poly_arith(p: MultiPoly, q: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown polynomial operation {op!r}")


def substitute_lambda(p: MultiPoly, c: Scalar) -> MultiPoly:
    """Evaluate at lam = c; lam = 0 is the classical limit of a degenerate family."""
    return p.evaluate(lam=c)


def scale_lambda(p: MultiPoly, c: Scalar) -> MultiPoly:
    """lam -> c*lam."""
    return p.affine(LAM, 0, c)


def substitute_x_affine(p: MultiPoly, c0: Scalar, c1: Scalar) -> MultiPoly:
    """x -> c0 + c1*x."""
    return p.affine(X, c0, c1)


def substitute_y_affine(p: MultiPoly, c0: Scalar, c1: Scalar) -> MultiPoly:
    return p.affine(Y, c0, c1)
