"""Exact verification of the identity battery.

Each check builds its left-hand side by EGF extraction from a generating
function and its right-hand side by summing triangle entries, falling
factorials and family values, then compares the two as polynomials in
Q[lam, x, y] for every index in range.  Failures are reported, not raised.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .families import (
    Family,
    FamilyId,
    TriangleKind,
    falling_factorial,
    family_values,
    generating_series,
    higher_bernoulli_value,
    series_with_argument,
    triangle,
)
from .ring import (
    LAMBDA,
    XVAR,
    YVAR,
    ZERO,
    MultiPoly,
    scale_lambda,
    substitute_lambda,
    substitute_x_affine,
)
from .series import egf_coefficient, exp, int_pow, log1p_t


class IdentityName(str, enum.Enum):
    EQ10 = "eq10"
    EQ13 = "eq13"
    THM1 = "thm1"
    THM2 = "thm2"
    THM3 = "thm3"
    THM4 = "thm4"
    THM5 = "thm5"
    THM6_CORRECTED = "thm6_corrected"
    THM7 = "thm7"
    THM8_PRODUCT = "thm8_product"
    THM9 = "thm9"
    THM10 = "thm10"
    THM11 = "thm11"
    EQ32 = "eq32"
    EQ40_ADDITION = "eq40_addition"
    LIMIT_CHECKS = "limit_checks"


CORRECTED_READINGS = {
    IdentityName.THM6_CORRECTED: "corrected reading: outer sum over l = 0..n-1 restored on the right",
    IdentityName.THM7: "corrected reading: beta^(r)_{m,lam}(x) carries the argument x",
    IdentityName.THM9: "corrected reading: left side is beta^(r)_{n,lam}(x), kernel raised to the power r",
    IdentityName.EQ40_ADDITION: "corrected reading: D^(r)_{n-k,lam}(x) on the right",
}


@dataclass(frozen=True)
class Witness:
    n: int
    lhs: MultiPoly
    rhs: MultiPoly
    r: Optional[int] = None
    d: Optional[int] = None
    extra: Dict[str, object] = field(default_factory=dict)

    def to_dict(self) -> dict:
        out = {"n": self.n, "r": self.r, "d": self.d}
        out.update(self.extra)
        out["lhs"] = self.lhs.to_json()
        out["rhs"] = self.rhs.to_json()
        return out


@dataclass(frozen=True)
class VerificationReport:
    identity: IdentityName
    status: str
    params: Dict[str, object]
    witness: Optional[Witness] = None
    elapsed: float = 0.0
    cases: int = 0
    note: Optional[str] = None

    def __post_init__(self):
        if self.status == "fail" and (self.witness is None or self.witness.lhs == self.witness.rhs):
            raise ValueError("a failing report needs a witness with lhs != rhs")

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timing: bool = True) -> dict:
        out = {"identity": self.identity.value, "status": self.status, "params": self.params}
        if self.witness is not None:
            out["witness"] = self.witness.to_dict()
        if timing:
            out["elapsed_ms"] = round(self.elapsed * 1000, 3)
        out["cases"] = self.cases
        if self.note:
            out["note"] = self.note
        return out


# A case is (indices, lhs, rhs); indices holds n and optionally r, d and others.
Case = Tuple[Dict[str, int], MultiPoly, MultiPoly]


def _verify(
    name: IdentityName,
    params: Dict[str, object],
    cases: Iterable[Case],
    perturb: bool = False,
) -> VerificationReport:
    start = time.perf_counter()
    count = 0
    witness = None
    for idx, lhs, rhs in cases:
        count += 1
        if perturb:
            rhs = rhs + 1
        if lhs != rhs:
            idx = dict(idx)
            witness = Witness(
                n=idx.pop("n"), r=idx.pop("r", None), d=idx.pop("d", None),
                lhs=lhs, rhs=rhs, extra=idx,
            )
            break
    return VerificationReport(
        identity=name,
        status="fail" if witness else "pass",
        params=params,
        witness=witness,
        elapsed=time.perf_counter() - start,
        cases=count,
        note=CORRECTED_READINGS.get(name),
    )


def _values(name: Family, n_max: int, r: int = 1) -> List[MultiPoly]:
    return family_values(FamilyId(name, r), n_max)


def _at_x(values: Sequence[MultiPoly], x) -> List[MultiPoly]:
    return [v.evaluate(x=x) for v in values]


# -- first-section identities ---------------------------------------------


def check_eq10(n_max: int, perturb: bool = False) -> VerificationReport:
    """beta_{n,lam}(x) = sum_{k,m} C(n,k) lam^(n-m) B_m(x) S1(k,m) b_{n-k}."""

    def cases() -> Iterator[Case]:
        beta = _values(Family.DEGEN_BERNOULLI, n_max)
        bern = _values(Family.BERNOULLI, n_max)
        b2 = _values(Family.BERNOULLI_2ND, n_max)
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        for n in range(n_max + 1):
            rhs = ZERO
            for k in range(n + 1):
                for m in range(k + 1):
                    rhs += bern[m] * s1(k, m) * b2[n - k] * LAMBDA ** (n - m) * comb(n, k)
            yield {"n": n}, beta[n], rhs

    return _verify(IdentityName.EQ10, {"n_max": n_max}, cases(), perturb)


def check_eq13(n_max: int, perturb: bool = False) -> VerificationReport:
    """B_n(x) = sum_m S2(n,m) D_m(x)."""

    def cases() -> Iterator[Case]:
        bern = _values(Family.BERNOULLI, n_max)
        dae = _values(Family.DAEHEE, n_max)
        s2 = triangle(TriangleKind.STIRLING2, n_max)
        for n in range(n_max + 1):
            rhs = sum((s2(n, m) * dae[m] for m in range(n + 1)), ZERO)
            yield {"n": n}, bern[n], rhs

    return _verify(IdentityName.EQ13, {"n_max": n_max}, cases(), perturb)


# -- degenerate Daehee polynomials of the second kind --------------------


def check_thm1(n_max: int, perturb: bool = False) -> VerificationReport:
    """D_{n,lam}(x) = sum_m beta_{m,lam}(x) S1(n,m)."""

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        beta = _values(Family.DEGEN_BERNOULLI, n_max)
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        for n in range(n_max + 1):
            rhs = sum((beta[m] * s1(n, m) for m in range(n + 1)), ZERO)
            yield {"n": n}, dd[n], rhs

    return _verify(IdentityName.THM1, {"n_max": n_max}, cases(), perturb)


def _degenerate_expansion(j: int, s1, at=None) -> MultiPoly:
    # sum_k (at)_{k,lam} S1(j,k): EGF coefficient j of (1+lam*log(1+t))^{at/lam}
    return sum((falling_factorial(k, True, at) * s1(j, k) for k in range(j + 1)), ZERO)


def check_thm2(n_max: int, perturb: bool = False) -> VerificationReport:
    """D_{n,lam}(x) = sum_{k,l} C(n,k) (x)_{l,lam} S1(k,l) D_{n-k,lam}."""

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        numbers = _at_x(dd, 0)
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        inner = [_degenerate_expansion(k, s1) for k in range(n_max + 1)]
        for n in range(n_max + 1):
            rhs = sum((inner[k] * numbers[n - k] * comb(n, k) for k in range(n + 1)), ZERO)
            yield {"n": n}, dd[n], rhs

    return _verify(IdentityName.THM2, {"n_max": n_max}, cases(), perturb)


def check_thm3(n_max: int, perturb: bool = False) -> VerificationReport:
    """beta_{n,lam}(x) = sum_m D_{m,lam}(x) S2(n,m)."""

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        beta = _values(Family.DEGEN_BERNOULLI, n_max)
        s2 = triangle(TriangleKind.STIRLING2, n_max)
        for n in range(n_max + 1):
            rhs = sum((dd[m] * s2(n, m) for m in range(n + 1)), ZERO)
            yield {"n": n}, beta[n], rhs

    return _verify(IdentityName.THM3, {"n_max": n_max}, cases(), perturb)


def check_thm4(n_max: int, perturb: bool = False) -> VerificationReport:
    """D_{n,lam}(1) - D_{n,lam} = (-1)^(n-1) (n-1)! for n >= 1, and 0 at n = 0."""

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        for n in range(n_max + 1):
            lhs = dd[n].evaluate(x=1) - dd[n].evaluate(x=0)
            rhs = MultiPoly((-1) ** (n - 1) * factorial(n - 1)) if n else ZERO
            yield {"n": n}, lhs, rhs

    return _verify(IdentityName.THM4, {"n_max": n_max}, cases(), perturb)


def check_thm5(n_max: int, d_max: int, perturb: bool = False) -> VerificationReport:
    """D_{n,lam}(x) = sum_m d^(m-1) S1(n,m) sum_{a<d} beta_{m,lam/d}((a+x)/d)."""

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        beta = _values(Family.DEGEN_BERNOULLI, n_max)
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        for d in range(1, d_max + 1):
            # sum_a beta_{m, lam/d}((a + x)/d)
            sums = []
            for m in range(n_max + 1):
                scaled = scale_lambda(beta[m], Fraction(1, d))
                sums.append(sum(
                    (substitute_x_affine(scaled, Fraction(a, d), Fraction(1, d)) for a in range(d)),
                    ZERO,
                ))
            for n in range(n_max + 1):
                rhs = sum(
                    (sums[m] * s1(n, m) * Fraction(d) ** (m - 1) for m in range(n + 1)), ZERO
                )
                yield {"n": n, "d": d}, dd[n], rhs

    return _verify(IdentityName.THM5, {"n_max": n_max, "d_max": d_max}, cases(), perturb)


def check_thm6_corrected(n_max: int, perturb: bool = False) -> VerificationReport:
    """(D_{m+1,lam}(n) - D_{m+1,lam}) / (m+1)
        = sum_{l<n} sum_{j,k} C(m,j) (l)_{k,lam} S1(j,k) D_{m-j}

    for integer arguments n = 1..n_max and m + 1 <= n_max.
    """

    def cases() -> Iterator[Case]:
        dd = _values(Family.DEGEN_DAEHEE_2ND, n_max)
        daehee_numbers = _at_x(_values(Family.DAEHEE, n_max), 0)
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        arguments = range(1, n_max + 1)
        inner = {
            (l, j): _degenerate_expansion(j, s1, at=l)
            for l in range(n_max) for j in range(n_max)
        }
        for arg in arguments:
            for m in range(n_max):
                lhs = (dd[m + 1].evaluate(x=arg) - dd[m + 1].evaluate(x=0)) / (m + 1)
                rhs = ZERO
                for l in range(arg):
                    for j in range(m + 1):
                        rhs += inner[l, j] * daehee_numbers[m - j] * comb(m, j)
                yield {"n": m, "argument": arg}, lhs, rhs

    return _verify(IdentityName.THM6_CORRECTED, {"n_max": n_max}, cases(), perturb)


# -- higher-order families ---------------------------------------------------


def check_thm7(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """D^(r)_{n,lam}(x) = sum_m beta^(r)_{m,lam}(x) S1(n,m)."""

    def cases() -> Iterator[Case]:
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        for r in range(1, r_max + 1):
            dd = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r)
            beta = _values(Family.HIGHER_DEGEN_BERNOULLI, n_max, r)
            for n in range(n_max + 1):
                rhs = sum((beta[m] * s1(n, m) for m in range(n + 1)), ZERO)
                yield {"n": n, "r": r}, dd[n], rhs

    return _verify(IdentityName.THM7, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


def check_thm8_product(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """D^(r)_{n,lam}(x) = sum_l C(n,l) D^(r-k)_{l,lam} D^(k)_{n-l,lam}(x), r > k >= 1."""

    def cases() -> Iterator[Case]:
        for r in range(2, r_max + 1):
            lhs = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r)
            for k in range(1, r):
                left = _at_x(_values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r - k), 0)
                right = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, k)
                for n in range(n_max + 1):
                    rhs = sum(
                        (left[l] * right[n - l] * comb(n, l) for l in range(n + 1)), ZERO
                    )
                    yield {"n": n, "r": r, "k": k}, lhs[n], rhs

    return _verify(IdentityName.THM8_PRODUCT, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


def check_thm9(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """beta^(r)_{n,lam}(x) = sum_m D^(r)_{m,lam}(x) S2(n,m)."""

    def cases() -> Iterator[Case]:
        s2 = triangle(TriangleKind.STIRLING2, n_max)
        for r in range(1, r_max + 1):
            dd = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r)
            beta = _values(Family.HIGHER_DEGEN_BERNOULLI, n_max, r)
            for n in range(n_max + 1):
                rhs = sum((dd[m] * s2(n, m) for m in range(n + 1)), ZERO)
                yield {"n": n, "r": r}, beta[n], rhs

    return _verify(IdentityName.THM9, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


def check_thm10(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """D^(r)_{n,lam}(x) = sum_{p,k,m,j} C(n,p) B_m^(m+r+1)(x+1) B_j^(j-r+1)(1)
    lam^j S2_lam(k,m) S1(p,k) S1(n-p,j).

    The four-fold sum is evaluated as a binomial convolution of its two
    independent factors, the p-part and the (n-p)-part.
    """

    def cases() -> Iterator[Case]:
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        s2l = triangle(TriangleKind.DEGEN_STIRLING2, n_max)
        for r in range(1, r_max + 1):
            dd = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r)
            b_shift = [higher_bernoulli_value(m, m + r + 1, 1) for m in range(n_max + 1)]
            b_one = [higher_bernoulli_value(j, j - r + 1, 1, with_x=False) for j in range(n_max + 1)]
            first = []
            second = []
            for p in range(n_max + 1):
                acc = ZERO
                for k in range(p + 1):
                    for m in range(k + 1):
                        acc += b_shift[m] * s2l(k, m) * s1(p, k)
                first.append(acc)
                second.append(sum(
                    (b_one[j] * LAMBDA ** j * s1(p, j) for j in range(p + 1)), ZERO
                ))
            for n in range(n_max + 1):
                rhs = sum(
                    (first[p] * second[n - p] * comb(n, p) for p in range(n + 1)), ZERO
                )
                yield {"n": n, "r": r}, dd[n], rhs

    return _verify(IdentityName.THM10, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


def check_thm11(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """D^(-r)_{n,lam} = sum_{k,l} C(n,k)/C(k+r,k) S2_lam(l+r,r) S1(k+r,l+r)
    B_{n-k}^(n-k-r+1)(1)."""

    def cases() -> Iterator[Case]:
        s1 = triangle(TriangleKind.STIRLING1, n_max + r_max)
        s2l = triangle(TriangleKind.DEGEN_STIRLING2, n_max + r_max)
        for r in range(1, r_max + 1):
            lhs = _at_x(_values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, -r), 0)
            for n in range(n_max + 1):
                rhs = ZERO
                for k in range(n + 1):
                    bern = higher_bernoulli_value(n - k, n - k - r + 1, 1, with_x=False)
                    weight = Fraction(comb(n, k), comb(k + r, k))
                    for l in range(k + 1):
                        rhs += s2l(l + r, r) * s1(k + r, l + r) * bern * weight
                yield {"n": n, "r": r}, lhs[n], rhs

    return _verify(IdentityName.THM11, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


def check_eq32(n_max: int, k_set: Sequence[int], perturb: bool = False) -> VerificationReport:
    """n! [t^n] (t/log(1+t))^k (1+t)^(x-1) = B_n^(n-k+1)(x) for integer k."""

    def cases() -> Iterator[Case]:
        kernel = generating_series(FamilyId(Family.BERNOULLI_2ND), n_max)
        shifted = exp(log1p_t(n_max) * (XVAR - 1))
        for k in k_set:
            f = int_pow(kernel, k) * shifted
            for n in range(n_max + 1):
                yield {"n": n, "k": k}, egf_coefficient(f, n), higher_bernoulli_value(n, n - k + 1)

    params = {"n_max": n_max, "k_set": list(k_set)}
    return _verify(IdentityName.EQ32, params, cases(), perturb)


def check_eq40(n_max: int, r_max: int, perturb: bool = False) -> VerificationReport:
    """D^(r)_{n,lam}(x+y) = sum_{k,m} C(n,k) D^(r)_{n-k,lam}(x) (y)_{m,lam} S1(k,m)."""

    def cases() -> Iterator[Case]:
        s1 = triangle(TriangleKind.STIRLING1, n_max)
        inner = [_degenerate_expansion(k, s1, at=YVAR) for k in range(n_max + 1)]
        for r in range(1, r_max + 1):
            fid = FamilyId(Family.HIGHER_DEGEN_DAEHEE_2ND, r)
            both = series_with_argument(fid, n_max, XVAR + YVAR)
            dd = _values(Family.HIGHER_DEGEN_DAEHEE_2ND, n_max, r)
            for n in range(n_max + 1):
                rhs = sum((dd[n - k] * inner[k] * comb(n, k) for k in range(n + 1)), ZERO)
                yield {"n": n, "r": r}, egf_coefficient(both, n), rhs

    return _verify(IdentityName.EQ40_ADDITION, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


_LIMIT_PAIRS = (
    (Family.DEGEN_BERNOULLI, Family.BERNOULLI),
    (Family.DEGEN_DAEHEE_2ND, Family.DAEHEE),
    (Family.HIGHER_DEGEN_BERNOULLI, Family.HIGHER_BERNOULLI),
    (Family.HIGHER_DEGEN_DAEHEE_2ND, Family.HIGHER_DAEHEE),
)


def check_limits(n_max: int, r_max: int = 3, perturb: bool = False) -> VerificationReport:
    """Setting lam = 0 turns each degenerate family into its classical one."""

    def cases() -> Iterator[Case]:
        for degenerate, classical in _LIMIT_PAIRS:
            orders = range(1, r_max + 1) if degenerate.is_higher else (1,)
            for r in orders:
                deg = _values(degenerate, n_max, r)
                cls = _values(classical, n_max, r)
                for n in range(n_max + 1):
                    yield (
                        {"n": n, "r": r, "family": degenerate.value},
                        substitute_lambda(deg[n], 0),
                        cls[n],
                    )
        first_kind = _values(Family.DEGEN_DAEHEE_1ST, n_max)
        numbers = _at_x(_values(Family.DAEHEE, n_max), 0)
        for n in range(n_max + 1):
            yield (
                {"n": n, "family": Family.DEGEN_DAEHEE_1ST.value},
                substitute_lambda(first_kind[n], 0),
                numbers[n],
            )
        s2l = triangle(TriangleKind.DEGEN_STIRLING2, n_max)
        s2 = triangle(TriangleKind.STIRLING2, n_max)
        for n in range(n_max + 1):
            for k in range(n + 1):
                yield (
                    {"n": n, "k": k, "family": TriangleKind.DEGEN_STIRLING2.value},
                    substitute_lambda(s2l(n, k), 0),
                    s2(n, k),
                )

    return _verify(IdentityName.LIMIT_CHECKS, {"n_max": n_max, "r_max": r_max}, cases(), perturb)


# -- battery -------------------------------------------------------------------


@dataclass(frozen=True)
class VerifyConfig:
    n_max: int = 12
    r_max: int = 4
    d_max: int = 3
    k_set: Tuple[int, ...] = (-1, 0, 1, 2, 3)
    inject_fault: Optional[str] = None


_CHECKS: Dict[IdentityName, Callable[[VerifyConfig, bool], VerificationReport]] = {
    IdentityName.EQ10: lambda c, p: check_eq10(c.n_max, p),
    IdentityName.EQ13: lambda c, p: check_eq13(c.n_max, p),
    IdentityName.THM1: lambda c, p: check_thm1(c.n_max, p),
    IdentityName.THM2: lambda c, p: check_thm2(c.n_max, p),
    IdentityName.THM3: lambda c, p: check_thm3(c.n_max, p),
    IdentityName.THM4: lambda c, p: check_thm4(c.n_max, p),
    IdentityName.THM5: lambda c, p: check_thm5(c.n_max, c.d_max, p),
    IdentityName.THM6_CORRECTED: lambda c, p: check_thm6_corrected(c.n_max, p),
    IdentityName.THM7: lambda c, p: check_thm7(c.n_max, c.r_max, p),
    IdentityName.THM8_PRODUCT: lambda c, p: check_thm8_product(c.n_max, c.r_max, p),
    IdentityName.THM9: lambda c, p: check_thm9(c.n_max, c.r_max, p),
    IdentityName.THM10: lambda c, p: check_thm10(c.n_max, c.r_max, p),
    IdentityName.THM11: lambda c, p: check_thm11(c.n_max, c.r_max, p),
    IdentityName.EQ32: lambda c, p: check_eq32(c.n_max, c.k_set, p),
    IdentityName.EQ40_ADDITION: lambda c, p: check_eq40(c.n_max, c.r_max, p),
    IdentityName.LIMIT_CHECKS: lambda c, p: check_limits(c.n_max, min(c.r_max, 3), p),
}


def run_check(name, config: VerifyConfig = VerifyConfig()) -> VerificationReport:
    name = IdentityName(name)
    fault = config.inject_fault is not None and IdentityName(config.inject_fault) is name
    return _CHECKS[name](config, fault)


def run_all(config: VerifyConfig = VerifyConfig(), workers: int = 1) -> List[VerificationReport]:
    """Run every identity; reports come back in IdentityName order."""
    if config.inject_fault is not None:
        IdentityName(config.inject_fault)  # reject unknown names early
    names = list(IdentityName)
    if workers <= 1:
        return [run_check(name, config) for name in names]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_check, names, [config] * len(names)))


def reports_to_json(reports: Sequence[VerificationReport], timing: bool = True) -> List[dict]:
    return [r.to_dict(timing=timing) for r in reports]


def _format_params(params: Dict[str, object]) -> str:
    return ", ".join(
        f"{k}={','.join(map(str, v)) if isinstance(v, list) else v}" for k, v in params.items()
    )


def reports_to_markdown(reports: Sequence[VerificationReport], timing: bool = False) -> str:
    header = "| identity | status | params | cases |"
    rule = "|---|---|---|---|"
    if timing:
        header += " elapsed_ms |"
        rule += "---|"
    header += " note |"
    rule += "---|"
    lines = [header, rule]
    for r in reports:
        row = f"| {r.identity.value} | {r.status} | {_format_params(r.params)} | {r.cases} |"
        if timing:
            row += f" {r.elapsed * 1000:.1f} |"
        row += f" {r.note or ''} |"
        lines.append(row)
    failures = [r for r in reports if not r.passed]
    for r in failures:
        w = r.witness
        where = ", ".join(
            f"{k}={v}" for k, v in [("n", w.n), ("r", w.r), ("d", w.d), *w.extra.items()]
            if v is not None
        )
        lines += ["", f"**{r.identity.value} failed** at {where}:", "",
                  f"- lhs: `{w.lhs}`", f"- rhs: `{w.rhs}`"]
    return "\n".join(lines) + "\n"
