"""Exact evaluation of the counting bounds.

A bound value is constant + sum coeff * log2(base) with rational
coefficients over integer bases (LogBound). Comparison against an integer
count runs outward-rounded interval arithmetic first, doubling the precision
until the intervals separate; exact equality (and any stubborn case) falls
through to a powered big-integer comparison, which is total here because
every coefficient is rational. Nothing is ever compared through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cayley import VarietyParams
from .errors import InvalidParams
from .gf import is_prime

_INTERVAL_PRECISIONS = (32, 64, 128, 256)


def _log2_fixed(b: int, prec: int) -> tuple[int, int]:
    """Outward fixed-point bounds on log2(b): returns (lo, hi) such that
    lo / 2^prec <= log2(b) <= hi / 2^prec."""
    if b < 1:
        raise InvalidParams("log2 needs a positive integer")
    m = b.bit_length() - 1
    if b == 1 << m:
        return m << prec, m << prec
    guard = 2 * prec + 16
    scale = 1 << guard
    # mantissa interval for b / 2^m in [1, 2)
    num = b << guard
    lo_m = num >> m
    hi_m = lo_m if (lo_m << m) == num else lo_m + 1

    def frac_bits(mant: int, round_up: bool) -> int:
        bits = 0
        for _ in range(prec):
            mant = mant * mant
            mant = (mant + scale - 1) >> guard if round_up else mant >> guard
            bits <<= 1
            if mant >= 2 * scale:
                bits |= 1
                mant >>= 1
        return bits

    lo = (m << prec) + frac_bits(lo_m, round_up=False)
    hi = (m << prec) + frac_bits(hi_m, round_up=True) + 1
    return lo, hi


@dataclass(frozen=True)
class LogBound:
    """constant + sum of coeff * log2(base); canonical term order by base."""

    constant: Fraction
    terms: tuple[tuple[int, Fraction], ...]

    @staticmethod
    def build(constant, term_map) -> "LogBound":
        merged: dict[int, Fraction] = {}
        for base, coeff in term_map.items() if isinstance(term_map, dict) else term_map:
            base = int(base)
            coeff = Fraction(coeff)
            if base < 1:
                raise InvalidParams(f"log base {base} must be a positive integer")
            if base == 1 or coeff == 0:
                continue
            merged[base] = merged.get(base, Fraction(0)) + coeff
        terms = tuple(sorted((b, c) for b, c in merged.items() if c != 0))
        return LogBound(Fraction(constant), terms)

    def log2_interval(self, prec: int) -> tuple[Fraction, Fraction]:
        lo = hi = Fraction(self.constant)
        unit = Fraction(1, 1 << prec)
        for base, coeff in self.terms:
            blo, bhi = _log2_fixed(base, prec)
            blo, bhi = blo * unit, bhi * unit
            if coeff >= 0:
                lo += coeff * blo
                hi += coeff * bhi
            else:
                lo += coeff * bhi
                hi += coeff * blo
        return lo, hi

    def approx_log2(self) -> float:
        lo, hi = self.log2_interval(64)
        return float((lo + hi) / 2)

    def exact_int(self) -> int | None:
        """2^value as an exact integer when all exponents are nonneg integers."""
        if self.constant.denominator != 1 or self.constant < 0:
            return None
        value = 1 << int(self.constant)
        for base, coeff in self.terms:
            if coeff.denominator != 1 or coeff < 0:
                return None
            value *= base ** int(coeff)
        return value

    def _sides_against(self, count: int) -> tuple[int, int]:
        """Integers (lhs, rhs) with count <= 2^value iff lhs <= rhs."""
        denoms = [self.constant.denominator] + [c.denominator for _, c in self.terms]
        d = math.lcm(*denoms) if denoms else 1
        lhs = count**d
        rhs = 1
        c0 = self.constant * d
        if c0 >= 0:
            rhs <<= int(c0)
        else:
            lhs <<= int(-c0)
        for base, coeff in self.terms:
            e = int(coeff * d)
            if e >= 0:
                rhs *= base**e
            else:
                lhs *= base ** (-e)
        return lhs, rhs

    def exact_cmp_count(self, count: int) -> int:
        """-1, 0, 1 for count <, =, > the bound value (exact)."""
        if count == 0:
            return -1
        lhs, rhs = self._sides_against(count)
        return (lhs > rhs) - (lhs < rhs)

    def exact_le(self, other: "LogBound") -> bool:
        """self <= other, exactly: 2^(self - other) <= 1."""
        diff_terms = dict(self.terms)
        for base, coeff in other.terms:
            diff_terms[base] = diff_terms.get(base, Fraction(0)) - coeff
        diff = LogBound.build(self.constant - other.constant, diff_terms)
        return diff.exact_cmp_count(1) >= 0

    def to_json(self) -> dict:
        lo, hi = self.log2_interval(64)
        out = {
            "log2": {"lower": str(lo), "upper": str(hi), "approx": round(self.approx_log2(), 6)},
            "constant": str(self.constant),
            "terms": [{"base": b, "coeff": str(c)} for b, c in self.terms],
        }
        exact = self.exact_int()
        if exact is not None:
            out["exact"] = exact
        return out


def compare_count(count: int, bound: LogBound) -> str:
    """Exact verdict "LE" or "GT" for count <= 2^bound.

    Intervals first with doubling precision; the powered-integer comparison
    decides any case the intervals cannot separate (including equality).
    """
    if count < 0:
        raise InvalidParams("counts are nonnegative")
    if count == 0:
        return "LE"
    for prec in _INTERVAL_PRECISIONS:
        clo, chi = (Fraction(x, 1 << prec) for x in _log2_fixed(count, prec))
        blo, bhi = bound.log2_interval(prec)
        if chi < blo:
            return "LE"
        if clo > bhi:
            return "GT"
        if clo == chi == blo == bhi:
            return "LE"
    return "LE" if bound.exact_cmp_count(count) <= 0 else "GT"


def interval_verdict(count: int, bound: LogBound, prec: int) -> str | None:
    """Verdict at one fixed interval precision, or None if undecided.

    Exposed for the monotone-precision property check.
    """
    if count == 0:
        return "LE"
    clo, chi = (Fraction(x, 1 << prec) for x in _log2_fixed(count, prec))
    blo, bhi = bound.log2_interval(prec)
    if chi < blo or (clo == chi == blo == bhi):
        return "LE"
    if clo > bhi:
        return "GT"
    return None


# ---------------------------------------------------------------------------
# the bound formulas


def theorem_a_bound(params: VarietyParams) -> LogBound:
    """Isomorphism-count bound for the three-prime variety at order n."""
    a, b, g = params.alpha, params.beta, params.gamma
    n = params.n
    terms: dict[int, Fraction] = {}

    def add(base, coeff):
        if base > 1 and coeff:
            terms[base] = terms.get(base, Fraction(0)) + Fraction(coeff)

    add(params.p, 6 * a * a)
    # alpha * log2(alpha), defined as 0 at alpha = 0
    if a >= 1:
        add(a, Fraction(23, 6) * a)
    add(6, a)
    half_exp = (a + g) * b + (a + b) * g + a * (a - 1) // 2
    add(6, Fraction(half_exp, 2))
    add(n, b + g)
    return LogBound.build(Fraction(a - 1), terms)


def remark43_gl_bound(s: int, alpha: int) -> LogBound:
    """Class-count bound for maximal two-prime-variety subgroups of GL(alpha, s)."""
    if alpha < 1:
        raise InvalidParams("alpha must be at least 1")
    if s < 2:
        raise InvalidParams("s must be a prime power >= 2")
    terms: dict[int, Fraction] = {}

    def add(base, coeff):
        if base > 1 and coeff:
            terms[base] = terms.get(base, Fraction(0)) + Fraction(coeff)

    add(s, 5 * alpha * alpha)
    add(6, Fraction(alpha * (alpha - 1), 4))
    if alpha >= 1:
        add(alpha, Fraction(23, 6) * alpha)
    add(6, alpha)
    return LogBound.build(Fraction(alpha - 1), terms)


def remark43_transitive_bound(n: int) -> LogBound:
    """Count bound for transitive two-prime-variety subgroups of S_n."""
    if n < 2:
        raise InvalidParams("n must be at least 2")
    terms: dict[int, Fraction] = {6: Fraction(n * (n - 1), 4)}
    if n > 1:
        terms[n] = terms.get(n, Fraction(0)) + Fraction(n + 2)
    return LogBound.build(Fraction(0), terms)


def prop41_bound(alpha: int, q: int, r: int, s: int) -> LogBound:
    """Order bound for two-prime-variety subgroups of GL(alpha, s)."""
    if alpha < 1:
        raise InvalidParams("alpha must be at least 1")
    for u in (q, r):
        if not is_prime(u):
            raise InvalidParams(f"{u} is not prime")
    if q == r:
        raise InvalidParams("q and r must be distinct")
    d = min(q * r, s)
    # list of pairs: d may equal 6 and the coefficients must accumulate
    return LogBound.build(Fraction(0), [(6, Fraction(alpha - 1, 2)), (d, Fraction(alpha))])


def soluble_sn_bound(n: int) -> LogBound:
    """Order bound (6^(1/2))^(n-1) for soluble A-subgroups of S_n."""
    if n < 1:
        raise InvalidParams("n must be at least 1")
    return LogBound.build(Fraction(0), {6: Fraction(n - 1, 2)})
