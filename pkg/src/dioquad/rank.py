"""Rank heuristics: integral models, a_p, Mestre-Nagao sums, the omega bound,
and a small naive point search.

Nothing here computes a rank. Scores are only comparable between curves
evaluated with the same cutoff ``N``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Context, Decimal
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .curve import Curve, Point, j_invariant, point_order
from .numeric import DEFAULT_EFFORT, FactorEffort, factorize, omega, perfect_square_rat, primes_up_to
from .torsion import BadReduction

# S(N) is summed at WORK_PREC digits and reported at SCORE_DIGITS significant digits
WORK_PREC = 40
SCORE_DIGITS = 15
_WORK = Context(prec=WORK_PREC, rounding=ROUND_HALF_EVEN)
_OUT = Context(prec=SCORE_DIGITS, rounding=ROUND_HALF_EVEN)


@dataclass(frozen=True)
class IntegerModel:
    """y^2 = x^3 + A x^2 + B x with integral A, B; ``scale`` maps the source curve."""

    A: int
    B: int
    scale: int = 1

    def __post_init__(self):
        if self.B == 0 or self.A * self.A - 4 * self.B == 0:
            raise ValueError(f"singular integer model A={self.A}, B={self.B}")

    @property
    def disc_factor(self) -> int:
        return self.A * self.A - 4 * self.B

    def j(self) -> Fraction:
        A, B = Fraction(self.A), Fraction(self.B)
        return 256 * (A * A - 3 * B) ** 3 / (B * B * (A * A - 4 * B))


def integer_model(c: Curve) -> IntegerModel:
    """Clear denominators via (x, y) -> (x/s^2, y/s^3), s = lcm(den p1, den p2)."""
    s = math.lcm(c.p1.denominator, c.p2.denominator)
    A = c.A * s * s
    B = c.B * s**4
    assert A.denominator == 1 and B.denominator == 1
    m = IntegerModel(int(A), int(B), s)
    assert m.j() == j_invariant(c)
    return m


@lru_cache(maxsize=4096)
def _tables(p: int):
    xs = np.arange(p, dtype=np.int64)
    x2 = xs * xs % p
    x3 = x2 * xs % p
    sq = np.zeros(p, dtype=bool)
    sq[x2] = True
    return xs, x2, x3, sq


def _count(A: int, B: int, p: int) -> int:
    xs, x2, x3, sq = _tables(p)
    fx = (x3 + A * x2 % p + B * xs % p) % p
    chi = np.where(fx == 0, 0, np.where(sq[fx], 1, -1))
    return int(p + 1 + chi.sum())


def is_good(m: IntegerModel, p: int) -> bool:
    return p != 2 and m.B % p != 0 and m.disc_factor % p != 0


def trace_ap(m: IntegerModel, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for an odd prime of good reduction."""
    if not is_good(m, p):
        raise BadReduction(f"bad reduction (or p=2) at p={p}")
    if p >= 2**31:
        raise ValueError("trace_ap enumerates F_p; p must be below 2^31")
    ap = p + 1 - _count(m.A % p, m.B % p, p)
    assert ap * ap <= 4 * p, f"Hasse bound violated at p={p}"
    return ap


@lru_cache(maxsize=None)
def _log_over_p(p: int) -> Decimal:
    return _WORK.divide(_WORK.ln(Decimal(p)), Decimal(p))


def mestre_nagao_term(ap: int, p: int) -> Decimal:
    return _WORK.multiply(Decimal(2 - ap), _log_over_p(p))


@dataclass(frozen=True)
class MestreNagao:
    value: Decimal  # rounded to SCORE_DIGITS significant digits
    N: int
    exact_sum: Decimal  # working-precision sum before the final rounding
    skipped: tuple = ()

    def __str__(self):
        return format(self.value, "f")


def mestre_nagao_sum(m: IntegerModel, N: int) -> MestreNagao:
    """S(N) = sum over good odd p <= N of (2 - a_p) log(p) / p."""
    if N < 2:
        raise ValueError("N must be at least 2")
    total = Decimal(0)
    skipped = []
    for p in primes_up_to(N):
        if not is_good(m, p):
            skipped.append(p)
            continue
        total = _WORK.add(total, mestre_nagao_term(trace_ap(m, p), p))
    return MestreNagao(_OUT.plus(total), N, total, tuple(skipped))


def trivial_rank_bound(m: IntegerModel, effort: FactorEffort = DEFAULT_EFFORT) -> tuple[int, bool]:
    """omega(B) + omega(A^2 - 4B); the flag is set when a factorization was incomplete."""
    w1, l1 = omega(factorize(m.B, effort))
    w2, l2 = omega(factorize(m.disc_factor, effort))
    return w1 + w2, l1 or l2


@dataclass(frozen=True)
class FoundPoint:
    point: Point
    order: Optional[int]  # None = infinite order

    @property
    def is_torsion(self) -> bool:
        return self.order is not None


def naive_point_search(c: Curve, height_bound: int) -> list[FoundPoint]:
    """Points with x = m/e^2, |m| <= H, 1 <= e <= ceil(sqrt(H))."""
    if height_bound < 1:
        raise ValueError("height_bound must be at least 1")
    emax = math.isqrt(height_bound - 1) + 1
    xs = set()
    for e in range(1, emax + 1):
        for num in range(-height_bound, height_bound + 1):
            xs.add(Fraction(num, e * e))
    found = []
    for x in sorted(xs):
        y = perfect_square_rat(c.f(x))
        if y is None:
            continue
        for yy in sorted({y, -y}):
            pt = Point(x, yy)
            found.append(FoundPoint(pt, point_order(c, pt)))
    return found


@dataclass(frozen=True)
class SieveScore:
    provenance: dict
    N: int
    score: MestreNagao
    trivial_bound: int
    bound_incomplete: bool
    search_bound: int = 0
    non_torsion_found: int = 0
    flags: tuple = field(default_factory=tuple)
