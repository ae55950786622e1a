"""Rational torsion of curves with full 2-torsion.

Orders 4 and 8 are detected by repeated halving, order 3 through the rational
roots of the 3-division polynomial. Point counts over F_p give an independent
multiple of the torsion order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .curve import Curve, Point, _add, _check, format_point, point_order
from .numeric import is_prime, perfect_square_rat, rational_roots


@dataclass(frozen=True)
class SquareTriple:
    alpha: Fraction
    beta: Fraction
    gamma: Fraction


@dataclass(frozen=True)
class TorsionClass:
    """Torsion group Z/2 x Z/2k; ``witness`` has order 2k (None when k = 1)."""

    k: int
    witness: Optional[Point] = None

    @property
    def order(self) -> int:
        return 4 * self.k

    @property
    def name(self) -> str:
        return f"Z/2xZ/{2 * self.k}"

    def __str__(self):
        return self.name


class MazurViolation(AssertionError):
    pass


def in_double_subgroup(c: Curve, pt: Point) -> Optional[SquareTriple]:
    """Square roots of x, x+p1, x+p2 when all three are squares, else None.

    For curves with full rational 2-torsion this decides membership in 2E(Q).
    """
    if pt.is_infinity:
        raise ValueError("the point at infinity is trivially in 2E(Q)")
    _check(c, pt)
    alpha = perfect_square_rat(pt.x)
    if alpha is None:
        return None
    beta = perfect_square_rat(pt.x + c.p1)
    if beta is None:
        return None
    gamma = perfect_square_rat(pt.x + c.p2)
    if gamma is None:
        return None
    return SquareTriple(alpha, beta, gamma)


def halving_quartic(c: Curve, q: Point) -> list[Fraction]:
    """Coefficients of (x^2 - B)^2 - 4 x_q (x^3 + A x^2 + B x), leading first."""
    A, B, xq = c.A, c.B, q.x
    return [Fraction(1), -4 * xq, -2 * B - 4 * A * xq, -4 * B * xq, B * B]


def halve_point(c: Curve, q: Point) -> list[Point]:
    """All rational R with 2R = q."""
    if q.is_infinity:
        raise ValueError("halve_point expects an affine point")
    _check(c, q)
    halves = []
    for x0 in rational_roots(halving_quartic(c, q)):
        y0 = perfect_square_rat(c.f(x0))
        if y0 is None:
            continue
        for y in {y0, -y0}:
            R = Point(x0, y)
            if _add(c, R, R) == q:
                halves.append(R)
    halves.sort(key=lambda P: (P.x, P.y))
    return halves


def division_polynomial_3(c: Curve) -> list[Fraction]:
    A, B = c.A, c.B
    return [Fraction(3), 4 * A, 6 * B, Fraction(0), -B * B]


def three_torsion(c: Curve) -> list[Point]:
    pts = []
    for x0 in rational_roots(division_polynomial_3(c)):
        y0 = perfect_square_rat(c.f(x0))
        if y0 is None or y0 == 0:
            continue
        pts.extend([Point(x0, y0), Point(x0, -y0)])
    return pts


def _four_torsion(c: Curve) -> list[Point]:
    out = []
    for T in c.two_torsion():
        out.extend(halve_point(c, T))
    return out


def torsion_group(c: Curve) -> TorsionClass:
    """Exact torsion subgroup, with a witness generating the cyclic 2k part."""
    threes = three_torsion(c)
    fours = _four_torsion(c)
    if threes and fours:
        raise MazurViolation(f"{c}: both 3- and 4-torsion found")
    if threes:
        w = _add(c, threes[0], Point(0, 0))
        assert point_order(c, w) == 6
        return TorsionClass(3, w)
    if not fours:
        return TorsionClass(1, None)
    for R in fours:
        eights = halve_point(c, R)
        if eights:
            assert point_order(c, eights[0]) == 8
            return TorsionClass(4, eights[0])
    assert point_order(c, fours[0]) == 4
    return TorsionClass(2, fours[0])


# -- reduction mod p -------------------------------------------------------


class BadReduction(ValueError):
    pass


def _reduce(q: Fraction, p: int) -> int:
    if q.denominator % p == 0:
        raise BadReduction(f"p={p} divides the denominator of {q}")
    return q.numerator * pow(q.denominator, -1, p) % p


def reduce_mod_p(c: Curve, p: int) -> tuple[int, int]:
    """(A mod p, B mod p) for an odd prime of good reduction."""
    if p == 2:
        raise BadReduction("p=2 is excluded")
    if p >= 2**31:
        raise ValueError("count_points_mod_p is a small-prime oracle (p < 2^31)")
    A = _reduce(c.A, p)
    B = _reduce(c.B, p)
    if B == 0 or (A * A - 4 * B) % p == 0:
        raise BadReduction(f"bad reduction at p={p}")
    return A, B


def is_good_prime(c: Curve, p: int) -> bool:
    try:
        reduce_mod_p(c, p)
    except BadReduction:
        return False
    return True


def _count_ab(A: int, B: int, p: int) -> int:
    xs = np.arange(p, dtype=np.int64)
    sq = np.zeros(p, dtype=bool)
    sq[xs * xs % p] = True
    x2 = xs * xs % p
    fx = (x2 * xs % p + A * x2 % p + B * xs % p) % p
    chi = np.where(fx == 0, 0, np.where(sq[fx], 1, -1))
    return int(p + 1 + chi.sum())


def count_points_mod_p(c: Curve, p: int) -> int:
    """#E(F_p) by enumerating x mod p (O(p); meant for p up to ~1e5)."""
    A, B = reduce_mod_p(c, p)
    return _count_ab(A, B, p)


def good_odd_primes(c: Curve, count: int):
    p, found = 3, 0
    while found < count:
        if is_prime(p) and is_good_prime(c, p):
            found += 1
            yield p
        p += 2


def torsion_order_bound(c: Curve, prime_budget: int = 10) -> int:
    """gcd of #E(F_p) over the first ``prime_budget`` good odd primes."""
    if prime_budget < 2:
        raise ValueError("prime_budget must be at least 2")
    g = 0
    for p in good_odd_primes(c, prime_budget):
        g = math.gcd(g, count_points_mod_p(c, p))
    return g


def describe(tc: TorsionClass) -> str:
    if tc.witness is None:
        return tc.name
    return f"{tc.name} (generator {format_point(tc.witness)})"

