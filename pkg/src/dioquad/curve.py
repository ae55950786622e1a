"""Curves y^2 = x(x+p1)(x+p2) over Q with exact affine arithmetic."""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import NotOnCurveError, ParseError, SingularCurveError
from .numeric import as_rat, format_rat, parse_rat

MAZUR_BOUND = 12


@dataclass(frozen=True)
class Curve:
    p1: Fraction
    p2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p1", as_rat(self.p1))
        object.__setattr__(self, "p2", as_rat(self.p2))
        if self.p1 == 0 or self.p2 == 0:
            raise SingularCurveError(f"singular model: p1={self.p1}, p2={self.p2} (zero root repeated)")
        if self.p1 == self.p2:
            raise SingularCurveError(f"singular model: p1 = p2 = {self.p1}")

    @property
    def A(self) -> Fraction:
        return self.p1 + self.p2

    @property
    def B(self) -> Fraction:
        return self.p1 * self.p2

    def f(self, x) -> Fraction:
        return x * (x + self.p1) * (x + self.p2)

    def two_torsion(self) -> tuple["Point", "Point", "Point"]:
        return Point(0, 0), Point(-self.p1, 0), Point(-self.p2, 0)

    def __str__(self):
        return f"y^2 = x(x + {format_rat(self.p1)})(x + {format_rat(self.p2)})"


@dataclass(frozen=True)
class Point:
    """Affine point, or the point at infinity when ``x`` is None."""

    x: Optional[Fraction] = None
    y: Optional[Fraction] = None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("point needs both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", as_rat(self.x))
            object.__setattr__(self, "y", as_rat(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __neg__(self) -> "Point":
        if self.is_infinity:
            return self
        return Point(self.x, -self.y)

    def __str__(self):
        return format_point(self)


O = Point()

_POINT_RE = re.compile(r"\(\s*([^,\s]+)\s*,\s*([^,\s)]+)\s*\)\Z")


def format_point(pt: Point) -> str:
    if pt.is_infinity:
        return "inf"
    return f"({format_rat(pt.x)},{format_rat(pt.y)})"


def parse_point(text: str) -> Point:
    text = text.strip()
    if text == "inf":
        return O
    m = _POINT_RE.match(text)
    if not m:
        raise ParseError(f"bad point {text!r}")
    return Point(parse_rat(m.group(1)), parse_rat(m.group(2)))


def curve_make(p1, p2) -> Curve:
    return Curve(p1, p2)


def on_curve(c: Curve, pt: Point) -> bool:
    if pt.is_infinity:
        return True
    return pt.y * pt.y == c.f(pt.x)


def _check(c: Curve, pt: Point):
    if not on_curve(c, pt):
        raise NotOnCurveError(f"{format_point(pt)} is not on {c}")


def _add(c: Curve, P: Point, Q: Point) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    if P.x == Q.x:
        if P.y != Q.y or P.y == 0:
            # inverse pair, or doubling a 2-torsion point
            return O
        lam = (3 * P.x * P.x + 2 * c.A * P.x + c.B) / (2 * P.y)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - c.A - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return Point(x3, y3)


def add(c: Curve, P: Point, Q: Point) -> Point:
    _check(c, P)
    _check(c, Q)
    return _add(c, P, Q)


def _mul(c: Curve, n: int, P: Point) -> Point:
    if n < 0:
        n, P = -n, -P
    acc = O
    while n:
        if n & 1:
            acc = _add(c, acc, P)
        n >>= 1
        if n:
            P = _add(c, P, P)
    return acc


def mul(c: Curve, n: int, P: Point) -> Point:
    _check(c, P)
    return _mul(c, n, P)


def point_order(c: Curve, P: Point) -> Optional[int]:
    """Order of ``P`` if at most 12, else None (infinite order over Q)."""
    _check(c, P)
    acc = P
    for n in range(1, MAZUR_BOUND + 1):
        if acc.is_infinity:
            return n
        acc = _add(c, acc, P)
    return None


def order_str(order: Optional[int]) -> str:
    return "inf" if order is None else str(order)


def j_invariant(c: Curve) -> Fraction:
    # c4 = 16(A^2 - 3B), disc = 16 B^2 (A^2 - 4B)
    A, B = c.A, c.B
    return 256 * (A * A - 3 * B) ** 3 / (B * B * (A * A - 4 * B))


def t_form_curve(T) -> Curve:
    """Model x(x + (2T/(T^2-1))^2)(x + ((T^2-1)/(2T))^2)."""
    T = as_rat(T)
    if T == 0 or T * T == 1:
        raise SingularCurveError(f"T={T} is degenerate (T must avoid 0, 1, -1)")
    s = 2 * T / (T * T - 1)
    return Curve(s * s, 1 / (s * s))


def scale_point(pt: Point, s) -> Point:
    """Image of ``pt`` under (x, y) -> (s^2 x, s^3 y)."""
    if pt.is_infinity:
        return pt
    return Point(pt.x * s * s, pt.y * s**3)

