"""Exact integer/rational helpers: normalization, square tests, primes, factoring.

Rationals are plain :class:`fractions.Fraction` values, which already keep
lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import sympy
from sympy import Poly, ZZ
from sympy.abc import x as _X

from .errors import ParseError

Rat = Fraction

_RAT_TOKEN = re.compile(r"-?[0-9]+(?:/[0-9]+)?\Z")


def rat_make(num: int, den: int = 1) -> Fraction:
    if den == 0:
        raise ZeroDivisionError(f"zero denominator in {num}/{den}")
    return Fraction(num, den)


def as_rat(value) -> Fraction:
    """Coerce ints, Fractions and fraction strings; floats are rejected."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact value {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rat(value)
    raise TypeError(f"cannot interpret {value!r} as a rational")


def parse_rat(token: str, line: Optional[int] = None, column: Optional[int] = None) -> Fraction:
    """Parse ``n`` or ``n/d`` (optional leading minus, no whitespace)."""
    if not _RAT_TOKEN.match(token):
        raise ParseError(f"bad fraction token {token!r}", line, column)
    num, _, den = token.partition("/")
    if den and int(den) == 0:
        raise ParseError(f"zero denominator in {token!r}", line, column)
    return Fraction(int(num), int(den) if den else 1)


def format_rat(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def int_sqrt(n: int) -> Optional[int]:
    if n < 0:
        raise ValueError("int_sqrt of a negative number")
    s = math.isqrt(n)
    return s if s * s == n else None


def perfect_square_rat(q) -> Optional[Fraction]:
    """Nonnegative rational square root of ``q``, or None. Zero counts as 0**2."""
    q = Fraction(q)
    if q < 0:
        return None
    # lowest terms: q is a square iff numerator and denominator both are
    n = int_sqrt(q.numerator)
    if n is None:
        return None
    d = int_sqrt(q.denominator)
    if d is None:
        return None
    return Fraction(n, d)


def is_prime(n: int) -> bool:
    """Deterministic below 2**64, strong BPSW test above."""
    return bool(sympy.isprime(n))


def primes_up_to(n: int) -> list[int]:
    if n < 2:
        return []
    return [int(p) for p in sympy.primerange(2, n + 1)]


# -- factorization ---------------------------------------------------------


@dataclass(frozen=True)
class FactorEffort:
    trial_bound: int = 10_000
    rho_iterations: int = 500_000
    seed: int = 20201


DEFAULT_EFFORT = FactorEffort()


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]
    cofactor: int = 1
    sign: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def value(self) -> int:
        v = self.sign * self.cofactor
        for p, e in self.factors:
            v *= p**e
        return v

    def __str__(self):
        parts = [f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors]
        if self.cofactor != 1:
            parts.append(f"[{self.cofactor}]")
        body = "*".join(parts) or "1"
        return ("-" if self.sign < 0 else "") + body


def _perfect_power(n: int) -> Optional[tuple[int, int]]:
    for k in range(n.bit_length(), 1, -1):
        r, exact = sympy.integer_nthroot(n, k)
        if exact and r > 1:
            return int(r), k
    return None


def _brent_rho(n: int, rng: random.Random, budget: list[int]) -> Optional[int]:
    """One nontrivial factor of composite ``n``; ``budget[0]`` is decremented."""
    if n % 2 == 0:
        return 2
    while budget[0] > 0:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1 and budget[0] > 0:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            budget[0] -= r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def factorize(n: int, effort: FactorEffort = DEFAULT_EFFORT) -> Factorization:
    """Trial division then Brent's rho under an iteration budget.

    Composites that survive the budget are multiplied into ``cofactor``.
    The random stream is seeded from ``effort.seed``, so results are
    deterministic for a fixed effort.
    """
    if n == 0:
        raise ValueError("cannot factor zero")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}

    p = 2
    while p <= effort.trial_bound and p * p <= m:
        while m % p == 0:
            found[p] = found.get(p, 0) + 1
            m //= p
        p += 1 if p == 2 else 2
    stack = [m] if m > 1 else []
    cofactor = 1
    rng = random.Random(effort.seed)
    budget = [effort.rho_iterations]
    while stack:
        c = stack.pop()
        if c == 1:
            continue
        if is_prime(c):
            found[c] = found.get(c, 0) + 1
            continue
        pw = _perfect_power(c)
        if pw is not None:
            root, k = pw
            stack.extend([root] * k)
            continue
        d = _brent_rho(c, rng, budget)
        if d is None:
            cofactor *= c
            continue
        stack.append(d)
        stack.append(c // d)
    return Factorization(n, tuple(sorted(found.items())), cofactor, sign)


def omega(f: Factorization) -> tuple[int, bool]:
    """Distinct prime count; the flag is True when it is only a lower bound."""
    count = len(f.factors) + (1 if f.cofactor > 1 else 0)
    return count, not f.complete


# -- polynomials -----------------------------------------------------------


def clear_denominators(coeffs: Iterable) -> list[int]:
    """Scale rational coefficients to coprime integers (same roots)."""
    qs = [Fraction(c) for c in coeffs]
    L = math.lcm(*(q.denominator for q in qs)) if qs else 1
    ints = [int(q * L) for q in qs]
    g = math.gcd(*ints)
    return [v // g for v in ints] if g > 1 else ints


def rational_roots(coeffs: Iterable) -> list[Fraction]:
    """Distinct rational roots of a polynomial, coefficients highest degree first.

    Linear factors are read off the exact factorization over Z, so no
    factoring of the constant term is needed.
    """
    ints = clear_denominators(coeffs)
    while ints and ints[0] == 0:
        ints.pop(0)
    if len(ints) <= 1:
        if not ints or ints == [0]:
            raise ValueError("zero polynomial has every rational root")
        return []
    roots = set()
    # peel off x**k factors first; sympy handles the rest
    while ints[-1] == 0:
        roots.add(Fraction(0))
        ints.pop()
    if len(ints) > 1:
        _, factors = Poly(ints, _X, domain=ZZ).factor_list()
        for fac, _mult in factors:
            if fac.degree() == 1:
                lead, const = (int(c) for c in fac.all_coeffs())
                roots.add(Fraction(-const, lead))
    return sorted(roots)
