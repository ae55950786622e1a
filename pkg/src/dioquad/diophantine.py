"""Rational Diophantine tuples, the curve a quadruple induces, and quintuple extension.

For an ordered quadruple (a, b, c, d) the induced curve is

    y^2 = x (x + (b-a)(d-c)) (x + (c-a)(d-b))

obtained from Y^2 = (aX+1)(bX+1)(cX+1)(dX+1) by
x = (aX+1)(d-b)(d-c)/(dX+1), y = Y(d-a)(d-b)(d-c)/(dX+1)^2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .curve import O, Curve, Point, _add, _mul, on_curve
from .errors import NotDiophantineError, NotOnCurveError, ParseError, SingularCurveError
from .numeric import as_rat, format_rat, parse_rat, perfect_square_rat

LABELS = "abcdefghijklmnop"


@dataclass(frozen=True)
class TupleCheck:
    ok: bool
    roots: dict = field(default_factory=dict)
    failing_pairs: tuple = ()
    reason: str = ""

    @property
    def failing_pair(self) -> Optional[tuple[int, int]]:
        return self.failing_pairs[0] if self.failing_pairs else None

    def __bool__(self):
        return self.ok


def is_diophantine_tuple(elems: Iterable) -> TupleCheck:
    """Check the pairwise product-plus-one square condition.

    On success ``roots`` maps index pairs (i, j) to the nonnegative root of
    e_i e_j + 1. On failure every offending pair is listed, first one first.
    """
    try:
        xs = [as_rat(e) for e in elems]
    except (TypeError, ValueError) as exc:
        return TupleCheck(False, reason=f"malformed element: {exc}")
    if len(xs) < 2:
        return TupleCheck(False, reason="need at least two elements")
    for i, e in enumerate(xs):
        if e == 0:
            return TupleCheck(False, reason=f"element {i} is zero")
    for i, j in itertools.combinations(range(len(xs)), 2):
        if xs[i] == xs[j]:
            return TupleCheck(False, failing_pairs=((i, j),), reason=f"elements {i} and {j} are equal")
    roots = {}
    failing = []
    for i, j in itertools.combinations(range(len(xs)), 2):
        r = perfect_square_rat(xs[i] * xs[j] + 1)
        if r is None:
            failing.append((i, j))
        else:
            roots[(i, j)] = r
    if failing:
        reason = "; ".join(
            f"{format_rat(xs[i])}*{format_rat(xs[j])}+1 = {format_rat(xs[i] * xs[j] + 1)} is not a square"
            for i, j in failing
        )
        return TupleCheck(False, roots, tuple(failing), reason)
    return TupleCheck(True, roots)


@dataclass(frozen=True)
class DioTuple:
    elements: tuple

    def __post_init__(self):
        elems = tuple(as_rat(e) for e in self.elements)
        object.__setattr__(self, "elements", elems)
        check = is_diophantine_tuple(elems)
        if not check:
            raise NotDiophantineError(check.reason)
        object.__setattr__(self, "_roots", check.roots)

    @property
    def roots(self) -> dict:
        return self._roots

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def __str__(self):
        return "{" + ", ".join(format_rat(e) for e in self.elements) + "}"


def _quad(q) -> DioTuple:
    if not isinstance(q, DioTuple):
        q = DioTuple(tuple(q))
    if len(q) != 4:
        raise ValueError(f"expected a quadruple, got {len(q)} elements")
    return q


@dataclass(frozen=True)
class InducedCurveBundle:
    quadruple: DioTuple
    curve: Curve
    P: Point
    Q: Point
    square_roots: dict

    @property
    def d_is_minus_inverse_a(self) -> bool:
        a, _, _, d = self.quadruple
        return a * d == -1


def induced_curve(q) -> InducedCurveBundle:
    q = _quad(q)
    a, b, c, d = q
    p1 = (b - a) * (d - c)
    p2 = (c - a) * (d - b)
    try:
        curve = Curve(p1, p2)
    except SingularCurveError as exc:
        raise SingularCurveError(f"degenerate induced curve for {q}: {exc}") from None
    roots = {LABELS[i] + LABELS[j]: r for (i, j), r in q.roots.items()}
    P = Point((b - a) * (c - a), (b - a) * (c - a) * (d - a))
    yq = Fraction(1)
    for r in roots.values():
        yq *= r
    Q = Point((a * d + 1) * (b * c + 1), yq)
    for name, pt in (("P", P), ("Q", Q)):
        if not on_curve(curve, pt):
            raise NotOnCurveError(f"{name} = {pt} not on induced curve of {q}")
    return InducedCurveBundle(q, curve, P, Q, roots)


def induced_curves_all_orderings(elems) -> dict:
    """Induced bundle for every ordering of an unordered 4-set."""
    out = {}
    for perm in itertools.permutations(elems):
        out[perm] = induced_curve(perm)
    return out


_PAIRINGS = {
    "ab|cd": (0, 1, 2, 3),
    "ac|bd": (0, 2, 1, 3),
    "ad|bc": (0, 3, 1, 2),
}


def is_regular_quadruple(a, b, c, d) -> bool:
    """(a + b - c - d)^2 == 4(ab + 1)(cd + 1)."""
    a, b, c, d = (as_rat(v) for v in (a, b, c, d))
    return (a + b - c - d) ** 2 == 4 * (a * b + 1) * (c * d + 1)


def regular_pairings(a, b, c, d) -> list[str]:
    xs = [as_rat(v) for v in (a, b, c, d)]
    return [name for name, (i, j, k, l) in _PAIRINGS.items() if is_regular_quadruple(xs[i], xs[j], xs[k], xs[l])]


# -- extension machinery ---------------------------------------------------


def extension_point_forward(q, X) -> Point:
    q = _quad(q)
    a, b, c, d = q
    X = as_rat(X)
    if d * X + 1 == 0:
        raise ValueError(f"X = {format_rat(X)} is the pole dX+1 = 0")
    Y = perfect_square_rat((a * X + 1) * (b * X + 1) * (c * X + 1) * (d * X + 1))
    if Y is None:
        raise ValueError(f"(aX+1)(bX+1)(cX+1)(dX+1) is not a square at X = {format_rat(X)}")
    x = (a * X + 1) * (d - b) * (d - c) / (d * X + 1)
    y = Y * (d - a) * (d - b) * (d - c) / (d * X + 1) ** 2
    pt = Point(x, y)
    curve = induced_curve(q).curve
    if not on_curve(curve, pt):
        raise NotOnCurveError(f"forward image {pt} is off the induced curve")
    return pt


def extension_point_inverse(q, pt: Point) -> Optional[Fraction]:
    """X with x(forward(X)) = x(pt), i.e. X = (K - x)/(d x - a K), K = (d-b)(d-c)."""
    q = _quad(q)
    a, b, c, d = q
    if pt.is_infinity:
        return None
    K = (d - b) * (d - c)
    den = d * pt.x - a * K
    if den == 0:
        return None
    return (K - pt.x) / den


@dataclass(frozen=True)
class Candidate:
    X: Fraction
    is_extension: bool
    squares: tuple  # roots of aX+1 .. dX+1, None where not a square
    source: Optional[Point] = None


def check_extension(q, X) -> Candidate:
    q = _quad(q)
    X = as_rat(X)
    roots = tuple(perfect_square_rat(e * X + 1) for e in q)
    ok = X != 0 and X not in q.elements and all(r is not None for r in roots)
    return Candidate(X, ok, roots)


def quintuple_candidates(q, pts: Sequence[Point]) -> list[Candidate]:
    q = _quad(q)
    out = []
    for pt in pts:
        X = extension_point_inverse(q, pt)
        if X is None:
            continue
        cand = check_extension(q, X)
        out.append(Candidate(cand.X, cand.is_extension, cand.squares, pt))
    return out


def combination_points(bundle: InducedCurveBundle, depth: int, torsion_translates: bool = False) -> list:
    """Distinct affine points m*P + n*Q (+ T) for |m|, |n| <= depth.

    Returns ``(label, point)`` pairs in scan order. With ``torsion_translates``
    each combination is also shifted by the three rational 2-torsion points.
    """
    c = bundle.curve
    shifts = [("", O)]
    if torsion_translates:
        shifts += [(f"+{name}", T) for name, T in zip("ABC", c.two_torsion())]
    seen = set()
    pts = []
    mP = {m: _mul(c, m, bundle.P) for m in range(-depth, depth + 1)}
    nQ = {n: _mul(c, n, bundle.Q) for n in range(-depth, depth + 1)}
    for m in range(-depth, depth + 1):
        for n in range(-depth, depth + 1):
            base = _add(c, mP[m], nQ[n])
            for suffix, T in shifts:
                pt = _add(c, base, T)
                if pt.is_infinity or pt in seen:
                    continue
                seen.add(pt)
                pts.append((f"{m}P{n:+d}Q{suffix}", pt))
    return pts


def extension_search(q, depth: int, torsion_translates: bool = False) -> list[tuple[str, Candidate]]:
    bundle = induced_curve(q)
    labelled = combination_points(bundle, depth, torsion_translates)
    cands = quintuple_candidates(bundle.quadruple, [pt for _, pt in labelled])
    by_point = {c.source: c for c in cands}
    return [(label, by_point[pt]) for label, pt in labelled if pt in by_point]


# -- tuple files -----------------------------------------------------------


def parse_tuple(text: str, line: Optional[int] = None) -> tuple:
    """Comma-separated fraction tokens; columns are reported 1-based."""
    elems = []
    col = 1
    for token in text.split(","):
        stripped = token.strip()
        lead = len(token) - len(token.lstrip())
        if not stripped:
            raise ParseError("empty token", line, col + lead)
        elems.append(parse_rat(stripped, line, col + lead))
        col += len(token) + 1
    return tuple(elems)


def read_tuple_lines(lines: Iterable[str]) -> list[tuple[int, tuple]]:
    out = []
    for lineno, raw in enumerate(lines, start=1):
        s = raw.rstrip("\n")
        if not s.strip() or s.lstrip().startswith("#"):
            continue
        out.append((lineno, parse_tuple(s, lineno)))
    return out


def read_tuple_file(path: Union[str, Path]) -> list[tuple[int, tuple]]:
    with open(path, encoding="utf-8") as fh:
        return read_tuple_lines(fh)


def format_tuple(elems) -> str:
    return ",".join(format_rat(e) for e in elems)

