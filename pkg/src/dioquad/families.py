"""Parametric families of Diophantine quadruples whose induced curves have
torsion Z/2 x Z/2, Z/2 x Z/4, Z/2 x Z/6 and Z/2 x Z/8.

Each family checks its own list of vanishing factors before evaluating and
raises :class:`DegenerateParameters` naming the first one that is zero.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

from .curve import Curve, Point
from .diophantine import DioTuple, induced_curve
from .errors import DegenerateError, DegenerateParameters, NotDiophantineError
from .numeric import as_rat

C_MODES = ("regular", "prop3")


@dataclass(frozen=True)
class FamilyParams:
    family: str
    values: tuple  # ((name, Fraction), ...) in the family's parameter order
    c_mode: Optional[str] = None

    def as_dict(self) -> dict:
        return dict(self.values)

    def key(self) -> tuple:
        return tuple(v for _, v in self.values)


@dataclass(frozen=True)
class FamilyOutput:
    quadruple: DioTuple
    params: FamilyParams
    advertised_k: int

    @property
    def advertised_torsion(self) -> str:
        return f"Z/2xZ/{2 * self.advertised_k}"


def _guard(family: str, params: dict, factors):
    for name, value in factors:
        if value == 0:
            raise DegenerateParameters(family, name, params)


def _finish(family: str, params: dict, quad, k: int, c_mode=None) -> FamilyOutput:
    names = "abcd"
    for i in range(4):
        if quad[i] == 0:
            raise DegenerateParameters(family, names[i], params)
        for j in range(i + 1, 4):
            if quad[i] == quad[j]:
                raise DegenerateParameters(family, f"{names[i]}-{names[j]}", params)
    try:
        dt = DioTuple(tuple(quad))
    except NotDiophantineError as exc:
        # the families are Diophantine by construction; reaching this is a bug
        raise AssertionError(f"{family} {params}: output not Diophantine: {exc}") from None
    fp = FamilyParams(family, tuple(params.items()), c_mode)
    return FamilyOutput(dt, fp, k)


# -- Z/2 x Z/2: two regular triples sharing {b, c} ---------------------------


def family_z2z2(t, a) -> FamilyOutput:
    t, a = as_rat(t), as_rat(a)
    params = {"t": t, "a": a}
    t2 = t * t
    _guard(
        "z2z2",
        params,
        [
            ("t", t),
            ("a", a),
            ("t^2-2at-4t+3", t2 - 2 * a * t - 4 * t + 3),
            ("t^2-2at+4t+3", t2 - 2 * a * t + 4 * t + 3),
            ("t^2+2at+4t+3", t2 + 2 * a * t + 4 * t + 3),
            ("t^2+2at-4t+3", t2 + 2 * a * t - 4 * t + 3),
            ("t-1", t - 1),
            ("t+1", t + 1),
            ("t-3", t - 3),
            ("t+3", t + 3),
        ],
    )
    b = (t2 - 2 * a * t - 4 * t + 3) * (t2 - 2 * a * t + 4 * t + 3) / (16 * t2 * a)
    c = (t2 + 2 * a * t + 4 * t + 3) * (t2 + 2 * a * t - 4 * t + 3) / (16 * t2 * a)
    d = (t - 1) * (t + 3) * (t - 3) * (t + 1) / (4 * t2 * a)
    return _finish("z2z2", params, (a, b, c, d), 1)


def family_z2z2_v(t, v) -> FamilyOutput:
    """z2z2 with a = (v^2-1)/(2v), which makes a^2+1 a square."""
    t, v = as_rat(t), as_rat(v)
    params = {"t": t, "v": v}
    _guard("z2z2v", params, [("v", v), ("v-1", v - 1), ("v+1", v + 1)])
    out = family_z2z2(t, (v * v - 1) / (2 * v))
    return FamilyOutput(out.quadruple, FamilyParams("z2z2v", tuple(params.items())), 1)


# (name, coefficients (t^2, t, 1) as functions of a)
Z2Z2_B1_FACTORS = [
    ("t^2+2at-1", lambda a: (1, 2 * a, -1)),
    ("t^2-6at-9", lambda a: (1, -6 * a, -9)),
    ("3t^2+2at-3", lambda a: (3, 2 * a, -3)),
    ("t^2-2at-9", lambda a: (1, -2 * a, -9)),
    ("t^2+6at-9", lambda a: (1, 6 * a, -9)),
    ("t^2-2at-1", lambda a: (1, -2 * a, -1)),
    ("t^2+2at-9", lambda a: (1, 2 * a, -9)),
    ("3t^2-2at-3", lambda a: (3, -2 * a, -3)),
]
# these split over Q(t) once a^2+1 is a square
Z2Z2_SPLITTING_FACTORS = ("t^2+2at-1", "t^2-6at-9", "t^2+6at-9", "t^2-2at-1")


def z2z2_curve_coeffs(t, a) -> tuple[Fraction, Fraction]:
    """(A1, B1) of the model y^2 = x^3 + A1 x^2 + B1 x for the z2z2 family."""
    t, a = as_rat(t), as_rat(a)
    _guard("z2z2", {"t": t, "a": a}, [("t", t), ("a", a)])
    A1 = (
        6 * t**8 - 48 * t**6 * a**2 + 96 * t**4 * a**4 - 120 * t**6 + 992 * t**4 * a**2
        + 708 * t**4 - 432 * t**2 * a**2 - 1080 * t**2 + 486
    )
    B1 = Fraction(1)
    for _, coeffs in Z2Z2_B1_FACTORS:
        c2, c1, c0 = coeffs(a)
        B1 *= c2 * t * t + c1 * t + c0
    return A1, B1


# -- Z/2 x Z/4: d = -1/a ---------------------------------------------------


def z2z4_prop3_c(a, b, d) -> Fraction:
    """Fourth element 8(d-a-b)(a+d-b)(b+d-a)/(a^2+b^2+d^2-2ab-2ad-2bd)^2."""
    den = a * a + b * b + d * d - 2 * a * b - 2 * a * d - 2 * b * d
    return 8 * (d - a - b) * (a + d - b) * (b + d - a) / den**2


def family_z2z4(t, u, c_mode: str = "regular") -> FamilyOutput:
    t, u = as_rat(t), as_rat(u)
    if c_mode not in C_MODES:
        raise ValueError(f"c_mode must be one of {C_MODES}, got {c_mode!r}")
    params = {"t": t, "u": u}
    _guard("z2z4", params, [("t-u", t - u), ("ut+1", u * t + 1), ("t", t), ("u", u)])
    a = (u * t + 1) / (t - u)
    b = 4 * t * u / ((t * u + 1) * (t - u))
    d = -(t - u) / (u * t + 1)
    if c_mode == "regular":
        _guard("z2z4", params, [("u-1", u - 1), ("u+1", u + 1), ("t-1", t - 1), ("t+1", t + 1)])
        c = (u - 1) * (u + 1) * (t - 1) * (t + 1) / ((u * t + 1) * (t - u))
    else:
        _guard(
            "z2z4",
            params,
            [
                ("a^2+b^2+d^2-2ab-2ad-2bd", a * a + b * b + d * d - 2 * a * b - 2 * a * d - 2 * b * d),
                ("d-a-b", d - a - b),
                ("a+d-b", a + d - b),
                ("b+d-a", b + d - a),
            ],
        )
        c = z2z4_prop3_c(a, b, d)
    return _finish("z2z4", params, (a, b, c, d), 2, c_mode)


def z2z4_half_of_origin(t, u) -> Point:
    """Closed-form R with 2R = (0,0) on the curve of the regular z2z4 quadruple."""
    t, u = as_rat(t), as_rat(u)
    x = (u + t) ** 2 * (u * t - 1) ** 2 / ((u * t + 1) ** 2 * (t - u) ** 2)
    y = (u * u + 1) * (t * t + 1) * (u + t) ** 2 * (u * t - 1) ** 2 / ((u * t + 1) ** 3 * (t - u) ** 3)
    return Point(x, y)


# -- Z/2 x Z/6: Lasic triples, regular fourth element, 3Q = O -------------


def z2z6_chain(k) -> dict:
    """Intermediate symbols of the z2z6 derivation, evaluated exactly from k.

    Returns t3, m, t2, t1 and the quadruple produced from them by the
    three-parameter triple formulas plus the regular fourth element.
    """
    k = as_rat(k)
    _guard("z2z6", {"k": k}, [("k", k), ("k-1", k - 1), ("k+1", k + 1)])
    t3 = -(2 * k * k + 1) / (k * (k * k + 2))
    m = 3 * k * (-2 + k - 2 * k * k + k**3) / (2 * (2 * k * k + 1) * (k * k - k + 1))
    t2 = m - 1 / t3
    _guard("z2z6", {"k": k}, [("t2", t2)])
    t1 = k / (t2 * t3)
    s = t1 * t2 * t3
    D = (s - 1) * (s + 1)
    a = 2 * t1 * (1 + t1 * t2 * (1 + t2 * t3)) / D
    b = 2 * t2 * (1 + t2 * t3 * (1 + t3 * t1)) / D
    c = 2 * t3 * (1 + t3 * t1 * (1 + t1 * t2)) / D
    d = -2 * (1 - t1 + t3 * t1) * (-t3 + t2 * t3 + 1) * (-t2 + 1 + t1 * t2) * (s - 1) / (s + 1) ** 3
    return {"t1": t1, "t2": t2, "t3": t3, "m": m, "quadruple": (a, b, c, d)}


def family_z2z6(k) -> FamilyOutput:
    k = as_rat(k)
    params = {"k": k}
    k2, k3 = k * k, k**3
    _guard(
        "z2z6",
        params,
        [
            ("k", k),
            ("k-1", k - 1),
            ("k+1", k + 1),
            ("2k^2+1", 2 * k2 + 1),
            ("k^2+2", k2 + 2),
            ("2k^2+k+2", 2 * k2 + k + 2),
            ("k^2-k+1", k2 - k + 1),
            ("3k^3-2k^2+2k-2", 3 * k3 - 2 * k2 + 2 * k - 2),
            ("2k^3-2k^2+2k-3", 2 * k3 - 2 * k2 + 2 * k - 3),
            ("4k^2-k+4", 4 * k2 - k + 4),
        ],
    )
    a = -2 * k * (k2 + 2) * (3 * k3 - 2 * k2 + 2 * k - 2) / ((1 + k) * (k - 1) * (2 * k2 + 1) * (2 * k2 + k + 2))
    b = -k * (1 + k) * (k - 1) * (2 * k2 + k + 2) * (4 * k2 - k + 4) / (
        2 * (k2 + 2) * (k2 - k + 1) ** 2 * (2 * k2 + 1)
    )
    c = 2 * (2 * k2 + 1) * (2 * k3 - 2 * k2 + 2 * k - 3) / ((1 + k) * (k - 1) * (2 * k2 + k + 2) * (k2 + 2))
    d = (2 * k2 + 1) * (1 + k) * (k2 + 2) * (k - 1) / (2 * (k2 - k + 1) ** 2 * (2 * k2 + k + 2))
    return _finish("z2z6", params, (a, b, c, d), 3)


# -- Z/2 x Z/8: halve the order-4 point once more -------------------------


def _z2z8_factors(u, v):
    W = -2 * u * u * v - 2 * v + v * v * u + u**3 + u
    return W, [
        ("u", u),
        ("v", v),
        ("u+1", u + 1),
        ("u-1", u - 1),
        ("-uv+v+1+u^2", -u * v + v + 1 + u * u),
        ("-uv+1+u^2", -u * v + 1 + u * u),
        ("-uv-v+1+u^2", -u * v - v + 1 + u * u),
        ("u-v+1", u - v + 1),
        ("u-v", u - v),
        ("u-v-1", u - v - 1),
        ("u^2+1-v^2", u * u + 1 - v * v),
        ("-2u^2v-2v+v^2u+u^3+u", W),
        ("-2u^2v-2v+v^2u+u^3+u-u^2-1+v^2", W - u * u - 1 + v * v),
        ("-2u^2v-2v+v^2u+u^3+u+u^2+1-v^2", W + u * u + 1 - v * v),
    ]


def z2z8_t(u, v) -> Fraction:
    """The z2z4 parameter t making (u^2+1)(t^2+1) a square."""
    u, v = as_rat(u), as_rat(v)
    W, _ = _z2z8_factors(u, v)
    return -W / (u * u + 1 - v * v)


def family_z2z8(u, v) -> FamilyOutput:
    u, v = as_rat(u), as_rat(v)
    params = {"u": u, "v": v}
    W, factors = _z2z8_factors(u, v)
    _guard("z2z8", params, factors)
    w = u - v
    U = u * u + 1
    a = (w + 1) * (w - 1) / (2 * w)
    b = -2 * (U - v * v) * u * W / (U**2 * w * (w + 1) * (w - 1))
    c = (W - U + v * v) * (W + U - v * v) * (u + 1) * (u - 1) / (2 * U**2 * w * (w + 1) * (w - 1))
    d = -2 * w / ((w + 1) * (w - 1))
    return _finish("z2z8", params, (a, b, c, d), 4)


def z2z8_T(u, v) -> Fraction:
    """Parameter T of the standard Z/2 x Z/8 model with the same j-invariant."""
    u, v = as_rat(u), as_rat(v)
    den = v * u - u * u - 1
    if den == 0:
        raise DegenerateParameters("z2z8", "vu-u^2-1", {"u": u, "v": v})
    T = v / den
    if T == 0 or T * T == 1:
        raise DegenerateParameters("z2z8", "T(T^2-1)", {"u": u, "v": v})
    return T


# -- registry --------------------------------------------------------------


@dataclass(frozen=True)
class FamilySpec:
    name: str
    func: Callable[..., FamilyOutput]
    param_names: tuple
    advertised_k: int
    takes_c_mode: bool = False


FAMILIES = {
    "z2z2": FamilySpec("z2z2", family_z2z2, ("t", "a"), 1),
    "z2z2v": FamilySpec("z2z2v", family_z2z2_v, ("t", "v"), 1),
    "z2z4": FamilySpec("z2z4", family_z2z4, ("t", "u"), 2, takes_c_mode=True),
    "z2z6": FamilySpec("z2z6", family_z2z6, ("k",), 3),
    "z2z8": FamilySpec("z2z8", family_z2z8, ("u", "v"), 4),
}


def evaluate_family(name: str, params: dict, c_mode: Optional[str] = None) -> FamilyOutput:
    try:
        spec = FAMILIES[name]
    except KeyError:
        raise ValueError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    missing = [p for p in spec.param_names if p not in params]
    extra = [p for p in params if p not in spec.param_names]
    if missing or extra:
        raise ValueError(f"family {name} takes parameters {spec.param_names}; missing {missing}, unexpected {extra}")
    args = [as_rat(params[p]) for p in spec.param_names]
    if spec.takes_c_mode:
        return spec.func(*args, c_mode=c_mode or "regular")
    if c_mode is not None:
        raise ValueError(f"family {name} has no c-mode")
    return spec.func(*args)


def family_curve(out: FamilyOutput) -> Curve:
    return induced_curve(out.quadruple).curve


def random_rational(rng, height: int) -> Fraction:
    return Fraction(rng.randint(-height, height), rng.randint(1, height))


def sample_family(name: str, count: int, seed: int = 0, height: int = 12, c_mode: Optional[str] = None,
                  max_tries: int = 100_000) -> list[FamilyOutput]:
    """``count`` nondegenerate outputs from random small-height parameters.

    Degenerate draws are discarded; the sequence depends only on the seed.
    """
    rng = random.Random(seed)
    spec = FAMILIES[name]
    out = []
    for _ in range(max_tries):
        if len(out) == count:
            return out
        params = {p: random_rational(rng, height) for p in spec.param_names}
        try:
            res = evaluate_family(name, params, c_mode)
            induced_curve(res.quadruple)
        except DegenerateError:
            continue
        out.append(res)
    raise RuntimeError(f"only {len(out)} nondegenerate {name} samples in {max_tries} draws")
