"""Acceptance gate. Each test prints one PASS/FAIL line with its tolerance,
measured runtime and budget, then asserts the same verdict.

Run alone with ``pytest tests/test_acceptance.py -v``; the lines are written
straight to the terminal.
"""

import itertools
import json
import random
import time
from fractions import Fraction

import pytest

from dioquad.curve import O, Curve, Point, _add, j_invariant, mul, on_curve, t_form_curve
from dioquad.diophantine import (
    extension_point_forward,
    induced_curve,
    is_diophantine_tuple,
    quintuple_candidates,
)
from dioquad.errors import DegenerateError
from dioquad.families import (
    family_z2z2_v,
    family_z2z6,
    family_z2z8,
    random_rational,
    sample_family,
    z2z8_T,
)
from dioquad.fixtures import load_fixtures
from dioquad.numeric import primes_up_to
from dioquad.rank import integer_model, is_good, naive_point_search, trace_ap, trivial_rank_bound
from dioquad.sweep import SweepConfig, parse_params, run_sweep
from dioquad.torsion import (
    count_points_mod_p,
    halve_point,
    in_double_subgroup,
    is_good_prime,
    reduce_mod_p,
    torsion_group,
    torsion_order_bound,
)

F = Fraction
FIX = load_fixtures()
EULER_X = F(777480, 8288641)
SEED = 20201


def gate(capsys, num, title, ok, detail, elapsed, budget=None):
    within = budget is None or elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f" / budget {budget:g}s" if budget is not None else ""
    line = f"[{verdict}] criterion {num}: {title}: {detail} ({elapsed:.2f}s{limit})"
    with capsys.disabled():
        print("\n" + line)
    assert verdict == "PASS", line


def jacobi(a, n):
    """Jacobi symbol by quadratic reciprocity; independent of any table of squares."""
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def legendre_count(A, B, p):
    return p + 1 + sum(jacobi((x**3 + A * x * x + B * x) % p, p) for x in range(p))


def mutations(tup, rng, count=10):
    out = []
    while len(out) < count:
        i = rng.randrange(len(tup))
        delta = F(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((1, -1))
        m = list(tup)
        m[i] = m[i] + delta
        if m[i] != 0:
            out.append(tuple(m))
    return out


# -- 1 ---------------------------------------------------------------------


def test_c1_fixture_tuples(capsys):
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    bad = []
    survivors = []
    for name, tup in FIX.items():
        if not is_diophantine_tuple(tup).ok:
            bad.append(name)
        for m in mutations(tup, rng):
            if is_diophantine_tuple(m).ok:
                survivors.append((name, m))
    el = time.perf_counter() - t0
    ok = len(FIX) == 14 and not bad and not survivors
    detail = f"{len(FIX) - len(bad)}/{len(FIX)} fixtures exact, {len(survivors)} of {10 * len(FIX)} mutations survived"
    gate(capsys, 1, "fixture tuples, exact", ok, detail, el, 5)


# -- 2 ---------------------------------------------------------------------


def test_c2_family_reproduction(capsys):
    t0 = time.perf_counter()
    cases = [
        (family_z2z2_v(F(142, 53), F(142, 23)), "z2z2_rank10_a"),
        (family_z2z2_v(F(59, 4), F(59, 34)), "z2z2_rank10_b"),
        (family_z2z6(23), "z2z6_rank3_a"),
        (family_z2z6(F(-22, 13)), "z2z6_rank3_b"),
    ]
    hits = sum(tuple(out.quadruple) == FIX[name] for out, name in cases)
    el = time.perf_counter() - t0
    gate(capsys, 2, "family reproduction, ordered exact equality", hits == 4, f"{hits}/4 match", el, 1)


# -- 3 ---------------------------------------------------------------------


EXPECTED = {
    "z2z8_rank3": 4,
    "z2z6_rank3_a": 3,
    "z2z6_rank3_b": 3,
    "z2z4_rank6_a": 2,
    "z2z4_rank6_b": 2,
    "z2z2_rank10_a": 1,
    "z2z2_rank10_b": 1,
}


def test_c3_torsion_classification(capsys):
    t0 = time.perf_counter()
    parts = []
    ok = True
    for name, k in EXPECTED.items():
        c = induced_curve(FIX[name]).curve
        tc = torsion_group(c)
        g = torsion_order_bound(c, 10)
        good = tc.k == k and g % (4 * k) == 0
        ok &= good
        parts.append(f"{name}={tc.name} gcd={g}{'' if good else ' MISMATCH'}")
    el = time.perf_counter() - t0
    gate(capsys, 3, "torsion classification + mod-p gcd, exact", ok, "; ".join(parts), el, 30)


# -- 4 ---------------------------------------------------------------------


def test_c4_family_torsion_properties(capsys):
    t0 = time.perf_counter()
    problems = []
    counts = {}
    for name in ("z2z2", "z2z2v", "z2z4", "z2z6", "z2z8"):
        outs = sample_family(name, 100, seed=SEED)
        counts[name] = len(outs)
        for out in outs:
            q = out.quadruple
            if not is_diophantine_tuple(q).ok:
                problems.append(f"{name} {q} not Diophantine")
            if name in ("z2z4", "z2z8") and q[0] * q[3] != -1:
                problems.append(f"{name} {q}: ad != -1")
            if name in ("z2z4", "z2z6", "z2z8"):
                k = torsion_group(induced_curve(q).curve).k
                if name == "z2z4" and k % 2:
                    problems.append(f"z2z4 {q}: torsion k={k}")
                if name == "z2z6" and k != 3:
                    problems.append(f"z2z6 {q}: torsion k={k}")
                if name == "z2z8" and k != 4:
                    problems.append(f"z2z8 {q}: torsion k={k}")
    el = time.perf_counter() - t0
    ok = not problems and all(n == 100 for n in counts.values())
    detail = f"draws {counts}, {len(problems)} violations" + (f" first: {problems[0]}" if problems else "")
    gate(capsys, 4, "family torsion properties, seed %d" % SEED, ok, detail, el, 300)


# -- 5 ---------------------------------------------------------------------


def test_c5_q_in_double_subgroup(capsys):
    t0 = time.perf_counter()
    # every 4-subset of the fixtures, in the listed order
    quads = sorted({sub for tup in FIX.values() for sub in itertools.combinations(tup, 4)})
    n_fix = len(quads)
    for name in ("z2z2v", "z2z4", "z2z6", "z2z8"):
        quads += [tuple(o.quadruple) for o in sample_family(name, 25, seed=SEED + 5)]
    failures = 0
    for q in quads:
        a, b, c, d = q
        bundle = induced_curve(q)
        sq = in_double_subgroup(bundle.curve, bundle.Q)
        if sq is None or (
            sq.alpha**2 != (a * d + 1) * (b * c + 1)
            or sq.beta**2 != (a * c + 1) * (b * d + 1)
            or sq.gamma**2 != (a * b + 1) * (c * d + 1)
        ):
            failures += 1
    el = time.perf_counter() - t0
    detail = f"{len(quads) - failures}/{len(quads)} ({n_fix} fixture quadruples + 100 family outputs), exact"
    gate(capsys, 5, "Q in 2E(Q) with the three product squares", failures == 0, detail, el)


# -- 6 ---------------------------------------------------------------------


def test_c6_j_coincidence(capsys):
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    tested = mismatches = 0
    while tested < 50:
        u, v = random_rational(rng, 12), random_rational(rng, 12)
        try:
            out = family_z2z8(u, v)
            T = z2z8_T(u, v)
            assert T == v / (v * u - u * u - 1)
            curve = induced_curve(out.quadruple).curve
        except DegenerateError:
            continue
        tested += 1
        mismatches += j_invariant(curve) != j_invariant(t_form_curve(T))
    el = time.perf_counter() - t0
    gate(capsys, 6, "j(z2z8 curve) == j(t-form at v/(vu-u^2-1))", mismatches == 0,
         f"{tested - mismatches}/{tested} exact rational equality", el)


# -- 7 ---------------------------------------------------------------------


SEARCH_BOUND = 20


def test_c7a_trivial_bound(capsys):
    t0 = time.perf_counter()
    m = integer_model(induced_curve(FIX["z2z2_rank10_a"]).curve)
    bound, incomplete = trivial_rank_bound(m)
    el = time.perf_counter() - t0
    gate(capsys, "7a", "omega rank bound on the (142/53,142/23) curve", bound >= 10 and not incomplete,
         f"bound={bound}, complete={not incomplete}", el)


def test_c7b_naive_search(capsys):
    t0 = time.perf_counter()
    c = induced_curve(FIX["fermat"]).curve
    found = [fp for fp in naive_point_search(c, SEARCH_BOUND) if not fp.is_torsion]
    el = time.perf_counter() - t0
    pts = ", ".join(f"({fp.point.x},{fp.point.y})" for fp in found[:3])
    gate(capsys, "7b", f"naive search, height bound {SEARCH_BOUND}, Fermat curve", len(found) >= 1,
         f"{len(found)} non-torsion points, e.g. {pts}", el)


def test_c7c_parallel_reproducibility(capsys):
    t0 = time.perf_counter()
    grid = parse_params("t=1/2..5 step 1/2,v=2..11")
    cfg = SweepConfig("z2z2v", 1000, search_bound=0)
    one = json.dumps(run_sweep(cfg, grid, 0, jobs=1), indent=2).encode()
    eight = json.dumps(run_sweep(cfg, grid, 0, jobs=8), indent=2).encode()
    el = time.perf_counter() - t0
    size = json.loads(one)["grid_size"]
    gate(capsys, "7c", "sweep bytes, jobs=1 vs jobs=8, N=1000", one == eight and size == 100,
         f"grid {size} points, {len(one)} bytes, identical={one == eight}", el)


# -- 8 ---------------------------------------------------------------------


def _random_curve(rng):
    while True:
        p1, p2 = random_rational(rng, 30), random_rational(rng, 30)
        if p1 and p2 and p1 != p2:
            return Curve(p1, p2)


def test_c8a_point_count_oracle(capsys):
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    checked = mismatches = hasse = 0
    for _ in range(20):
        c = _random_curve(rng)
        m = integer_model(c)
        for p in primes_up_to(200):
            if p == 2 or not is_good_prime(c, p):
                continue
            A, B = reduce_mod_p(c, p)
            n = count_points_mod_p(c, p)
            checked += 1
            mismatches += n != legendre_count(A, B, p)
            ap = p + 1 - n
            hasse += ap * ap > 4 * p
            if is_good(m, p):
                mismatches += trace_ap(m, p) != ap
    el = time.perf_counter() - t0
    gate(capsys, "8a", "point counts vs Jacobi-symbol oracle, p <= 200, 20 curves",
         checked > 0 and mismatches == 0 and hasse == 0,
         f"{checked} (curve, p) pairs, {mismatches} mismatches, {hasse} Hasse violations", el)


def test_c8b_halving(capsys):
    t0 = time.perf_counter()
    rng = random.Random(SEED)
    trials = passes = bad = 0
    while trials < 500:
        x0, y0, p1 = (random_rational(rng, 20) for _ in range(3))
        if x0 == 0 or y0 == 0 or x0 + p1 == 0 or p1 == 0:
            continue
        p2 = y0 * y0 / (x0 * (x0 + p1)) - x0
        if p2 == 0 or p2 == p1:
            continue
        c = Curve(p1, p2)
        P = Point(x0, y0)
        # half the trials use a doubled point, half the raw point
        q = mul(c, 2, P) if trials % 2 == 0 else P
        if q == O:
            continue
        trials += 1
        sq = in_double_subgroup(c, q)
        halves = halve_point(c, q)
        if sq is None:
            bad += bool(halves)
            continue
        passes += 1
        if len(halves) != 4:
            bad += 1
        for R in halves:
            if _add(c, R, R) != q or (R.x**2 - c.B) ** 2 != 4 * R.y**2 * q.x or not on_curve(c, R):
                bad += 1
    el = time.perf_counter() - t0
    gate(capsys, "8b", "halve_point verified by doubling, 500 trials", bad == 0 and passes > 0,
         f"{passes} trials passed the square test, {bad} failures", el)


# -- 9 ---------------------------------------------------------------------


def test_c9_euler_extension(capsys):
    t0 = time.perf_counter()
    fermat = FIX["fermat"]
    pt = extension_point_forward(fermat, EULER_X)
    on = on_curve(induced_curve(fermat).curve, pt)
    (cand,) = quintuple_candidates(fermat, [pt])
    el = time.perf_counter() - t0
    ok = on and cand.is_extension and cand.X == EULER_X
    gate(capsys, 9, "Euler extension X=777480/8288641, exact", ok,
         f"point ({pt.x},{pt.y}) on curve={on}, candidate valid={cand.is_extension}", el, 1)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
