"""Parameter grids over a family, scored by Mestre-Nagao sums.

Grid grammar (pairs separated by commas)::

    t=142/53                 single value
    t=1/2|3|142/53           explicit list
    k=1..5 step 1/2          inclusive range with exact rational step (default 1)

Points are evaluated in lexicographic parameter order; with ``jobs > 1`` a
process pool maps over the same ordered list, so output does not depend on
the job count.
"""

from __future__ import annotations

import csv
import io
import itertools
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .diophantine import induced_curve
from .errors import DegenerateError, ParseError
from .families import FAMILIES, evaluate_family
from .numeric import DEFAULT_EFFORT, FactorEffort, format_rat, parse_rat
from .rank import SCORE_DIGITS, integer_model, mestre_nagao_sum, naive_point_search, trivial_rank_bound

_RANGE = re.compile(r"(\S+)\.\.(\S+?)(?:\s+step\s+(\S+))?\Z")
MAX_GRID = 1_000_000


def parse_values(text: str) -> list[Fraction]:
    text = text.strip()
    m = _RANGE.match(text)
    if m:
        lo, hi = parse_rat(m.group(1)), parse_rat(m.group(2))
        step = parse_rat(m.group(3)) if m.group(3) else Fraction(1)
        if step <= 0:
            raise ParseError(f"range step must be positive in {text!r}")
        if hi < lo:
            raise ParseError(f"empty range {text!r}")
        n = int((hi - lo) / step) + 1
        if n > MAX_GRID:
            raise ParseError(f"range {text!r} has {n} values (limit {MAX_GRID})")
        return [lo + i * step for i in range(n)]
    return [parse_rat(tok.strip()) for tok in text.split("|")]


def parse_params(text: str) -> dict[str, list[Fraction]]:
    """``name=values`` pairs separated by commas, in the grammar above."""
    out: dict[str, list[Fraction]] = {}
    for chunk in text.split(","):
        if not chunk.strip():
            continue
        name, sep, values = chunk.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise ParseError(f"expected name=value, got {chunk.strip()!r}")
        if name in out:
            raise ParseError(f"parameter {name!r} given twice")
        out[name] = parse_values(values)
    if not out:
        raise ParseError("no parameters given")
    return out


def parse_point_params(text: str) -> dict[str, Fraction]:
    grid = parse_params(text)
    single = {}
    for name, vals in grid.items():
        if len(vals) != 1:
            raise ParseError(f"parameter {name!r} must have exactly one value here")
        single[name] = vals[0]
    return single


def grid_points(family: str, grid: dict[str, list[Fraction]]) -> list[tuple[Fraction, ...]]:
    spec = FAMILIES[family]
    missing = [p for p in spec.param_names if p not in grid]
    extra = [p for p in grid if p not in spec.param_names]
    if missing or extra:
        raise ParseError(f"family {family} takes {spec.param_names}; missing {missing}, unexpected {extra}")
    axes = [sorted(set(grid[p])) for p in spec.param_names]
    return list(itertools.product(*axes))


@dataclass(frozen=True)
class SweepConfig:
    family: str
    N: int
    c_mode: Optional[str] = None
    search_bound: int = 4
    effort: FactorEffort = DEFAULT_EFFORT


def evaluate_point(cfg: SweepConfig, point: tuple) -> Optional[dict]:
    """One grid point -> report row, or None when degenerate."""
    names = FAMILIES[cfg.family].param_names
    params = dict(zip(names, point))
    try:
        out = evaluate_family(cfg.family, params, cfg.c_mode)
        bundle = induced_curve(out.quadruple)
    except DegenerateError:
        return None
    model = integer_model(bundle.curve)
    score = mestre_nagao_sum(model, cfg.N)
    bound, incomplete = trivial_rank_bound(model, cfg.effort)
    witnesses = 0
    if cfg.search_bound > 0:
        witnesses = sum(1 for fp in naive_point_search(bundle.curve, cfg.search_bound) if not fp.is_torsion)
    return {
        "params": {k: format_rat(v) for k, v in params.items()},
        "quadruple": [format_rat(e) for e in out.quadruple],
        "N": cfg.N,
        "S": format(score.value, "f"),
        "trivial_bound": bound,
        "bound_is_lower": incomplete,
        "bad_primes": len(score.skipped),
        "search_bound": cfg.search_bound,
        "non_torsion_witnesses": witnesses,
    }


def _worker(args):
    cfg, point = args
    return evaluate_point(cfg, point)


def run_sweep(cfg: SweepConfig, grid: dict[str, list[Fraction]], top: int, jobs: int = 1) -> dict:
    if cfg.N < 2:
        raise ValueError("sieve cutoff N must be at least 2")
    points = grid_points(cfg.family, grid)
    if not points:
        raise ParseError("empty grid")
    if jobs <= 1:
        rows = [evaluate_point(cfg, p) for p in points]
    else:
        chunk = max(1, len(points) // (jobs * 4))
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_worker, [(cfg, p) for p in points], chunksize=chunk))
    evaluated = [(p, r) for p, r in zip(points, rows) if r is not None]
    skipped = len(points) - len(evaluated)
    # descending score; ties by parameter order
    evaluated.sort(key=lambda pr: (-Fraction(pr[1]["S"]), pr[0]))
    ranked = [r for _, r in evaluated[:top]] if top > 0 else [r for _, r in evaluated]
    return {
        "command": "sweep",
        "family": cfg.family,
        "c_mode": cfg.c_mode,
        "N": cfg.N,
        "score": f"sum over good odd p<=N of (2-a_p)*log(p)/p, {SCORE_DIGITS} significant digits, round-half-even",
        "grid_size": len(points),
        "evaluated": len(evaluated),
        "skipped_degenerate": skipped,
        "rows": ranked,
    }


CSV_COLUMNS = ["rank", "params", "N", "S", "trivial_bound", "bound_is_lower", "bad_primes", "search_bound",
               "non_torsion_witnesses", "quadruple"]


def rows_to_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for i, row in enumerate(report["rows"], start=1):
        w.writerow([
            i,
            ";".join(f"{k}={v}" for k, v in row["params"].items()),
            row["N"],
            row["S"],
            row["trivial_bound"],
            int(row["bound_is_lower"]),
            row["bad_primes"],
            row["search_bound"],
            row["non_torsion_witnesses"],
            " ".join(row["quadruple"]),
        ])
    return buf.getvalue()
