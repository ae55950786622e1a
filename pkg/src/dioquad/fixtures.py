"""Named tuples shipped in ``data/tuples.txt``."""

from __future__ import annotations

from importlib import resources

from .diophantine import read_tuple_lines

FIXTURE_FILE = "tuples.txt"

# expected torsion k (group Z/2 x Z/2k) of the induced curve, for quadruples
EXPECTED_K = {
    "z2z2_rank10_a": 1,
    "z2z2_rank10_b": 1,
    "z2z4_rank6_a": 2,
    "z2z4_rank6_b": 2,
    "z2z6_rank3_a": 3,
    "z2z6_rank3_b": 3,
    "z2z8_rank3": 4,
}


def fixture_path():
    return resources.files("dioquad") / "data" / FIXTURE_FILE


def fixture_text() -> str:
    return fixture_path().read_text(encoding="utf-8")


def load_fixtures() -> dict[str, tuple]:
    lines = fixture_text().splitlines()
    names = {}
    pending = None
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if s.startswith("# @name"):
            pending = s.split(None, 2)[2]
        elif s and not s.startswith("#"):
            if pending is None:
                raise ValueError(f"{FIXTURE_FILE}:{lineno}: tuple without a name")
            names[lineno] = pending
            pending = None
    return {names[lineno]: tup for lineno, tup in read_tuple_lines(lines)}


def quadruple_fixtures() -> dict[str, tuple]:
    return {k: v for k, v in load_fixtures().items() if len(v) == 4}
