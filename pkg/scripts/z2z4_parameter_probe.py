"""Search small (t, u) for z2z4 outputs matching a target quadruple's a, b, d.

Reports, for each hit, the regular and prop3 fourth elements next to the
target's c, so mismatches in c are visible.

    python scripts/z2z4_parameter_probe.py --target z2z4_rank6_a --height 12
"""

import argparse
from fractions import Fraction

from dioquad.errors import DegenerateError
from dioquad.families import family_z2z4
from dioquad.fixtures import quadruple_fixtures


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--target", default="z2z4_rank6_a")
    ap.add_argument("--height", type=int, default=12)
    args = ap.parse_args()
    a0, b0, c0, d0 = quadruple_fixtures()[args.target]
    H = args.height
    vals = sorted({Fraction(n, m) for n in range(-H, H + 1) for m in range(1, H + 1) if n})
    print(f"target a={a0} b={b0} c={c0} d={d0}")
    for t in vals:
        for u in vals:
            try:
                a, b, c, d = family_z2z4(t, u).quadruple
            except DegenerateError:
                continue
            if {a, b} != {a0, b0} or d != d0:
                continue
            try:
                c3 = family_z2z4(t, u, c_mode="prop3").quadruple[2]
            except DegenerateError:
                c3 = None
            print(f"t={t} u={u}: regular c={c} prop3 c={c3} matches={c0 in (c, c3)}")


if __name__ == "__main__":
    main()
