"""Torsion census of random draws from each family.

Counts how often each torsion group occurs; e.g. the regular z2z4 family
occasionally lands on Z/2 x Z/8.

    python scripts/family_census.py --draws 200 --seed 1
"""

import argparse
import collections
import time

from dioquad.diophantine import induced_curve
from dioquad.families import FAMILIES, sample_family
from dioquad.torsion import torsion_group


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--draws", type=int, default=100)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--height", type=int, default=12)
    ap.add_argument("--families", nargs="*", default=sorted(FAMILIES))
    args = ap.parse_args()
    for name in args.families:
        t0 = time.perf_counter()
        outs = sample_family(name, args.draws, seed=args.seed, height=args.height)
        tally = collections.Counter(torsion_group(induced_curve(o.quadruple).curve).name for o in outs)
        shown = ", ".join(f"{g}: {n}" for g, n in sorted(tally.items()))
        print(f"{name:<6} {shown}  ({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    main()
