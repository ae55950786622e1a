"""Torsion of every bundled quadruple's induced curve, with the mod-p gcd check.

    python scripts/fixture_torsion.py [--primes 10]
"""

import argparse

from dioquad.diophantine import induced_curve
from dioquad.fixtures import EXPECTED_K, quadruple_fixtures
from dioquad.rank import integer_model, trivial_rank_bound
from dioquad.torsion import torsion_group, torsion_order_bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--primes", type=int, default=10)
    args = ap.parse_args()
    print(f"{'fixture':<16} {'torsion':<10} {'expected':<10} {'gcd':>5} {'omega bound':>12}")
    for name, quad in quadruple_fixtures().items():
        c = induced_curve(quad).curve
        tc = torsion_group(c)
        exp = EXPECTED_K.get(name)
        bound, incomplete = trivial_rank_bound(integer_model(c))
        print(f"{name:<16} {tc.name:<10} {'Z/2xZ/%d' % (2 * exp) if exp else '-':<10} "
              f"{torsion_order_bound(c, args.primes):>5} {str(bound) + ('+' if incomplete else ''):>12}")


if __name__ == "__main__":
    main()
