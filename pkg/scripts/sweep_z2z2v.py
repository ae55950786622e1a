"""Mestre-Nagao sweep of the z2z2v family around (142/53, 142/23).

Writes the ranked table as CSV and prints the top rows.

    python scripts/sweep_z2z2v.py --N 1000 --jobs 4 --out sweep.csv
"""

import argparse

from dioquad.sweep import SweepConfig, parse_params, rows_to_csv, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--params", default="t=142/53|2|3|59/4,v=142/23|2|3|59/34")
    ap.add_argument("--N", type=int, default=1000)
    ap.add_argument("--top", type=int, default=10)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--search-bound", type=int, default=4)
    ap.add_argument("--out")
    args = ap.parse_args()
    cfg = SweepConfig("z2z2v", args.N, search_bound=args.search_bound)
    rep = run_sweep(cfg, parse_params(args.params), args.top, args.jobs)
    text = rows_to_csv(rep)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    print(f"grid {rep['grid_size']}, evaluated {rep['evaluated']}, degenerate {rep['skipped_degenerate']}")
    for line in text.splitlines()[: args.top + 1]:
        print(line)


if __name__ == "__main__":
    main()
