"""Classify every 2x2 integer matrix with entries in [-R, R] and print a verdict table.

    python scripts/scan_table.py --range 3 --construct --jobs 1
"""
import argparse
import json
import time
from collections import Counter

from strictexp.classify2d import ClassifyConfig
from strictexp.cli import scan_rows, scan_summary
from strictexp.intmat import det, trace


def by_determinant(rows):
    table = Counter()
    for A, conv, gen in rows:
        if conv == "NotExpansive":
            continue
        d = det(A)
        key = "|det|=2" if abs(d) == 2 else ("x^2-3 class" if (d, trace(A)) == (-3, 0) else
                                              f"det {'>' if d > 0 else '<'} 0, |det|>2")
        table[(key, conv, gen)] += 1
    return table


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--range", type=int, default=3)
    ap.add_argument("--construct", action="store_true", help="search for explicit witnesses")
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--json", metavar="PATH", help="write the summary as JSON")
    args = ap.parse_args()

    t0 = time.perf_counter()
    rows = scan_rows(args.range, ClassifyConfig(construct=args.construct), args.jobs)
    summary = scan_summary(rows)
    dt = time.perf_counter() - t0

    print(f"{summary['total']} matrices, entries in [-{args.range}, {args.range}], {dt:.1f}s")
    print(f"{'class':<22} {'convex symmetric':<16} {'general set':<14} {'count':>6}")
    for (key, conv, gen), n in sorted(by_determinant(rows).items()):
        print(f"{key:<22} {conv:<16} {gen:<14} {n:>6}")
    print(f"violations: {len(summary['violations'])}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"range": args.range, "construct": args.construct, **summary}, fh, indent=2)


if __name__ == "__main__":
    main()
