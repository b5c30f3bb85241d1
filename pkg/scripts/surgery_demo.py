"""Repair the unit square for every planar connected dominant matrix with norm one.

Prints the cap size used and writes an SVG of each repaired tile.

    python scripts/surgery_demo.py --range 3 --out surgery/
"""
import argparse
import itertools
import os

from strictexp.dominance import SURGERY_NEEDED, dominance_cert, surgery
from strictexp.geom import region_to_svg, strict_inclusion, unit_cube
from strictexp.intmat import format_matrix, inverse_rational
from strictexp.tiling import verify_tiles


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--range", type=int, default=3)
    ap.add_argument("--out", default=None, help="directory for SVG files")
    args = ap.parse_args()
    if args.out:
        os.makedirs(args.out, exist_ok=True)
    r = args.range
    for a, b, c, d in itertools.product(range(-r, r + 1), repeat=4):
        A = ((a, b), (c, d))
        if dominance_cert(A).verdict != SURGERY_NEEDED:
            continue
        T = surgery(A, unit_cube())
        ok = verify_tiles(T).tiles and strict_inclusion(A, T)
        print(f"{format_matrix(A):<12} pieces {len(T.parts):>2}  certified {ok}")
        if args.out:
            name = format_matrix(A).replace(";", "_").replace(",", "").replace("-", "m")
            with open(os.path.join(args.out, f"surgery_{name}.svg"), "w") as fh:
                fh.write(region_to_svg([(T, "#4a90d9"),
                                        (T.transform(inverse_rational(A)), "#d9534f")]))


if __name__ == "__main__":
    main()
