"""Build compact MRA sets for a few matrices and write one SVG per matrix.

Each picture overlays K (blue) and A^-1 K (red).  A table of stage areas
is printed alongside.

    python scripts/mra_gallery.py --out gallery/
"""
import argparse
import os

from strictexp.geom import region_to_svg
from strictexp.intmat import format_matrix, frac_str, inverse_rational
from strictexp.mra import compactmra
from strictexp.spectral import ellipsoid_seed_auto

MATRICES = [((1, 1), (-1, 1)), ((0, 1), (2, 0)), ((2, 1), (-1, -2)), ((0, 1), (3, 0)),
            ((1, -2), (2, 1)), ((2, -1), (3, 1))]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="gallery")
    args = ap.parse_args()
    os.makedirs(args.out, exist_ok=True)
    for A in MATRICES:
        tr = compactmra(A, ellipsoid_seed_auto(A))
        layers = [(tr.K, "#4a90d9"), (tr.K.transform(inverse_rational(A)), "#d9534f")]
        name = format_matrix(A).replace(";", "_").replace(",", "").replace("-", "m")
        path = os.path.join(args.out, f"mra_{name}.svg")
        with open(path, "w") as fh:
            fh.write(region_to_svg(layers))
        areas = ", ".join(frac_str(s.area) for s in tr.stages)
        print(f"{format_matrix(A):<12} stages {tr.terminated_at:>2}  pieces {len(tr.K.parts):>3}  "
              f"areas [{areas}]  -> {path}")


if __name__ == "__main__":
    main()
