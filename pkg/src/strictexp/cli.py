"""Command line entry point: classify, witness, verify, construct, render, scan.

Exit codes: 0 decided, 1 usage or input error, 2 open or unknown,
3 certification failure.
"""
from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections import Counter
from dataclasses import dataclass
from multiprocessing import Pool
from typing import Optional

from .certificate import certify
from .classify2d import ClassifyConfig, classify2d
from .dominance import surgery
from .errors import (CertificationFailed, InvalidRegion, MatrixParseError, NonTermination,
                     PreconditionFailed, SeedNotFound, StrictExpError)
from .geom import (Region, region_from_json, region_to_json, region_to_svg, strict_inclusion,
                   unit_cube)
from .intmat import det, format_matrix, inverse_rational, parse_matrix, trace
from .mra import compactmra
from .spectral import ellipsoid_seed_auto
from .tiling import verify_tiles

EXIT_OK, EXIT_USAGE, EXIT_OPEN, EXIT_CERT = 0, 1, 2, 3


@dataclass(frozen=True)
class RunConfig:
    command: str
    matrix: Optional[str] = None
    corpus: Optional[str] = None
    region: Optional[str] = None
    json: bool = False
    svg: Optional[str] = None
    output: Optional[str] = None
    max_u_denom: int = 2 ** 10
    hex_grid: int = 12
    vec_cap: int = 50
    reduce_depth: int = 12
    max_stages: int = 64
    jobs: int = 1
    range: int = 3
    method: str = "auto"

    def validate(self):
        for name in ("max_u_denom", "hex_grid", "vec_cap", "reduce_depth", "max_stages",
                     "jobs", "range"):
            if getattr(self, name) < 1:
                raise ValueError(f"--{name.replace('_', '-')} must be positive")
        if self.command in ("classify",):
            if (self.matrix is None) == (self.corpus is None):
                raise ValueError("give exactly one of -m/--matrix or --corpus")
        elif self.command in ("witness", "verify", "construct") and self.matrix is None:
            raise ValueError(f"{self.command} needs -m/--matrix")
        if self.command in ("verify", "render") and self.region is None:
            raise ValueError(f"{self.command} needs -k/--region")

    def classify_config(self, construct: bool) -> ClassifyConfig:
        return ClassifyConfig(self.max_u_denom, self.hex_grid, self.vec_cap,
                              self.reduce_depth, construct)


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def _emit(cfg: RunConfig, text: str):
    if cfg.output:
        with open(cfg.output, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _load_region(path: str) -> Region:
    with open(path) as fh:
        obj = json.load(fh)
    # accept bare Region JSON or any report carrying one
    for key in ("region", "K", "witness"):
        if isinstance(obj, dict) and key in obj and isinstance(obj[key], dict):
            obj = obj[key]
            break
    return region_from_json(obj)


# ---------------------------------------------------------------------------

def _classify_one(A, cfg: RunConfig):
    cert = certify(A)
    out = {"certificate": cert.to_json()}
    code = EXIT_OK if cert.decided else EXIT_OPEN
    if len(A) == 2:
        o = classify2d(A, cfg.classify_config(construct=False))
        out["planar"] = o.to_json()
        code = EXIT_OPEN if o.is_open else EXIT_OK
    return out, code


def _classify_text(res) -> str:
    c = res["certificate"]
    lines = [f"matrix {c['matrix']}  det {c['det']}  expansive {c['expansive']}",
             f"  certificate: {c['verdict']}"]
    dom = c.get("dominance")
    if dom and "inf_norm_inverse" in dom:
        lines[-1] += f"  (||A^-1||_inf = {dom['inf_norm_inverse']})"
    if "planar" in res:
        p = res["planar"]
        lines.append(f"  convex symmetric: {p['convex_symmetric']['kind']}")
        lines.append(f"  general set: {p['general_set']['kind']}")
        for n in p["notes"]:
            lines.append(f"  note [{n['tag']}]: {n['text']}")
    return "\n".join(lines)


def cmd_classify(cfg: RunConfig) -> int:
    if cfg.corpus:
        mats = []
        with open(cfg.corpus) as fh:
            for lineno, line in enumerate(fh, 1):
                if line.strip() and not line.lstrip().startswith("#"):
                    mats.append(parse_matrix(line, line=lineno))
    else:
        mats = [parse_matrix(cfg.matrix)]
    results, code = [], EXIT_OK
    for A in mats:
        res, c = _classify_one(A, cfg)
        results.append(res)
        code = max(code, c)
    if cfg.json:
        _emit(cfg, _dump(results if cfg.corpus else results[0]))
    else:
        _emit(cfg, "\n".join(_classify_text(r) for r in results))
    return code


def cmd_witness(cfg: RunConfig) -> int:
    A = parse_matrix(cfg.matrix)
    if len(A) != 2:
        cert = certify(A)
        if cert.verdict == "StrictCube":
            _emit(cfg, _dump({"matrix": format_matrix(A), "kind": "cube", "n": len(A),
                              "inf_norm_inverse": cert.dominance.to_json()["inf_norm_inverse"]}))
            return EXIT_OK
        print(f"no witness: certificate {cert.verdict}; regions are planar only", file=sys.stderr)
        return EXIT_OPEN
    if cfg.method == "surgery":
        T = surgery(A, unit_cube())
        _emit(cfg, _dump({"matrix": format_matrix(A), "kind": "surgery",
                          "region": region_to_json(T)}))
        if cfg.svg:
            _write_svg(cfg.svg, T, A)
        return EXIT_OK
    o = classify2d(A, cfg.classify_config(construct=True))
    for kind, v in (("convex", o.convex_symmetric), ("general", o.general_set)):
        if v.witness is not None:
            payload = {"matrix": format_matrix(A), "kind": kind, "region": region_to_json(v.witness)}
            _emit(cfg, _dump(payload))
            if cfg.svg:
                _write_svg(cfg.svg, v.witness, A)
            return EXIT_OK
    print(f"no witness constructed: convex {o.convex_symmetric.kind}, "
          f"general {o.general_set.kind}", file=sys.stderr)
    return EXIT_OPEN


def cmd_verify(cfg: RunConfig) -> int:
    A = parse_matrix(cfg.matrix)
    if len(A) != 2:
        raise ValueError("verify works on planar regions")
    R = _load_region(cfg.region)
    rep = verify_tiles(R)
    strict = strict_inclusion(A, R)
    out = {"matrix": format_matrix(A), "tiles": rep.to_json(), "strict_inclusion": strict}
    if cfg.json:
        _emit(cfg, _dump(out))
    else:
        mark = lambda b: "yes" if b else "NO"
        _emit(cfg, f"tiles: {mark(rep.tiles)} (area {out['tiles']['area']}, "
                   f"{len(rep.violations)} overlapping translates)\n"
                   f"strict inclusion A^-1 K in int K: {mark(strict)}")
    return EXIT_OK if rep.tiles and strict else EXIT_CERT


def cmd_construct(cfg: RunConfig) -> int:
    A = parse_matrix(cfg.matrix)
    Q = ellipsoid_seed_auto(A)
    trace_ = compactmra(A, Q, max_stages=cfg.max_stages)
    out = {"matrix": format_matrix(A), "seed": region_to_json(Q), **trace_.to_json()}
    _emit(cfg, _dump(out) if cfg.json else
          f"stages {trace_.terminated_at}, areas {out['stage_areas']}, "
          f"K has {len(trace_.K.parts)} pieces, area {out['area']}")
    if cfg.svg:
        _write_svg(cfg.svg, trace_.K, A)
    return EXIT_OK


def _write_svg(path, R, A=None):
    layers = [(R, "#4a90d9")]
    if A is not None:
        layers.append((R.transform(inverse_rational(A)), "#d9534f"))
    with open(path, "w") as fh:
        fh.write(region_to_svg(layers))


def cmd_render(cfg: RunConfig) -> int:
    R = _load_region(cfg.region)
    A = parse_matrix(cfg.matrix) if cfg.matrix else None
    layers = [(R, "#4a90d9")]
    if A is not None:
        layers.append((R.transform(inverse_rational(A)), "#d9534f"))
    svg = region_to_svg(layers)
    if cfg.svg:
        with open(cfg.svg, "w") as fh:
            fh.write(svg)
    else:
        _emit(cfg, svg)
    return EXIT_OK


def _scan_row(args):
    entries, ccfg = args
    A = ((entries[0], entries[1]), (entries[2], entries[3]))
    o = classify2d(A, ccfg)
    return A, o.convex_symmetric.kind, o.general_set.kind


def scan_rows(r: int, ccfg: ClassifyConfig, jobs: int = 1):
    """Classify every 2x2 matrix with entries in [-r, r], in lexicographic order."""
    work = ((e, ccfg) for e in itertools.product(range(-r, r + 1), repeat=4))
    if jobs == 1:
        return [_scan_row(w) for w in work]
    with Pool(jobs) as pool:
        return list(pool.imap(_scan_row, work, chunksize=64))


def scan_summary(rows) -> dict:
    counts = Counter(f"{c}/{g}" for _, c, g in rows)
    violations = []
    for A, c, g in rows:
        if c == "NotExpansive":
            continue
        d, t = det(A), trace(A)
        if abs(d) > 2 and not (d == -3 and t == 0) and g not in ("Positive", "PositiveCited"):
            violations.append(format_matrix(A))
        if c in ("Positive", "PositiveCited") and g not in ("Positive", "PositiveCited"):
            violations.append(format_matrix(A))
    return {"total": len(rows), "counts": dict(sorted(counts.items())),
            "violations": violations}


def cmd_scan(cfg: RunConfig) -> int:
    rows = scan_rows(cfg.range, cfg.classify_config(construct=False), cfg.jobs)
    out = {"range": cfg.range, **scan_summary(rows)}
    if cfg.json:
        _emit(cfg, _dump(out))
    else:
        lines = [f"entries in [-{cfg.range}, {cfg.range}]: {out['total']} matrices"]
        lines += [f"  {k:<32} {v:>7}" for k, v in out["counts"].items()]
        lines.append(f"  violations: {len(out['violations'])}")
        _emit(cfg, "\n".join(lines))
    return EXIT_OK if not out["violations"] else EXIT_CERT


COMMANDS = {"classify": cmd_classify, "witness": cmd_witness, "verify": cmd_verify,
            "construct": cmd_construct, "render": cmd_render, "scan": cmd_scan}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="strictexp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-m", "--matrix", help='matrix as "a,b;c,d" or JSON {"n":..,"rows":..}')
    common.add_argument("--json", action="store_true", help="JSON output")
    common.add_argument("--svg", metavar="PATH", help="also write an SVG picture")
    common.add_argument("-o", "--output", metavar="PATH", help="write output here")
    common.add_argument("--max-u-denom", type=int, default=2 ** 10)
    common.add_argument("--hex-grid", type=int, default=12)
    common.add_argument("--vec-cap", type=int, default=50)
    common.add_argument("--reduce-depth", type=int, default=12)
    common.add_argument("--max-stages", type=int, default=64)
    common.add_argument("--jobs", type=int, default=1)
    helps = {"classify": "decide and certify", "witness": "emit a certified tile",
             "verify": "re-check a tile against a matrix", "construct": "build a compact MRA set",
             "render": "draw a region as SVG", "scan": "classify all 2x2 matrices in a range"}
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "classify":
            sp.add_argument("--corpus", metavar="FILE", help="one matrix per line")
        if name == "witness":
            sp.add_argument("--method", choices=("auto", "surgery"), default="auto",
                            help="surgery: repair the unit square by moving corner caps")
        if name in ("verify", "render"):
            sp.add_argument("-k", "--region", metavar="FILE", help="Region JSON")
        if name == "scan":
            sp.add_argument("--range", type=int, default=3, help="entries in [-R, R]")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(**{k: v for k, v in vars(ns).items() if k in RunConfig.__dataclass_fields__})
    try:
        cfg.validate()
        return COMMANDS[cfg.command](cfg)
    except MatrixParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (CertificationFailed, NonTermination, SeedNotFound) as e:
        print(f"certification failed: {e}", file=sys.stderr)
        return EXIT_CERT
    except (PreconditionFailed, InvalidRegion, StrictExpError, ValueError, OSError,
            json.JSONDecodeError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
