"""Translational tiling checks for planar regions.

A region packs when distinct integer translates overlap in zero area.  A
packing region of area one also covers the plane up to a null set: the
translates are disjoint mod null sets, so their union has density equal to
the area, and a density-one closed union of a locally finite family misses
only a null set.  That turns tiling into two exact computations.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .errors import HypothesisFailed, NotATile, NotOnBoundary, PreconditionFailed
from .geom import (BOUNDARY, EXTERIOR, INTERIOR, ConvexBody, Region, as_region, is_symmetric,
                   point_side, pt, region_contains)
from .intmat import det, frac_str, hnf_column, lattice_member, matpow, spiral


@dataclass(frozen=True)
class TileReport:
    packs: bool
    area: Fraction
    tiles: bool
    violations: tuple = field(default=())   # ((kx, ky), overlap_area)

    def to_json(self) -> dict:
        return {"packs": self.packs, "area": frac_str(self.area), "tiles": self.tiles,
                "violations": [{"k": list(k), "overlap": frac_str(a)} for k, a in self.violations]}


def _translate_range(R: Region):
    x0, y0, x1, y1 = R.bbox
    w, h = x1 - x0, y1 - y0
    kxs = [k for k in range(-math.ceil(w), math.ceil(w) + 1) if abs(k) < w]
    kys = [k for k in range(-math.ceil(h), math.ceil(h) + 1) if abs(k) < h]
    return kxs, kys


def overlap_area(R: Region, k) -> Fraction:
    return R.intersection(R.translate(k)).area()


@lru_cache(maxsize=512)
def _pack_report(R: Region) -> TileReport:
    kxs, kys = _translate_range(R)
    bad = []
    for k in itertools.product(kxs, kys):
        if k <= (0, 0):
            continue
        a = overlap_area(R, k)
        if a:
            bad.append((k, a))
            bad.append(((-k[0], -k[1]), a))
    bad.sort()
    total = R.area()
    packs = not bad
    return TileReport(packs, total, packs and total == 1, tuple(bad))


def verify_packs(R) -> TileReport:
    """Exact overlap areas of R with every translate whose box can meet R."""
    R = as_region(R)
    if not R.parts:
        return TileReport(True, Fraction(0), False)
    return _pack_report(R)


def verify_tiles(R) -> TileReport:
    return verify_packs(R)


def multiplicity(R, x) -> int:
    """Number of k in Z^2 with x + k in R (boundary inclusive)."""
    R = as_region(R)
    x = pt(x)
    x0, y0, x1, y1 = R.bbox
    count = 0
    for kx in range(math.ceil(x0 - x[0]), math.floor(x1 - x[0]) + 1):
        for ky in range(math.ceil(y0 - x[1]), math.floor(y1 - x[1]) + 1):
            if point_side(R, (x[0] + kx, x[1] + ky)) != EXTERIOR:
                count += 1
    return count


def boundary_partner_check(R, x) -> list:
    """All (y, k) with y on the boundary of R and x - y = k a nonzero integer vector."""
    R = as_region(R)
    x = pt(x)
    if point_side(R, x) != BOUNDARY:
        raise NotOnBoundary(f"{x} is not on the boundary")
    if not verify_tiles(R).tiles:
        raise NotATile("region does not tile by integer translations")
    x0, y0, x1, y1 = R.bbox
    out = []
    for kx in range(math.ceil(x[0] - x1), math.floor(x[0] - x0) + 1):
        for ky in range(math.ceil(x[1] - y1), math.floor(x[1] - y0) + 1):
            if (kx, ky) == (0, 0):
                continue
            y = (x[0] - kx, x[1] - ky)
            if point_side(R, y) == BOUNDARY:
                out.append((y, (kx, ky)))
    return out


def dilation_tiling_check(A, R, J: int) -> bool:
    """Check that the dilates A^j W, |j| <= J, of W = A R minus R pack with telescoping areas.

    Needs only A R containing R.  Pairwise overlaps reduce to
    area(A^i W cap A^j W) = |det A|^i area(W cap A^(j-i) W), so it suffices
    to test the 2J gaps d = j - i.
    """
    R = as_region(R)
    if J < 1:
        raise PreconditionFailed("J must be at least 1")
    AR = R.transform(A)
    if not region_contains(AR, R):
        raise PreconditionFailed("A R does not contain R")
    W = AR.difference(R)
    for d in range(1, 2 * J + 1):
        if W.intersection(W.transform(matpow(A, d))).area() != 0:
            return False
    total = sum(W.transform(matpow(A, j)).area() for j in range(-J, J + 1))
    return total == R.transform(matpow(A, J + 1)).area() - R.transform(matpow(A, -J)).area()


def _index2_direction(B):
    """An integer vector w outside 2Z^n whose class mod 2 lies in B Z^n.

    Membership in an index-two lattice is a single parity condition
    phi(v) = 0 mod 2; read phi off the column HNF and pick a unit vector with
    phi = 0, or e_1 + e_r when every unit vector has phi = 1.
    """
    H, _ = hnf_column(B)
    n = len(H)
    r = next(i for i in range(n) if H[i][i] == 2)

    def phi(v):
        # v in lattice iff v_r - sum_{j<r} h_rj v_j is even
        return (v[r] - sum(H[r][j] * v[j] for j in range(r))) % 2

    units = [tuple(int(i == j) for i in range(n)) for j in range(n)]
    for e in units:
        if phi(e) == 0:
            return e
    w = tuple(int(i in (0, r)) for i in range(n))
    assert phi(w) == 0
    return w


def index2_nonpack_witness(B, R):
    """Points p, q in R with p - q in B Z^2 minus {0}.

    R must be a symmetric integer tile and |det B| = 2.  With w an integer
    vector outside 2Z^2 but inside B Z^2 mod 2, some translate x + k of
    x = w/2 lies in R; then so does -x - k, and their difference w + 2k is a
    nonzero element of B Z^2.
    """
    if abs(det(B)) != 2:
        raise HypothesisFailed(f"|det B| = {abs(det(B))}, expected 2")
    R = as_region(R)
    if not is_symmetric(R):
        raise HypothesisFailed("region is not symmetric")
    if not verify_tiles(R).tiles:
        raise HypothesisFailed("region does not tile")
    w = _index2_direction(B)
    x = (Fraction(w[0], 2), Fraction(w[1], 2))
    x0, y0, x1, y1 = R.bbox
    kxs = range(math.ceil(x0 - x[0]), math.floor(x1 - x[0]) + 1)
    kys = range(math.ceil(y0 - x[1]), math.floor(y1 - x[1]) + 1)
    radius = max(abs(k) for k in (*kxs, *kys))
    for kx, ky in spiral(radius):
        if kx not in kxs or ky not in kys:
            continue
        p = (x[0] + kx, x[1] + ky)
        if point_side(R, p) == EXTERIOR:
            continue
        q = (-p[0], -p[1])
        gamma = (p[0] - q[0], p[1] - q[1])
        assert point_side(R, q) != EXTERIOR
        assert gamma != (0, 0) and lattice_member(B, gamma)
        return p, q, gamma
    raise AssertionError("a tile must meet every coset of Z^2")


def four_point_nontile(K: ConvexBody, z, case: int, aux=()) -> bool:
    """Certify that K cannot tile, after checking one of four point patterns.

    case 1: (0, z) interior.  case 2: (z, 0) interior.
    case 3: (x, z) in K and (y, z) interior with x y < 0; aux = (x, y).
    case 4: (z, x) in K and (z, y) interior with x y < 0; aux = (x, y).
    """
    z = Fraction(z)
    if abs(z) < Fraction(1, 2):
        raise HypothesisFailed("|z| must be at least 1/2")
    if case == 1:
        ok = point_side(K, (0, z)) == INTERIOR
    elif case == 2:
        ok = point_side(K, (z, 0)) == INTERIOR
    elif case in (3, 4):
        x, y = (Fraction(a) for a in aux)
        if x * y >= 0:
            raise HypothesisFailed("x and y must have opposite signs")
        p, q = ((x, z), (y, z)) if case == 3 else ((z, x), (z, y))
        ok = point_side(K, p) != EXTERIOR and point_side(K, q) == INTERIOR
    else:
        raise ValueError(f"unknown case {case}")
    if not ok:
        raise HypothesisFailed(f"case {case} membership pattern does not hold")
    return True


def verify_tiles_sampled(member, lo, hi, samples: int = 20_000, seed: int = 0,
                         tol: float = 0.01):
    """Monte Carlo tiling check in any dimension.

    ``member`` maps an (m, n) float array to booleans; ``lo``/``hi`` bound the
    set.  Samples x uniformly in [0,1)^n and counts integer translates
    containing x.  Passes when the fraction with count != 1 is at most
    ``tol``.  Returns (passed, bad_fraction).
    """
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    n = len(lo)
    rng = np.random.default_rng(seed)
    xs = rng.random((samples, n))
    ranges = [range(math.floor(lo[i]) - 1, math.ceil(hi[i]) + 1) for i in range(n)]
    counts = np.zeros(samples, dtype=int)
    for k in itertools.product(*ranges):
        counts += member(xs + np.array(k, dtype=float)).astype(int)
    bad = float(np.mean(counts != 1))
    return bad <= tol, bad


lemma4_nontile = four_point_nontile
