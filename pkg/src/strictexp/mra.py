"""Compact MRA sets: a tile K with A K containing K and the origin inside.

Starting from a small certified polygon Q, each stage dilates the previous
piece and keeps only what is not yet covered modulo Z^2, trimmed so its own
integer translates do not overlap.  Coverage is tracked as the uncovered
part (the gap) of the cell T = [-1/2, 1/2]^2, so stopping is an exact area
test.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (CertificationFailed, DimensionMismatch, NonTermination, NotExpansive,
                     PreconditionFailed)
from .geom import (INTERIOR, Region, as_region, box, is_symmetric, merge_convex, point_side,
                   region_contains, region_to_json, strict_inclusion)
from .intmat import as_matrix, frac_str, spiral
from .spectral import is_expansive
from .tiling import verify_tiles

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)
CELL = Region._trusted([box(-HALF, -HALF, HALF, HALF)])


def _cells_meeting(R: Region):
    """Integer k whose cell T + k overlaps the bounding box of R, in spiral order."""
    x0, y0, x1, y1 = R.bbox
    kx = range(math.floor(x0 - HALF) + 1, math.ceil(x1 + HALF))
    ky = range(math.floor(y0 - HALF) + 1, math.ceil(y1 + HALF))
    radius = max(abs(v) for v in (*kx, *ky))
    return [k for k in spiral(radius) if k[0] in kx and k[1] in ky]


def _fold(R: Region, gap: Region):
    """Keep the parts of R whose folds into T land in ``gap``, first come first served.

    Returns (kept, new_gap).  Cells are visited in spiral order of k.
    """
    kept = []
    for k in _cells_meeting(R):
        if not gap.parts:
            break
        cell = CELL.translate(k)
        piece = R.intersection(cell).translate((-k[0], -k[1]))
        new = piece.intersection(gap)
        if not new.parts:
            continue
        gap = gap.difference(new)
        kept.extend(new.translate(k).parts)
    return Region._trusted(merge_convex(kept)), Region._trusted(merge_convex(list(gap.parts)))


def closedsets_trim(G_tilde) -> Region:
    """Trim G_tilde to a subset that packs by Z^2 with the same union of translates.

    Cells T + k are visited in spiral order; each keeps the part of G_tilde
    whose fold into T is not already covered by an earlier cell.
    """
    R = as_region(G_tilde)
    if not R.parts:
        return R
    G, _ = _fold(R, CELL)
    return G


def fold_area(R) -> Fraction:
    """Area of the union of the integer translates of R, counted inside T."""
    R = as_region(R)
    _, gap = _fold(R, CELL)
    return 1 - gap.area()


@dataclass(frozen=True)
class MraStage:
    E: Region
    area: Fraction
    pre_trim_area: Fraction

    def to_json(self) -> dict:
        return {"area": frac_str(self.area), "pre_trim_area": frac_str(self.pre_trim_area),
                "E": region_to_json(self.E)}


@dataclass(frozen=True)
class MraTrace:
    stages: tuple
    terminated_at: int
    K: Region
    cumulative: tuple = field(default=())

    def to_json(self, with_regions: bool = True) -> dict:
        out = {"terminated_at": self.terminated_at,
               "stage_areas": [frac_str(s.area) for s in self.stages],
               "cumulative": [frac_str(c) for c in self.cumulative],
               "area": frac_str(self.K.area())}
        if with_regions:
            out["stages"] = [s.to_json() for s in self.stages]
            out["K"] = region_to_json(self.K)
        return out


def compactmra(A, Q, max_stages: int = 64) -> MraTrace:
    """Build K = E_1 u E_2 u ... with E_1 = Q and E_m carved from A E_(m-1).

    Each stage subtracts the integer translates of every earlier piece, not
    only the previous one.  The result satisfies A K containing K, which is
    weaker than strict expansiveness and is not reported as such.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("compactmra is planar")
    if not is_expansive(A):
        raise NotExpansive(f"{A} is not expansive")
    Q = as_region(Q)
    if len(Q.parts) != 1 or not Q.parts[0].is_convex() or not is_symmetric(Q):
        raise PreconditionFailed("Q must be a convex symmetric polygon")
    if not strict_inclusion(A, Q):
        raise PreconditionFailed("A^-1 Q is not inside the interior of Q")
    if not region_contains(CELL, Q):
        raise PreconditionFailed("Q must lie in [-1/2, 1/2]^2")

    gap = CELL.difference(Q)
    stages = [MraStage(Q, Q.area(), Q.area())]
    cum = [Q.area()]
    E = Q
    while cum[-1] < 1:
        if len(stages) >= max_stages:
            raise NonTermination(f"area {cum[-1]} after {max_stages} stages")
        grown = E.transform(A)
        E_tilde = _uncovered(grown, gap)
        if not E_tilde.parts:
            break
        E, gap = _fold(E_tilde, gap)
        stages.append(MraStage(E, E.area(), E_tilde.area()))
        cum.append(cum[-1] + E.area())
        log.debug("stage %d: area %s, cumulative %s, %d pieces",
                  len(stages), E.area(), cum[-1], len(E.parts))
    K = Region._trusted(merge_convex([p for s in stages for p in s.E.parts]))
    _certify(A, K)
    return MraTrace(tuple(stages), len(stages), K, tuple(cum))


def _uncovered(R: Region, gap: Region) -> Region:
    """R minus the integer translates of everything already covered."""
    parts = []
    for k in _cells_meeting(R):
        piece = R.intersection(CELL.translate(k)).translate((-k[0], -k[1]))
        parts.extend(piece.intersection(gap).translate(k).parts)
    return Region._trusted(parts)


def _certify(A, K: Region):
    if K.area() != 1:
        raise CertificationFailed(f"area(K) = {K.area()}")
    if not verify_tiles(K).tiles:
        raise CertificationFailed("K does not pack")
    if K.difference(K.transform(A)).area() != 0:
        raise CertificationFailed("A K does not contain K")
    if point_side(K, (0, 0)) != INTERIOR:
        raise CertificationFailed("origin is not interior to K")
