"""Diagonal dominance: Varah's bound, norm achievers and corner surgery on a tile."""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import CertificationFailed, DimensionMismatch, HypothesisFailed
from .geom import (ConvexBody, Region, as_region, box, linf_dist_point_polygon,
                   linf_dist_to_boundary, merge_convex, norm_K, strict_inclusion)
from .intmat import as_matrix, det, frac_str, inverse_rational, matvec
from .spectral import is_expansive
from .tiling import boundary_partner_check, verify_tiles

log = logging.getLogger(__name__)

STRICT_CUBE = "StrictCube"
SURGERY_NEEDED = "SurgeryNeeded"
NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class Digraph:
    n: int
    edges: frozenset   # (i, j), 0-based, present iff a_ij != 0

    def successors(self, i):
        return sorted(j for (s, j) in self.edges if s == i)


def digraph(A) -> Digraph:
    n = len(A)
    return Digraph(n, frozenset((i, j) for i in range(n) for j in range(n) if A[i][j] != 0))


def strongly_connected_components(G: Digraph) -> list[set]:
    """Tarjan's algorithm, iterative."""
    succ = {i: G.successors(i) for i in range(G.n)}
    index, low, on_stack = {}, {}, set()
    stack, comps = [], []
    counter = 0
    for root in range(G.n):
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, pos = work.pop()
            if pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            nbrs = succ[v]
            if pos < len(nbrs):
                work.append((v, pos + 1))
                w = nbrs[pos]
                if w not in index:
                    work.append((w, 0))
                elif w in on_stack:
                    low[v] = min(low[v], index[w])
                continue
            if low[v] == index[v]:
                comp = set()
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.add(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def strongly_connected(G: Digraph) -> bool:
    return len(strongly_connected_components(G)) == 1


def dd_alpha(A) -> int:
    """min_j (|a_jj| - sum_{k != j} |a_jk|); positive means row dominant with slack."""
    return min(abs(row[j]) - sum(abs(x) for k, x in enumerate(row) if k != j)
               for j, row in enumerate(A))


def varah_bound(A) -> Optional[Fraction]:
    a = dd_alpha(A)
    return Fraction(1, a) if a > 0 else None


def inf_norm_inverse(A) -> Fraction:
    """Max absolute row sum of the exact inverse."""
    return max(sum(abs(x) for x in row) for row in inverse_rational(A))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def achievers(A) -> list[tuple[int, ...]]:
    """Sign vectors x with ||Ax||_inf = 1, by forced-sign propagation.

    On a dominant row with slack one, |(Ax)_m| <= 1 forces
    x_j = -sign(x_m a_mm a_mj) for every edge (m, j); strong connectivity
    spreads this from x_0 = 1 to all coordinates, so there are either two
    achievers (x and -x) or none.
    """
    A = as_matrix(A)
    if dd_alpha(A) < 1:
        raise HypothesisFailed("matrix is not diagonally dominant with alpha >= 1")
    if not strongly_connected(digraph(A)):
        raise HypothesisFailed("associated graph is not strongly connected")
    n = len(A)
    x = [0] * n
    x[0] = 1
    queue = [0]
    consistent = True
    while queue and consistent:
        m = queue.pop()
        for j in range(n):
            if j == m or A[m][j] == 0:
                continue
            forced = -_sign(x[m] * A[m][m] * A[m][j])
            if x[j] == 0:
                x[j] = forced
                queue.append(j)
            elif x[j] != forced:
                consistent = False
                break
    if consistent and max(abs(v) for v in matvec(A, x)) == 1:
        x = tuple(x)
        return [x, tuple(-v for v in x)]
    assert inf_norm_inverse(A) < 1
    return []


@dataclass(frozen=True)
class DominanceCert:
    alpha: Fraction
    strongly_connected: bool
    achievers: tuple = field(default=())
    verdict: str = NOT_APPLICABLE
    inf_norm_inverse: Optional[Fraction] = None

    def to_json(self) -> dict:
        out = {"alpha": frac_str(self.alpha), "strongly_connected": self.strongly_connected,
               "achievers": [list(x) for x in self.achievers], "verdict": self.verdict}
        if self.inf_norm_inverse is not None:
            out["inf_norm_inverse"] = frac_str(self.inf_norm_inverse)
        return out


def decide_connected_dd(A) -> DominanceCert:
    """Cube certificate, or the two achievers that call for surgery."""
    A = as_matrix(A)
    if not is_expansive(A):
        raise HypothesisFailed("matrix is not expansive")
    alpha = dd_alpha(A)
    if alpha < 1:
        raise HypothesisFailed(f"alpha = {alpha} < 1")
    if not strongly_connected(digraph(A)):
        raise HypothesisFailed("associated graph is not strongly connected")
    norm = inf_norm_inverse(A)
    ach = tuple(achievers(A))
    if norm < 1:
        return DominanceCert(Fraction(alpha), True, ach, STRICT_CUBE, norm)
    assert norm == 1 and len(ach) == 2
    return DominanceCert(Fraction(alpha), True, ach, SURGERY_NEEDED, norm)


def dominance_cert(A) -> DominanceCert:
    """Like :func:`decide_connected_dd` but never raises.

    Any nonsingular matrix with ||A^-1||_inf < 1 gets StrictCube, whatever
    its dominance structure.
    """
    A = as_matrix(A)
    alpha = dd_alpha(A)
    sc = strongly_connected(digraph(A))
    if det(A) == 0:
        return DominanceCert(Fraction(alpha), sc)
    norm = inf_norm_inverse(A)
    if norm < 1:
        return DominanceCert(Fraction(alpha), sc, (), STRICT_CUBE, norm)
    if alpha >= 1 and sc and is_expansive(A):
        return decide_connected_dd(A)
    return DominanceCert(Fraction(alpha), sc, (), NOT_APPLICABLE, norm)


def cube_permutation(A) -> Optional[list[int]]:
    """Column order making A diagonally dominant with alpha >= 2, if one exists.

    A row can only be dominant on an entry exceeding the rest of the row, so
    the column for each row is forced; returns perm with (AP)_{i,i} = a_{i,perm[i]}.
    """
    n = len(A)
    perm = []
    for row in A:
        total = sum(abs(x) for x in row)
        j = max(range(n), key=lambda c: abs(row[c]))
        if 2 * abs(row[j]) - total < 2:
            return None
        perm.append(j)
    if sorted(perm) != list(range(n)):
        return None
    return perm


# ---------------------------------------------------------------------------
# surgery (planar)

def _as_body(K) -> ConvexBody:
    if isinstance(K, ConvexBody):
        return K
    R = as_region(K)
    if len(R.parts) != 1:
        raise HypothesisFailed("surgery needs a single convex symmetric body")
    return ConvexBody(R.parts[0].vertices)


def positive_surgery_points(A, K) -> list:
    """Boundary points x of K with ||Ax||_K = 1, i.e. the boundary of K met with that of A^-1 K.

    Raises HypothesisFailed if the two boundaries share a segment.
    """
    K = _as_body(K)
    M = K.transform(inverse_rational(A))
    pts = set()
    for p, q in K.edges():
        for r, s in M.edges():
            hit = _segment_intersection(p, q, r, s)
            if hit == "overlap":
                raise HypothesisFailed("boundaries share a segment: infinitely many points")
            if hit is not None:
                pts.add(hit)
    return sorted(pts)


def _segment_intersection(p, q, r, s):
    d1 = (q[0] - p[0], q[1] - p[1])
    d2 = (s[0] - r[0], s[1] - r[1])
    den = d1[0] * d2[1] - d1[1] * d2[0]
    w = (r[0] - p[0], r[1] - p[1])
    if den == 0:
        if w[0] * d1[1] - w[1] * d1[0] != 0:
            return None
        # collinear: project on d1
        dd = d1[0] * d1[0] + d1[1] * d1[1]
        t0 = (w[0] * d1[0] + w[1] * d1[1]) / dd
        t1 = ((s[0] - p[0]) * d1[0] + (s[1] - p[1]) * d1[1]) / dd
        lo, hi = max(0, min(t0, t1)), min(1, max(t0, t1))
        if lo > hi:
            return None
        if lo < hi:
            return "overlap"
        return (p[0] + lo * d1[0], p[1] + lo * d1[1])
    t = (w[0] * d2[1] - w[1] * d2[0]) / den
    u = (w[0] * d1[1] - w[1] * d1[0]) / den
    if 0 <= t <= 1 and 0 <= u <= 1:
        return (p[0] + t * d1[0], p[1] + t * d1[1])
    return None


def surgery_points(A, K):
    """The two antipodal vertices where ||A^-1 v||_K = 1, checked."""
    Ainv = inverse_rational(A)
    vals = {v: norm_K(K, matvec(Ainv, v)) for v in K.vertices}
    top = max(vals.values())
    if top != 1:
        raise HypothesisFailed(f"||A^-1||_K = {top}, surgery needs exactly 1")
    ach = sorted(v for v, val in vals.items() if val == 1)
    if len(ach) != 2 or ach[0] != (-ach[1][0], -ach[1][1]):
        raise HypothesisFailed(f"norm attained at {len(ach)} vertices, need one antipodal pair")
    return ach


def _cut_and_move(K: ConvexBody, x0, k, eps) -> Region:
    body = K.region()
    cap = body.intersection(Region._trusted([box(x0[0] - eps, x0[1] - eps,
                                                 x0[0] + eps, x0[1] + eps)]))
    caps = cap.union(-cap)
    moved = cap.translate(k).union((-cap).translate((-k[0], -k[1])))
    T = body.difference(caps)
    return Region._trusted(merge_convex(list(T.parts) + list(moved.parts)))


def surgery(A, K, max_halvings: int = 20) -> Region:
    """Repair a tile whose inverse operator norm is exactly one.

    The norm must be attained at one antipodal pair of vertices +-x0.  A
    small square cap S around x0 is cut from K and moved by k to the
    boundary partner y = x0 + k, with -S moved by -k; cap sizes follow the
    proof's epsilon in the L-infinity metric and are halved until the result
    certifies (tiles and A^-1 T inside int T).
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("surgery is constructed in the plane only")
    K = _as_body(K)
    if not verify_tiles(K).tiles:
        raise HypothesisFailed("K does not tile by integer translations")
    Ainv = inverse_rational(A)
    x0 = surgery_points(A, K)[1]
    minus_x0 = (-x0[0], -x0[1])
    partners = sorted(((-kk[0], -kk[1]), y) for y, kk in boundary_partner_check(K, x0)
                      if y != minus_x0)
    k, y = partners[0]
    eps1 = linf_dist_point_polygon(x0, K.transform(Ainv)) / 2
    delta = min(linf_dist_to_boundary(matvec(Ainv, y), K) / 2, eps1)
    row_norm = max(sum(abs(a) for a in row) for row in Ainv)
    eps = min(eps1, delta / (2 * row_norm))
    for attempt in range(max_halvings + 1):
        T = _cut_and_move(K, x0, k, eps)
        if verify_tiles(T).tiles and strict_inclusion(A, T):
            log.debug("surgery certified: x0=%s k=%s eps=%s after %d halvings",
                      x0, k, eps, attempt)
            return T
        eps /= 2
    raise CertificationFailed(f"surgery did not certify after {max_halvings} halvings")
