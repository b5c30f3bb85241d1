"""Planar classification: which expansive 2x2 integer matrices admit a strict tile.

Verdicts come in two flavours.  ``Positive`` carries a witness region that
has been certified exactly (tiles, and A^-1 K lies in the interior of K);
``PositiveCited`` records that a witness is known to exist while the
bounded searches here came up empty.  ``Impossible`` and ``Open`` are only
emitted from the structural criteria, never from a failed search.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .dominance import SURGERY_NEEDED, dominance_cert, inf_norm_inverse, surgery
from .errors import CertificationFailed, DimensionMismatch, HypothesisFailed, NotUnimodular
from .geom import (ConvexBody, Region, _clip, as_region, convex_hull, region_to_json,
                   strict_inclusion, unit_cube)
from .intmat import (as_matrix, companion_reduce, conjugate, det, format_matrix, identity,
                     inverse_unimodular, is_unimodular, matmul, neg, reduce_gl2, trace)
from .spectral import is_expansive, lyapunov_gram
from .tiling import verify_tiles

POSITIVE = "Positive"
POSITIVE_CITED = "PositiveCited"
IMPOSSIBLE = "Impossible"
OPEN = "Open"
NOT_EXPANSIVE = "NotExpansive"

# the one similarity class with |det| > 2 that the reduced-form argument leaves out
EXCEPTIONAL = ((0, 1), (3, 0))
# a matrix in that class whose cube norm is exactly one, repaired by surgery
EXCEPTIONAL_SURGERY_REP = ((2, 1), (-1, -2))


@dataclass(frozen=True)
class ClassifyConfig:
    max_u_denom: int = 2 ** 10
    hex_grid: int = 12
    vec_cap: int = 50
    reduce_depth: int = 12
    construct: bool = True


@dataclass(frozen=True)
class Verdict:
    kind: str
    witness: Optional[Region] = None
    ref: Optional[str] = None
    reason: Optional[str] = None

    @property
    def positive(self) -> bool:
        return self.kind in (POSITIVE, POSITIVE_CITED)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.witness is not None:
            out["witness"] = region_to_json(self.witness)
        if self.ref:
            out["ref"] = self.ref
        if self.reason:
            out["reason"] = self.reason
        return out


@dataclass(frozen=True)
class Outcome2D:
    matrix: tuple
    expansive: bool
    det: int
    trace: int
    convex_symmetric: Verdict
    general_set: Verdict
    notes: tuple = field(default=())   # (tag, prose)

    def booleans(self) -> dict:
        return {"expansive": self.expansive,
                "convex_positive": self.convex_symmetric.positive,
                "convex_impossible": self.convex_symmetric.kind == IMPOSSIBLE,
                "general_positive": self.general_set.positive,
                "general_open": self.general_set.kind == OPEN}

    @property
    def is_open(self) -> bool:
        return OPEN in (self.convex_symmetric.kind, self.general_set.kind)

    def to_json(self) -> dict:
        return {"matrix": format_matrix(self.matrix), "expansive": self.expansive,
                "det": self.det, "trace": self.trace,
                "convex_symmetric": self.convex_symmetric.to_json(),
                "general_set": self.general_set.to_json(),
                "notes": [{"tag": t, "text": s} for t, s in self.notes]}


# ---------------------------------------------------------------------------
# parallelograms conv{+-(u/2, 1/2), +-(u/2 + 1, 1/2)}

def maxu_terms(A, u) -> list[Fraction]:
    (a, b), (c, d) = A
    u = Fraction(u)
    return [abs(-u * c + a),
            abs(-(u + 2) * c + a),
            abs(u * d - b + (-1 - u) * (-u * c + a)),
            abs((u + 2) * d - b + (-1 - u) * (-(u + 2) * c + a))]


def maxu_check(A, u) -> bool:
    """A(K interior) contains K for the parallelogram with parameter u."""
    return max(maxu_terms(A, u)) < abs(det(A))


def _maxu_scaled(A, p: int, q: int, D: int) -> bool:
    # maxu_check at u = p/q with everything multiplied through by q^2
    (a, b), (c, d) = A
    if abs(a * q - p * c) >= D * q or abs(a * q - (p + 2 * q) * c) >= D * q:
        return False
    s = -q - p
    t3 = p * d * q - b * q * q + s * (a * q - p * c)
    t4 = (p + 2 * q) * d * q - b * q * q + s * (a * q - (p + 2 * q) * c)
    return abs(t3) < D * q * q and abs(t4) < D * q * q


def parallelogram_body(u) -> ConvexBody:
    u = Fraction(u)
    h = Fraction(1, 2)
    return ConvexBody(convex_hull([(u / 2, h), (-u / 2, -h), (u / 2 + 1, h), (-u / 2 - 1, -h)]))


def _u_interval(A):
    """Open interval of u on which the two linear terms are below |det|."""
    (a, b), (c, d) = A
    D = abs(det(A))
    if c == 0:
        return Fraction(-4), Fraction(2)
    e1, e2 = Fraction(a - D, c), Fraction(a + D, c)
    lo, hi = min(e1, e2), max(e1, e2)
    return lo, hi - 2   # both u and u + 2 must lie in (lo, hi)


def search_parallelogram(A, max_denom: int = 2 ** 10):
    """First u (by denominator, then value) passing the parallelogram test, with its body.

    Sound always; complete only down to grid spacing 1/max_denom.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("search_parallelogram needs a 2x2 matrix")
    D = abs(det(A))
    if D == 0:
        return None
    lo, hi = _u_interval(A)
    if lo >= hi:
        return None
    q = 1
    while q <= max_denom:
        start = math.floor(lo * q) + 1
        stop = math.ceil(hi * q)
        for p in range(start, stop):
            if q > 1 and p % 2 == 0:
                continue   # already tried at a coarser denominator
            if _maxu_scaled(A, p, q, D):
                u = Fraction(p, q)
                K = parallelogram_body(u)
                if strict_inclusion(A, K):
                    return u, K
        q *= 2
    return None


# ---------------------------------------------------------------------------
# centrally symmetric hexagons

def hexagon(p, e=(1, 0), f=(1, 1)) -> Optional[ConvexBody]:
    """Symmetric hull of p, e - p and f - e + p.

    Opposite edges of this hexagon differ by e, f and f - e, so it tiles by
    the lattice they span whenever the six points are in convex position.
    """
    p = (Fraction(p[0]), Fraction(p[1]))
    q = (e[0] - p[0], e[1] - p[1])
    r = (f[0] - e[0] + p[0], f[1] - e[1] + p[1])
    pts = [p, q, r, (-p[0], -p[1]), (-q[0], -q[1]), (-r[0], -r[1])]
    hull = convex_hull(pts)
    if len(hull) < 4:
        return None
    return ConvexBody(hull, check=False)


def voronoi_cell(P) -> ConvexBody:
    """Voronoi cell of Z^2 at the origin for the positive definite rational form P."""
    def B(x, y):
        return (P[0][0] * x[0] * y[0] + P[0][1] * (x[0] * y[1] + x[1] * y[0])
                + P[1][1] * x[1] * y[1])
    e, f = (1, 0), (0, 1)
    # Lagrange-reduce the basis so the relevant vectors are +-e, +-f, +-(e -+ f)
    while True:
        if B(f, f) < B(e, e):
            e, f = f, e
        k = round(B(e, f) / B(e, e))
        if k == 0:
            break
        f = (f[0] - k * e[0], f[1] - k * e[1])
    # the cell lies in the parallelogram spanned by the reduced basis
    r = Fraction(abs(e[0]) + abs(e[1]) + abs(f[0]) + abs(f[1]))
    vs = [(-r, -r), (r, -r), (r, r), (-r, r)]
    for k in (e, f, (e[0] + f[0], e[1] + f[1]), (e[0] - f[0], e[1] - f[1])):
        for s in (1, -1):
            kk = (s * k[0], s * k[1])
            # keep x with 2 B(x, k) <= B(k, k)
            a = -2 * (P[0][0] * kk[0] + P[0][1] * kk[1])
            b = -2 * (P[0][1] * kk[0] + P[1][1] * kk[1])
            vs = _clip(vs, a, b, B(kk, kk))
    return ConvexBody(vs, check=False)


def _small_unimodular():
    out = []
    for a in range(-1, 2):
        for b in range(-1, 2):
            for c in range(-1, 2):
                for d in range(-1, 2):
                    if a * d - b * c == 1:
                        out.append(((a, b), (c, d)))
    return sorted(out, key=lambda S: (sum(abs(x) for r in S for x in r), S))


def _hexagon_candidates(A, grid: int):
    P = lyapunov_gram(A)
    for scale in (10 ** 3, 10 ** 6):
        Pq = tuple(tuple(Fraction(float(x)).limit_denominator(scale) for x in row) for row in P)
        yield voronoi_cell(Pq)
    seen = set()
    for S in _small_unimodular():
        for i in range(-grid, grid + 1):
            for j in range(-grid, grid + 1):
                H = hexagon((Fraction(i, grid), Fraction(j, grid)))
                if H is None:
                    continue
                H = H.transform(S)
                if H in seen:
                    continue
                seen.add(H)
                yield H


def search_hexagon(A, grid: int = 12) -> Optional[ConvexBody]:
    """First certified symmetric hexagon (or parallelogram) tile for A.

    Tries Voronoi cells of Z^2 under the Lyapunov form first, then the
    hexagon family conv{+-p, +-(e - p), +-(p + f - e)} over a grid of p and
    small unimodular images.  Only the exact verifiers decide.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("search_hexagon needs a 2x2 matrix")
    if not is_expansive(A):
        return None
    for H in _hexagon_candidates(A, grid):
        if strict_inclusion(A, H) and verify_tiles(H).tiles:
            return ConvexBody(H.vertices)
    return None


# ---------------------------------------------------------------------------
# structural criteria

def jordan_data(A):
    """(a, b, S) with S A S^-1 = [[a, 0], [b, a]] and b = gcd of A - aI, or None.

    Applies when the characteristic polynomial is (x - a)^2.  The kernel of
    the nilpotent part N = A - aI is spanned by a primitive w; completing w
    to a unimodular basis (z, w) puts A in lower triangular form.
    """
    A = as_matrix(A)
    t, d = trace(A), det(A)
    if t * t != 4 * d:
        return None
    a = t // 2
    N = ((A[0][0] - a, A[0][1]), (A[1][0], A[1][1] - a))
    g = math.gcd(*N[0], *N[1])
    if g == 0:
        return a, 0, identity(2)
    # kernel of N: any nonzero row (x, y) gives w = (-y, x) / gcd
    row = N[0] if N[0] != (0, 0) else N[1]
    h = math.gcd(*row)
    w = (-row[1] // h, row[0] // h)
    # z with det[z | w] = 1 via extended gcd on w
    x, y = _ext_gcd(w[0], w[1])   # x w0 + y w1 = 1
    z = (y, -x)
    M = ((z[0], w[0]), (z[1], w[1]))
    assert det(M) == 1
    S = inverse_unimodular(M)
    L = matmul(matmul(S, A), M)
    assert L[0][0] == a and L[1][1] == a and L[0][1] == 0 and abs(L[1][0]) == g
    return a, L[1][0], S


def _ext_gcd(a: int, b: int):
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q = a // b
        a, b = b, a - q * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        x0, y0 = -x0, -y0
    return x0, y0


def jordan_criterion(A) -> Optional[str]:
    """Positive or Impossible for a repeated eigenvalue, decided by |b| < a^2."""
    jd = jordan_data(A)
    if jd is None:
        return None
    a, b, _ = jd
    return POSITIVE if abs(b) < a * a else IMPOSSIBLE


def companion_case(d: int, t: int) -> Optional[str]:
    """Verdict for a matrix similar to [[0, 1], [-d, t]], t >= 0."""
    if (d >= 3 and t >= 2) or (d <= -3 and 0 <= t <= -d - 2):
        return POSITIVE
    if d >= 3 and t in (0, 1):
        return IMPOSSIBLE
    return None


def certify_witness(A, K) -> bool:
    return verify_tiles(K).tiles and strict_inclusion(A, K)


def transport_witness(S, K, A) -> Region:
    """Map a witness for S A S^-1 back to one for A, i.e. return S^-1 K, re-certified."""
    if not is_unimodular(S):
        raise NotUnimodular(f"det S = {det(S)}")
    W = as_region(K).transform(inverse_unimodular(S))
    if not certify_witness(A, W):
        raise CertificationFailed("transported region does not certify")
    return W


# ---------------------------------------------------------------------------
# constructive search

def _representatives(A, cfg: ClassifyConfig):
    """(M, S) with M = S A S^-1, in a fixed order."""
    reps = [(A, identity(2))]
    form = reduce_gl2(A, depth=cfg.reduce_depth)
    reps.append((form.matrix, form.conjugator))
    comp = companion_reduce(A, cap=cfg.vec_cap)
    if comp is not None:
        d, t, S = comp
        reps.append((((0, 1), (-d, t)), S))
    jd = jordan_data(A)
    if jd is not None:
        a, b, S = jd
        reps.append((((a, 0), (b, a)), S))
    out, seen = [], set()
    for M, S in reps:
        if M not in seen:
            seen.add(M)
            out.append((M, S))
    return out


def find_convex_witness(A, cfg: ClassifyConfig = ClassifyConfig()) -> Optional[Region]:
    A = as_matrix(A)
    reps = _representatives(A, cfg)
    for M, S in reps:
        if inf_norm_inverse(M) < 1:
            return transport_witness(S, unit_cube(), A)
    for M, S in reps:
        hit = search_parallelogram(M, cfg.max_u_denom)
        if hit is not None:
            return transport_witness(S, hit[1], A)
    # parallelograms with other edge directions: small unimodular conjugates of each rep
    tried = {M for M, _ in reps}
    for M0, S0 in reps:
        for U in _small_unimodular():
            M = conjugate(M0, U)
            if M in tried:
                continue
            tried.add(M)
            hit = search_parallelogram(M, cfg.max_u_denom)
            if hit is not None:
                return transport_witness(matmul(U, S0), hit[1], A)
    M, S = reps[1] if len(reps) > 1 else reps[0]
    H = search_hexagon(M, cfg.hex_grid)
    return None if H is None else transport_witness(S, H, A)


def find_general_witness(A, cfg: ClassifyConfig = ClassifyConfig()) -> Optional[Region]:
    """Non-convex witness by corner surgery, directly or through the exceptional class."""
    A = as_matrix(A)
    if dominance_cert(A).verdict == SURGERY_NEEDED:
        try:
            return surgery(A, unit_cube())
        except (HypothesisFailed, CertificationFailed):
            pass
    if trace(A) == 0 and det(A) == -3:
        ca = companion_reduce(A, cap=cfg.vec_cap)
        cr = companion_reduce(EXCEPTIONAL_SURGERY_REP, cap=cfg.vec_cap)
        if ca is not None and cr is not None:
            # S A S^-1 = rep with S = cr^-1 ca
            S = matmul(inverse_unimodular(cr[2]), ca[2])
            T = surgery(EXCEPTIONAL_SURGERY_REP, unit_cube())
            return transport_witness(S, T, A)
    return None


# ---------------------------------------------------------------------------

def classify2d(A, cfg: ClassifyConfig = ClassifyConfig()) -> Outcome2D:
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("classify2d needs a 2x2 matrix")
    d, t = det(A), trace(A)
    if not is_expansive(A):
        v = Verdict(NOT_EXPANSIVE)
        return Outcome2D(A, False, d, t, v, v)
    notes = []
    if abs(d) == 2:
        convex = Verdict(IMPOSSIBLE, ref="det2-index2",
                         reason="A Z^2 has index 2, so no symmetric tile works")
        general = Verdict(OPEN, reason="no method decides non-symmetric sets when |det| = 2")
        return Outcome2D(A, True, d, t, convex, general, tuple(notes))

    # trace normalisation: for symmetric K, (-A) K = A K
    B = A if t >= 0 else neg(A)
    tB = abs(t)
    general = Verdict(POSITIVE_CITED, ref="det-gt-2-reduced-forms")
    jd = jordan_data(B)
    if jd is not None:
        a, b, _ = jd
        if abs(b) < a * a:
            convex = Verdict(POSITIVE_CITED, ref="jordan-criterion")
        else:
            convex = Verdict(IMPOSSIBLE, ref="jordan-criterion", reason=f"|b| = {abs(b)} >= a^2 = {a * a}")
    elif d == -3 and t == 0:
        # every integer matrix with polynomial x^2 - 3 is similar to [[0, 1], [3, 0]]
        convex = Verdict(POSITIVE_CITED, ref="companion-positive-negative-det")
        general = Verdict(POSITIVE_CITED, ref="connected-dominance-surgery")
        notes.append(("exceptional-class",
                      "similar to [[0,1],[3,0]]: the general existence result excludes this "
                      "class while the companion range d <= -3, 0 <= t <= -d-2 includes it"))
    elif d >= 3 and tB <= 1 and companion_reduce(B, cap=cfg.vec_cap) is not None:
        convex = Verdict(IMPOSSIBLE, ref="companion-negative",
                         reason=f"similar to [[0,1],[{-d},{tB}]] with d >= 3, t in {{0,1}}")
    else:
        convex = Verdict(POSITIVE_CITED, ref="reduced-form-or-companion-positive")

    if cfg.construct:
        if convex.positive:
            W = find_convex_witness(A, cfg)
            if W is not None:
                convex = Verdict(POSITIVE, W, convex.ref)
                general = Verdict(POSITIVE, W, general.ref)
                if notes and notes[0][0] == "exceptional-class":
                    notes.append(("exceptional-class-witness",
                                  "a certified convex witness exists for this class"))
            elif convex.kind == POSITIVE_CITED:
                notes.append(("search-exhausted", "no convex witness within the search caps"))
        if general.kind != POSITIVE:
            W = find_general_witness(A, cfg)
            if W is not None:
                general = Verdict(POSITIVE, W, general.ref)
    return Outcome2D(A, True, d, t, convex, general, tuple(notes))


build_cor36_body = parallelogram_body
