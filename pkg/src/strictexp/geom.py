"""Exact rational polygon geometry in the plane.

A :class:`Region` is a finite union of convex polygons ("pieces") with
pairwise disjoint interiors.  Every boolean operation reduces to clipping
convex pieces by half-planes, so results are exact and closed-regularized:
zero-area slivers never survive.  Input polygons need only be simple; they
are decomposed into convex pieces on construction.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import Degenerate, InvalidRegion, SingularMatrix
from .intmat import frac_str, parse_frac

Point = tuple[Fraction, Fraction]

INTERIOR = "Interior"
BOUNDARY = "Boundary"
EXTERIOR = "Exterior"

_ZERO = Fraction(0)


def pt(x, y=None) -> Point:
    if y is None:
        x, y = x
    return (Fraction(x), Fraction(y))


def cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _twice_area(vs) -> Fraction:
    s = _ZERO
    n = len(vs)
    for i in range(n):
        x0, y0 = vs[i]
        x1, y1 = vs[(i + 1) % n]
        s += x0 * y1 - x1 * y0
    return s


def _canonical(vs) -> list:
    """Drop repeated and collinear vertices (cyclically)."""
    out = []
    for p in vs:
        if not out or out[-1] != p:
            out.append(p)
    while len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) >= 3:
        changed = False
        n = len(out)
        for i in range(n):
            if cross(out[i - 1], out[i], out[(i + 1) % n]) == 0:
                del out[i]
                changed = True
                break
    return out


def _segments_intersect(p1, p2, q1, q2) -> bool:
    """Closed segments [p1,p2] and [q1,q2] share a point."""
    d1 = cross(q1, q2, p1)
    d2 = cross(q1, q2, p2)
    d3 = cross(p1, p2, q1)
    d4 = cross(p1, p2, q2)
    if ((d1 > 0 and d2 < 0) or (d1 < 0 and d2 > 0)) and \
            ((d3 > 0 and d4 < 0) or (d3 < 0 and d4 > 0)):
        return True
    return ((d1 == 0 and on_segment(q1, q2, p1)) or (d2 == 0 and on_segment(q1, q2, p2))
            or (d3 == 0 and on_segment(p1, p2, q1)) or (d4 == 0 and on_segment(p1, p2, q2)))


def on_segment(p, q, x) -> bool:
    return (cross(p, q, x) == 0 and min(p[0], q[0]) <= x[0] <= max(p[0], q[0])
            and min(p[1], q[1]) <= x[1] <= max(p[1], q[1]))


def convex_hull(points) -> list:
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


class Polygon:
    """Simple polygon, vertices stored counter-clockwise."""

    __slots__ = ("vertices", "_bbox", "_area", "_hp", "_convex")

    def __init__(self, vertices, check: bool = True):
        vs = [pt(v) for v in vertices]
        if check:
            vs = _canonical(vs)
            if len(vs) < 3:
                raise InvalidRegion("polygon needs 3 non-collinear vertices")
            if _twice_area(vs) < 0:
                vs.reverse()
            _check_simple(vs)
        self.vertices = tuple(vs)
        self._bbox = None
        self._area = None
        self._hp = None
        self._convex = None

    @classmethod
    def _trusted(cls, vs, convex=True):
        p = cls.__new__(cls)
        p.vertices = tuple(vs)
        p._bbox = None
        p._area = None
        p._hp = None
        p._convex = convex
        return p

    def __repr__(self):
        inner = ", ".join(f"({x}, {y})" for x, y in self.vertices)
        return f"{type(self).__name__}([{inner}])"

    def __eq__(self, other):
        if not isinstance(other, Polygon):
            return NotImplemented
        return _rotate_min(self.vertices) == _rotate_min(other.vertices)

    def __hash__(self):
        return hash(_rotate_min(self.vertices))

    @property
    def bbox(self):
        if self._bbox is None:
            xs = [v[0] for v in self.vertices]
            ys = [v[1] for v in self.vertices]
            self._bbox = (min(xs), min(ys), max(xs), max(ys))
        return self._bbox

    def area(self) -> Fraction:
        if self._area is None:
            self._area = _twice_area(self.vertices) / 2
        return self._area

    def is_convex(self) -> bool:
        if self._convex is None:
            vs = self.vertices
            n = len(vs)
            self._convex = all(cross(vs[i - 1], vs[i], vs[(i + 1) % n]) > 0 for i in range(n))
        return self._convex

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]

    def halfplanes(self):
        """(a, b, c) per edge; the polygon is {a x + b y + c >= 0} when convex."""
        if self._hp is None:
            hp = []
            for p, q in self.edges():
                dx, dy = q[0] - p[0], q[1] - p[1]
                hp.append((-dy, dx, dy * p[0] - dx * p[1]))
            self._hp = tuple(hp)
        return self._hp

    def translate(self, k):
        kx, ky = Fraction(k[0]), Fraction(k[1])
        return type(self)._trusted([(x + kx, y + ky) for x, y in self.vertices], self._convex)

    def transform(self, M):
        (a, b), (c, d) = M
        if a * d - b * c == 0:
            raise SingularMatrix("cannot map a polygon by a singular matrix")
        vs = [(a * x + b * y, c * x + d * y) for x, y in self.vertices]
        if a * d - b * c < 0:
            vs.reverse()
        return type(self)._trusted(vs, self._convex)

    def contains_strict(self, x) -> bool:
        """Convex only: x in the open polygon."""
        return all(a * x[0] + b * x[1] + c > 0 for a, b, c in self.halfplanes())

    def contains(self, x) -> bool:
        """Closed containment; exact for any simple polygon."""
        x0, y0, x1, y1 = self.bbox
        if not (x0 <= x[0] <= x1 and y0 <= x[1] <= y1):
            return False
        if self.is_convex():
            return all(a * x[0] + b * x[1] + c >= 0 for a, b, c in self.halfplanes())
        inside = False
        for p, q in self.edges():
            if on_segment(p, q, x):
                return True
            if (p[1] > x[1]) != (q[1] > x[1]):
                xi = p[0] + (x[1] - p[1]) * (q[0] - p[0]) / (q[1] - p[1])
                if xi > x[0]:
                    inside = not inside
        return inside


def _rotate_min(vs):
    i = min(range(len(vs)), key=lambda j: vs[j])
    return tuple(vs[i:] + vs[:i])


def _check_simple(vs):
    n = len(vs)
    edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                # adjacent edges may only share their common endpoint
                p, q = edges[i]
                r, s = edges[j]
                shared = q if j == i + 1 else p
                other_a = p if j == i + 1 else q
                other_b = s if j == i + 1 else r
                if cross(shared, other_a, other_b) == 0 and \
                        (other_b[0] - shared[0]) * (other_a[0] - shared[0]) + \
                        (other_b[1] - shared[1]) * (other_a[1] - shared[1]) > 0:
                    raise InvalidRegion("polygon folds back on itself")
                continue
            if _segments_intersect(*edges[i], *edges[j]):
                raise InvalidRegion("polygon is not simple")


class ConvexBody(Polygon):
    """Convex polygon that is centrally symmetric about the origin."""

    __slots__ = ()

    def __init__(self, vertices, check: bool = True):
        super().__init__(vertices, check)
        if check:
            if not self.is_convex():
                raise InvalidRegion("body is not convex")
            vs = set(self.vertices)
            if any((-x, -y) not in vs for x, y in vs):
                raise InvalidRegion("body is not centrally symmetric")
        self._convex = True

    def gauges(self):
        """(normal, height) pairs with K = {z : n.z <= h}, h > 0."""
        return [((-a, -b), c) for a, b, c in self.halfplanes()]

    def region(self) -> "Region":
        return Region._trusted([self])


class DegenerateBody:
    """Zero-area symmetric hull of collinear points; supports area() only."""

    def __init__(self, points):
        self.points = tuple(points)

    def area(self) -> Fraction:
        return _ZERO


def sym_conv_hull(points, strict: bool = True):
    """Convex hull of the points together with their negatives.

    Collinear input raises :class:`Degenerate` unless ``strict=False``, in
    which case a :class:`DegenerateBody` of area zero is returned.
    """
    pts = [pt(p) for p in points]
    pts += [(-x, -y) for x, y in pts]
    hull = convex_hull(pts)
    if len(hull) < 3:
        if strict:
            raise Degenerate("points and their negatives are collinear")
        return DegenerateBody(pts)
    return ConvexBody(hull)


# ---------------------------------------------------------------------------
# convex clipping kernel

def _split(vs, a, b, c):
    """Split convex vertex list by the line a x + b y + c = 0.

    Returns (inside, outside) where inside is the part with value >= 0;
    either may be None when it has zero area.
    """
    vals = [a * x + b * y + c for x, y in vs]
    if all(v >= 0 for v in vals):
        return vs, None
    if all(v <= 0 for v in vals):
        return None, vs
    ins, outs = [], []
    n = len(vs)
    for i in range(n):
        p, fp = vs[i], vals[i]
        q, fq = vs[(i + 1) % n], vals[(i + 1) % n]
        if fp >= 0:
            ins.append(p)
        if fp <= 0:
            outs.append(p)
        if (fp > 0 > fq) or (fp < 0 < fq):
            t = fp / (fp - fq)
            m = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            ins.append(m)
            outs.append(m)
    ins = _canonical(ins)
    outs = _canonical(outs)
    return (ins if len(ins) >= 3 else None), (outs if len(outs) >= 3 else None)


def _clip(vs, a, b, c):
    return _split(vs, a, b, c)[0]


def _boxes_overlap(b1, b2) -> bool:
    """Open overlap of bounding boxes (touching boxes cannot share area)."""
    return b1[0] < b2[2] and b2[0] < b1[2] and b1[1] < b2[3] and b2[1] < b1[3]


def _boxes_touch(b1, b2) -> bool:
    return b1[0] <= b2[2] and b2[0] <= b1[2] and b1[1] <= b2[3] and b2[1] <= b1[3]


def _intersect_convex(P: Polygon, Q: Polygon) -> Optional[Polygon]:
    if not _boxes_overlap(P.bbox, Q.bbox):
        return None
    vs = P.vertices
    for a, b, c in Q.halfplanes():
        vs = _clip(vs, a, b, c)
        if vs is None:
            return None
    return Polygon._trusted(vs)


def _diff_convex(P: Polygon, Q: Polygon) -> list:
    """P minus Q as interior-disjoint convex pieces."""
    if not _boxes_overlap(P.bbox, Q.bbox):
        return [P]
    out = []
    cur = P.vertices
    for a, b, c in Q.halfplanes():
        ins, outs = _split(cur, a, b, c)
        if ins is None:
            return [P] if not out else out + [Polygon._trusted(cur)]
        if outs is not None:
            out.append(Polygon._trusted(outs))
            cur = ins
    return out


def _triangulate(vs) -> list:
    """Ear clipping of a simple ccw polygon."""
    idx = list(range(len(vs)))
    tris = []
    guard = 0
    while len(idx) > 3:
        n = len(idx)
        for k in range(n):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % n]
            a, b, c = vs[i0], vs[i1], vs[i2]
            if cross(a, b, c) <= 0:
                continue
            tri = Polygon._trusted([a, b, c])
            if any(tri.contains(vs[j]) and vs[j] not in (a, b, c)
                   for j in idx if j not in (i0, i1, i2)):
                continue
            tris.append(tri)
            del idx[k]
            break
        else:
            guard += 1
            if guard > 1:
                raise InvalidRegion("ear clipping failed; polygon not simple")
            # drop a collinear vertex if one remains
            for k in range(len(idx)):
                if cross(vs[idx[k - 1]], vs[idx[k]], vs[idx[(k + 1) % len(idx)]]) == 0:
                    del idx[k]
                    break
    a, b, c = (vs[i] for i in idx)
    if cross(a, b, c) > 0:
        tris.append(Polygon._trusted([a, b, c]))
    return tris


def merge_convex(pieces: list) -> list:
    """Greedily fuse pairs of pieces whose union is convex."""
    pieces = list(pieces)
    merged = True
    while merged:
        merged = False
        for i in range(len(pieces)):
            P = pieces[i]
            for j in range(i + 1, len(pieces)):
                Q = pieces[j]
                if not _boxes_touch(P.bbox, Q.bbox):
                    continue
                hull = convex_hull(P.vertices + Q.vertices)
                if len(hull) >= 3 and _twice_area(hull) == 2 * (P.area() + Q.area()):
                    pieces[i] = Polygon._trusted(_canonical(hull))
                    del pieces[j]
                    merged = True
                    break
            if merged:
                break
    return pieces


# ---------------------------------------------------------------------------

class Region:
    """Finite union of convex pieces with pairwise disjoint interiors."""

    __slots__ = ("parts", "_boundary", "_bbox", "_hash")

    def __init__(self, polygons: Iterable = (), validate: bool = True):
        parts = []
        for P in polygons:
            if not isinstance(P, Polygon):
                P = Polygon(P)
            if P.is_convex():
                parts.append(P)
            else:
                parts.extend(merge_convex(_triangulate(P.vertices)))
        if validate:
            for i in range(len(parts)):
                for j in range(i + 1, len(parts)):
                    if _intersect_convex(parts[i], parts[j]) is not None:
                        raise InvalidRegion("region parts overlap in positive area")
        self.parts = tuple(parts)
        self._boundary = None
        self._bbox = None
        self._hash = None

    @classmethod
    def _trusted(cls, parts):
        r = cls.__new__(cls)
        r.parts = tuple(parts)
        r._boundary = None
        r._bbox = None
        r._hash = None
        return r

    def __repr__(self):
        return f"Region({len(self.parts)} parts, area={self.area()})"

    def __eq__(self, other):
        if not isinstance(other, Region):
            return NotImplemented
        return set(self.parts) == set(other.parts)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.parts))
        return self._hash

    def __bool__(self):
        return bool(self.parts)

    def area(self) -> Fraction:
        return sum((P.area() for P in self.parts), _ZERO)

    @property
    def bbox(self):
        if self._bbox is None:
            if not self.parts:
                raise ValueError("empty region has no bounding box")
            bs = [P.bbox for P in self.parts]
            self._bbox = (min(b[0] for b in bs), min(b[1] for b in bs),
                          max(b[2] for b in bs), max(b[3] for b in bs))
        return self._bbox

    def vertices(self):
        seen = {}
        for P in self.parts:
            for v in P.vertices:
                seen.setdefault(v, None)
        return list(seen)

    def translate(self, k) -> "Region":
        return Region._trusted([P.translate(k) for P in self.parts])

    def transform(self, M) -> "Region":
        return Region._trusted([P.transform(M) for P in self.parts])

    def __neg__(self):
        return self.transform(((-1, 0), (0, -1)))

    def intersection(self, other: "Region") -> "Region":
        out = []
        for P in self.parts:
            for Q in other.parts:
                X = _intersect_convex(P, Q)
                if X is not None:
                    out.append(X)
        return Region._trusted(out)

    def difference(self, other: "Region") -> "Region":
        out = []
        for P in self.parts:
            pieces = [P]
            for Q in other.parts:
                if not _boxes_overlap(P.bbox, Q.bbox):
                    continue
                nxt = []
                for piece in pieces:
                    nxt.extend(_diff_convex(piece, Q))
                pieces = nxt
                if not pieces:
                    break
            out.extend(pieces)
        return Region._trusted(out)

    def union(self, other: "Region") -> "Region":
        return Region._trusted(self.parts + other.difference(self).parts)

    def simplify(self) -> "Region":
        return Region._trusted(merge_convex(self.parts))

    def boundary_segments(self) -> list:
        """Maximal boundary segments, oriented with the region on the left."""
        if self._boundary is None:
            self._boundary = _boundary_segments(self.parts)
        return self._boundary


def as_region(obj) -> Region:
    if isinstance(obj, Region):
        return obj
    if isinstance(obj, Polygon):
        return Region._trusted([obj]) if obj.is_convex() else Region([obj])
    raise TypeError(f"expected Region or Polygon, got {type(obj).__name__}")


def box(x0, y0, x1, y1) -> Polygon:
    x0, y0, x1, y1 = map(Fraction, (x0, y0, x1, y1))
    return Polygon._trusted([(x0, y0), (x1, y0), (x1, y1), (x0, y1)])


def unit_cube() -> ConvexBody:
    h = Fraction(1, 2)
    return ConvexBody([(-h, -h), (h, -h), (h, h), (-h, h)])


def _line_key(p, q):
    dx, dy = q[0] - p[0], q[1] - p[1]
    if dx != 0:
        slope = dy / dx
        return (1, slope, p[1] - slope * p[0]), p[0], q[0]
    return (0, 1, p[0]), p[1], q[1]


def _boundary_segments(parts) -> list:
    lines: dict = {}
    for P in parts:
        for p, q in P.edges():
            key, t0, t1 = _line_key(p, q)
            lines.setdefault(key, []).append((t0, t1))
    segs = []
    for key, spans in lines.items():
        delta: dict = {}
        for t0, t1 in spans:
            s = 1 if t1 > t0 else -1
            lo, hi = (t0, t1) if t0 < t1 else (t1, t0)
            delta[lo] = delta.get(lo, 0) + s
            delta[hi] = delta.get(hi, 0) - s
        ts = sorted(delta)
        run = 0
        start = None
        cur_sign = 0
        for i, t in enumerate(ts):
            run += delta[t]
            sign = (run > 0) - (run < 0)
            if sign != cur_sign:
                if cur_sign != 0:
                    segs.append(_seg_from_key(key, start, t, cur_sign))
                start = t if sign != 0 else None
                cur_sign = sign
    return segs


def _seg_from_key(key, t0, t1, sign):
    def point(t):
        if key[0] == 1:
            return (t, key[2] + key[1] * t)
        return (key[2], t)
    a, b = point(t0), point(t1)
    return (a, b) if sign > 0 else (b, a)


def _segment_meets_convex(p, q, P: Polygon) -> bool:
    lo, hi = _ZERO, Fraction(1)
    for a, b, c in P.halfplanes():
        fp = a * p[0] + b * p[1] + c
        fq = a * q[0] + b * q[1] + c
        if fp < 0 and fq < 0:
            return False
        if fp < 0:
            lo = max(lo, fp / (fp - fq))
        elif fq < 0:
            hi = min(hi, fp / (fp - fq))
        if lo > hi:
            return False
    return True


# ---------------------------------------------------------------------------
# module-level operations

def area(R) -> Fraction:
    return R.area()


def region_union(R1, R2) -> Region:
    return as_region(R1).union(as_region(R2))


def region_diff(R1, R2) -> Region:
    return as_region(R1).difference(as_region(R2))


def region_intersect(R1, R2) -> Region:
    return as_region(R1).intersection(as_region(R2))


def point_side(R, x) -> str:
    R = as_region(R)
    x = pt(x)
    holders = [P for P in R.parts if P.contains(x)]
    if not holders:
        return EXTERIOR
    if any(P.contains_strict(x) for P in holders):
        return INTERIOR
    if any(on_segment(p, q, x) for p, q in R.boundary_segments()):
        return BOUNDARY
    return INTERIOR


def norm_K(K: ConvexBody, x) -> Fraction:
    """Minkowski functional of the symmetric convex body K."""
    x = pt(x)
    best = _ZERO
    for (nx, ny), h in K.gauges():
        v = (nx * x[0] + ny * x[1]) / h
        if v > best:
            best = v
    return best


def op_norm_K(K: ConvexBody, M) -> Fraction:
    """Operator norm of M on (R^2, ||.||_K): max over vertices of K."""
    (a, b), (c, d) = M
    return max(norm_K(K, (a * x + b * y, c * x + d * y)) for x, y in K.vertices)


def _inv2(A):
    (a, b), (c, d) = A
    D = Fraction(a * d - b * c)
    if D == 0:
        raise SingularMatrix("matrix is singular")
    return ((d / D, -b / D), (-c / D, a / D))


def strict_inclusion(A, R) -> bool:
    """Decide A^{-1} R  subset of  interior(R) exactly.

    Convex R: every vertex of R must map strictly inside.  General R: no
    boundary segment of R may touch A^{-1}R, and A^{-1}R minus R must have
    zero area; together these force every point (in particular every
    vertex) of A^{-1}R into the interior of R.
    """
    Ainv = _inv2(A)
    if isinstance(R, Polygon) and R.is_convex():
        R = Region._trusted([R])
    R = as_region(R)
    if not R.parts:
        return False
    if len(R.parts) == 1:
        P = R.parts[0]
        (a, b), (c, d) = Ainv
        return all(P.contains_strict((a * x + b * y, c * x + d * y)) for x, y in P.vertices)
    M = R.transform(Ainv)
    mb = M.bbox
    rb = R.bbox
    if not (rb[0] < mb[0] and mb[2] < rb[2] and rb[1] < mb[1] and mb[3] < rb[3]):
        return False
    for p, q in R.boundary_segments():
        sb = (min(p[0], q[0]), min(p[1], q[1]), max(p[0], q[0]), max(p[1], q[1]))
        if not _boxes_touch(sb, mb):
            continue
        for P in M.parts:
            if _boxes_touch(sb, P.bbox) and _segment_meets_convex(p, q, P):
                return False
    return M.difference(R).area() == 0


def region_contains(big, small) -> bool:
    """Closed containment small subset of big, up to measure zero."""
    return as_region(small).difference(as_region(big)).area() == 0


def is_symmetric(R) -> bool:
    R = as_region(R)
    return region_contains(R, -R) and region_contains(-R, R)


def linf_dist_point_segment(x, p, q) -> Fraction:
    """Exact L-infinity distance from x to the closed segment [p, q]."""
    fx0, fx1 = p[0] - x[0], q[0] - p[0]   # f(t) = fx0 + t fx1
    gy0, gy1 = p[1] - x[1], q[1] - p[1]
    cands = {_ZERO, Fraction(1)}
    for num, den in ((fx0, fx1), (gy0, gy1), (fx0 - gy0, fx1 - gy1), (fx0 + gy0, fx1 + gy1)):
        if den != 0:
            t = -num / den
            if 0 <= t <= 1:
                cands.add(t)
    return min(max(abs(fx0 + t * fx1), abs(gy0 + t * gy1)) for t in cands)


def linf_dist_point_polygon(x, P: Polygon) -> Fraction:
    """L-infinity distance from x to a convex polygon (0 if inside)."""
    x = pt(x)
    if P.contains(x):
        return _ZERO
    return min(linf_dist_point_segment(x, p, q) for p, q in P.edges())


def linf_dist_to_boundary(x, P: Polygon) -> Fraction:
    x = pt(x)
    return min(linf_dist_point_segment(x, p, q) for p, q in P.edges())


# ---------------------------------------------------------------------------
# serialization

def region_to_json(R) -> dict:
    R = as_region(R)
    return {"parts": [{"vertices": [[frac_str(x), frac_str(y)] for x, y in P.vertices]}
                      for P in R.parts]}


def region_from_json(obj) -> Region:
    """Parse Region JSON.  Clockwise parts are holes (subtracted)."""
    if not isinstance(obj, dict) or not isinstance(obj.get("parts"), list):
        raise InvalidRegion("expected {'parts': [...]}")
    solids, holes = [], []
    for part in obj["parts"]:
        try:
            vs = [(parse_frac(x), parse_frac(y)) for x, y in part["vertices"]]
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise InvalidRegion(f"bad vertex data: {e}") from None
        vs = _canonical(vs)
        if len(vs) < 3:
            raise InvalidRegion("part with fewer than 3 vertices")
        (holes if _twice_area(vs) < 0 else solids).append(Polygon(vs))
    R = Region(solids)
    if holes:
        R = R.difference(Region(holes, validate=False))
    return R


def _fmt(x) -> str:
    v = round(float(x), 9)
    if v == 0:
        v = 0.0
    return repr(v)


def region_to_svg(layers: Sequence, size: int = 512) -> str:
    """Render (region, fill) layers into a deterministic SVG document.

    The view box is fixed to [-2, 2]^2 with y pointing up.  Coordinates are
    rounded to 1e-9 for display only.
    """
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
           'viewBox="-2 -2 4 4">',
           '<g transform="scale(1,-1)">',
           '<rect x="-2" y="-2" width="4" height="4" fill="white"/>',
           '<path d="M-2 0H2M0 -2V2" stroke="#ccc" stroke-width="0.005"/>']
    for item in layers:
        R, fill = (item, "#4a90d9") if isinstance(item, (Region, Polygon)) else item
        R = as_region(R)
        for P in R.parts:
            d = "M" + "L".join(f"{_fmt(x)} {_fmt(y)}" for x, y in P.vertices) + "Z"
            out.append(f'<path d="{d}" fill="{fill}" fill-opacity="0.6" stroke="none"/>')
        for p, q in R.boundary_segments():
            out.append(f'<path d="M{_fmt(p[0])} {_fmt(p[1])}L{_fmt(q[0])} {_fmt(q[1])}" '
                       'stroke="black" stroke-width="0.008"/>')
    out.append("</g></svg>")
    return "\n".join(out) + "\n"


def bbox_int_range(lo: Fraction, hi: Fraction) -> range:
    return range(math.floor(lo), math.ceil(hi) + 1)
