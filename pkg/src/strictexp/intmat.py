"""Exact integer and rational matrix algebra.

Integer matrices are tuples of tuples of ``int``; rational matrices and
vectors use :class:`fractions.Fraction`.  Nothing in here touches floating
point.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional, Sequence

from .errors import DimensionMismatch, MatrixParseError, NotUnimodular, SingularMatrix

IntMatrix = tuple[tuple[int, ...], ...]
RatMatrix = tuple[tuple[Fraction, ...], ...]
RatVec = tuple[Fraction, ...]

MAX_DIM = 12


def as_matrix(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate and freeze an integer square matrix."""
    A = tuple(tuple(rows[i]) for i in range(len(rows)))
    n = len(A)
    if not 2 <= n <= MAX_DIM:
        raise DimensionMismatch(f"dimension {n} outside [2, {MAX_DIM}]")
    for row in A:
        if len(row) != n:
            raise DimensionMismatch("matrix is not square")
        for x in row:
            if isinstance(x, bool) or not isinstance(x, int):
                if isinstance(x, Fraction) and x.denominator == 1:
                    continue
                raise TypeError(f"non-integer entry {x!r}")
    return tuple(tuple(int(x) for x in row) for row in A)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def transpose(A):
    return tuple(zip(*A))


def matmul(A, B):
    Bt = tuple(zip(*B))
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A, v):
    return tuple(sum(a * x for a, x in zip(row, v)) for row in A)


def matpow(A, k: int):
    """A**k for k >= 0; negative k uses the rational inverse."""
    if k < 0:
        return matpow(inverse_rational(A), -k)
    R = identity(len(A))
    P = A
    while k:
        if k & 1:
            R = matmul(R, P)
        P = matmul(P, P)
        k >>= 1
    return R


def neg(A):
    return tuple(tuple(-x for x in row) for row in A)


def trace(A) -> int:
    return sum(A[i][i] for i in range(len(A)))


def det(A) -> int:
    """Determinant by Bareiss fraction-free elimination."""
    n = len(A)
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse_rational(A) -> RatMatrix:
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return tuple(tuple(row[n:]) for row in M)


def is_unimodular(S) -> bool:
    return abs(det(S)) == 1


def inverse_unimodular(S) -> IntMatrix:
    if not is_unimodular(S):
        raise NotUnimodular(f"det = {det(S)}")
    inv = inverse_rational(S)
    return tuple(tuple(int(x) for x in row) for row in inv)


def conjugate(A, S) -> IntMatrix:
    """S A S^-1 for unimodular S."""
    return matmul(matmul(S, A), inverse_unimodular(S))


def _col_op(M, U, dst, src, f):
    # column dst += f * column src
    for row in M:
        row[dst] += f * row[src]
    for row in U:
        row[dst] += f * row[src]


def _col_swap(M, U, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]
    for row in U:
        row[i], row[j] = row[j], row[i]


def hnf_column(B) -> tuple[IntMatrix, IntMatrix]:
    """Column Hermite normal form H = B U.

    H is lower triangular with positive diagonal; each entry left of the
    diagonal lies in ``[0, h_ii)`` where ``h_ii`` is the diagonal entry of its
    row (the only reduction available to column operations).
    """
    n = len(B)
    if det(B) == 0:
        raise SingularMatrix("HNF requires a nonsingular matrix")
    M = [list(row) for row in B]
    U = [list(row) for row in identity(n)]
    for i in range(n):
        # Euclid across columns i..n-1 until only column i is nonzero in row i
        while True:
            nz = [j for j in range(i, n) if M[i][j] != 0]
            piv = min(nz, key=lambda j: abs(M[i][j]))
            if piv != i:
                _col_swap(M, U, i, piv)
            done = True
            for j in range(i + 1, n):
                if M[i][j] != 0:
                    _col_op(M, U, j, i, -(M[i][j] // M[i][i]))
                    if M[i][j] != 0:
                        done = False
            if done:
                break
        if M[i][i] < 0:
            for row in M:
                row[i] = -row[i]
            for row in U:
                row[i] = -row[i]
        d = M[i][i]
        for j in range(i):
            q = M[i][j] // d
            if q:
                _col_op(M, U, j, i, -q)
    return tuple(map(tuple, M)), tuple(map(tuple, U))


def solve_rational(B, v) -> RatVec:
    return matvec(inverse_rational(B), [Fraction(x) for x in v])


def lattice_member(B, v) -> bool:
    """True iff v lies in the lattice spanned by the columns of B."""
    return all(y.denominator == 1 for y in solve_rational(B, v))


def spiral(radius: int) -> Iterator[tuple[int, int]]:
    """Z^2 in L-infinity spiral order: origin, then ring by ring.

    Each ring r starts at (r, -r+1), walks up the right side, left along the
    top, down the left side and right along the bottom.
    """
    yield (0, 0)
    for r in range(1, radius + 1):
        for y in range(-r + 1, r + 1):
            yield (r, y)
        for x in range(r - 1, -r - 1, -1):
            yield (x, r)
        for y in range(r - 1, -r - 1, -1):
            yield (-r, y)
        for x in range(-r + 1, r + 1):
            yield (x, -r)


# ---------------------------------------------------------------------------
# GL2(Z) similarity

SHEAR_UP = ((1, 1), (0, 1))
SHEAR_UP_INV = ((1, -1), (0, 1))
SHEAR_LO = ((1, 0), (1, 1))
SHEAR_LO_INV = ((1, 0), (-1, 1))
SWAP = ((0, 1), (1, 0))
GL2_GENERATORS = (SHEAR_UP, SHEAR_UP_INV, SHEAR_LO, SHEAR_LO_INV, SWAP)


@dataclass(frozen=True)
class Form2D:
    kind: str  # "TypeI" | "TypeII" | "TypeIII" | "Unknown"
    matrix: IntMatrix
    conjugator: IntMatrix


def form_kind(M) -> Optional[str]:
    """Which of the three reduced shapes M already has, most specific first.

    TypeI additionally requires both off-diagonal entries nonzero so that the
    three shapes are disjoint; a matrix with c = 0, b != 0 is the transpose
    of a TypeII shape and is reached by one swap.
    """
    (a, b), (c, d) = M
    gap = abs(a - d)
    if b == 0 and c == 0:
        return "TypeIII"
    if b == 0 and abs(c) >= gap:
        return "TypeII"
    if b != 0 and c != 0 and abs(b) >= gap and abs(c) >= gap:
        return "TypeI"
    return None


def reduce_gl2(A, depth: int = 12, max_nodes: int = 200_000) -> Form2D:
    """Breadth-first search over conjugations by the GL2(Z) generators.

    Returns the shallowest conjugate having one of the reduced shapes; among
    matches at that depth the one minimising (|b|+|c|, |a-d|) wins.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("reduce_gl2 needs a 2x2 matrix")
    seen = {A: identity(2)}
    level = [A]
    for _ in range(depth + 1):
        hits = [M for M in level if form_kind(M) is not None]
        if hits:
            best = min(hits, key=lambda M: (abs(M[0][1]) + abs(M[1][0]),
                                            abs(M[0][0] - M[1][1]), M))
            return Form2D(form_kind(best), best, seen[best])
        nxt = []
        for M in level:
            S0 = seen[M]
            for g in GL2_GENERATORS:
                N = conjugate(M, g)
                if N not in seen:
                    seen[N] = matmul(g, S0)
                    nxt.append(N)
        if len(seen) > max_nodes or not nxt:
            break
        level = nxt
    return Form2D("Unknown", A, identity(2))


def _cyclic_form(A):
    """v -> det[v | Av] as a callable; GL2(Z)-equivalent forms for conjugate matrices."""
    (a, b), (c, d) = A
    return lambda v: c * v[0] * v[0] + (d - a) * v[0] * v[1] - b * v[1] * v[1]


def cyclic_vector_definite(A) -> Optional[tuple[int, int]]:
    """Primitive v with |det[v | Av]| = 1 when t^2 < 4d, or None if none exists.

    The form is definite, so Lagrange reduction finds its minimum over
    nonzero vectors exactly.
    """
    d, t = det(A), trace(A)
    if t * t - 4 * d >= 0:
        raise ValueError("form is not definite")
    Q0 = _cyclic_form(A)
    sgn = 1 if Q0((1, 0)) > 0 or (Q0((1, 0)) == 0 and Q0((0, 1)) > 0) else -1
    Q = lambda v: sgn * Q0(v)
    v1, v2 = (1, 0), (0, 1)
    while True:
        if Q(v2) < Q(v1):
            v1, v2 = v2, v1
        q1 = Q(v1)
        twice_b = Q((v1[0] + v2[0], v1[1] + v2[1])) - q1 - Q(v2)
        k = round(Fraction(twice_b, 2 * q1))
        if k == 0:
            break
        v2 = (v2[0] - k * v1[0], v2[1] - k * v1[1])
    return v1 if Q(v1) == 1 else None


def companion_reduce(A, cap: int = 50) -> Optional[tuple[int, int, IntMatrix]]:
    """Find unimodular S with S A S^-1 = [[0, 1], [-d, t]].

    Such S exists iff some primitive v has |det[v | Av]| = 1.  When
    t^2 < 4d this is decided exactly by reducing a definite form; otherwise
    v is searched with |v|_inf <= cap, which is sound but complete only
    within the cap.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("companion_reduce needs a 2x2 matrix")
    d, t = det(A), trace(A)
    if A[0] == (0, 1):
        return d, t, identity(2)
    C = ((0, 1), (-d, t))
    N = ((0, 1), (1, t))  # [e2 | C e2]

    def from_vector(v):
        Av = matvec(A, v)
        M = ((v[0], Av[0]), (v[1], Av[1]))
        if abs(det(M)) != 1:
            return None
        S = matmul(N, inverse_unimodular(M))
        assert conjugate(A, S) == C
        return d, t, S

    if t * t < 4 * d:
        v = cyclic_vector_definite(A)
        return None if v is None else from_vector(v)
    seen = set()
    for v in spiral(cap):
        if v == (0, 0) or math.gcd(*v) != 1 or (-v[0], -v[1]) in seen:
            continue
        seen.add(v)
        out = from_vector(v)
        if out is not None:
            return out
    return None


# ---------------------------------------------------------------------------
# text / JSON formats

def parse_matrix(text: str, line: int = 1) -> IntMatrix:
    """Parse ``"2,1;-1,-2"`` or the JSON mirror ``{"n":2,"rows":[...]}``."""
    s = text.strip()
    if s.startswith("{"):
        try:
            obj = json.loads(s)
        except json.JSONDecodeError as e:
            raise MatrixParseError(e.msg, line, e.colno) from None
        return matrix_from_json(obj)
    rows = []
    col = 1 + (len(text) - len(text.lstrip()))
    for rtext in s.split(";"):
        row = []
        for etext in rtext.split(","):
            tok = etext.strip()
            try:
                row.append(int(tok))
            except ValueError:
                raise MatrixParseError(f"bad integer entry {tok!r}", line,
                                       col + etext.find(tok) if tok else col) from None
            col += len(etext) + 1
        rows.append(row)
    try:
        return as_matrix(rows)
    except DimensionMismatch as e:
        raise MatrixParseError(str(e), line, 1) from None


def format_matrix(A) -> str:
    return ";".join(",".join(str(x) for x in row) for row in A)


def matrix_to_json(A) -> dict:
    return {"n": len(A), "rows": [list(r) for r in A]}


def matrix_from_json(obj) -> IntMatrix:
    if not isinstance(obj, dict) or "rows" not in obj:
        raise MatrixParseError("expected an object with 'rows'")
    A = as_matrix(obj["rows"])
    if "n" in obj and obj["n"] != len(A):
        raise MatrixParseError(f"n={obj['n']} does not match {len(A)} rows")
    return A


def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, int) and not isinstance(s, bool):
        return Fraction(s)
    if not isinstance(s, str):
        raise ValueError(f"rational must be a 'p/q' string, got {s!r}")
    return Fraction(s)
