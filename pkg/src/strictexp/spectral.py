"""Expansiveness decisions and a certified contracting polygon.

The unit-disk decision is exact: a Schur-Cohn reduction on the reversed
characteristic polynomial, carried out over the integers.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import Degenerate, DimensionMismatch, NotExpansive, SeedNotFound
from .geom import ConvexBody, strict_inclusion, sym_conv_hull
from .intmat import as_matrix, det, matmul, trace


def charpoly(A) -> list[int]:
    """Monic characteristic polynomial, highest degree first (Faddeev-LeVerrier)."""
    n = len(A)
    coeffs = [1]
    M = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[-1]
        M = [[M[i][j] + (c_prev if i == j else 0) for j in range(n)] for i in range(n)]
        AM = matmul(A, M)
        tr = sum(AM[i][i] for i in range(n))
        assert tr % k == 0
        coeffs.append(-tr // k)
        M = [list(r) for r in AM]
    return coeffs


def _content(p):
    g = 0
    for c in p:
        g = math.gcd(g, c)
    return g or 1


def schur_stable(coeffs_low_first) -> bool:
    """All roots strictly inside the unit disk.

    One Schur-Cohn step maps p of degree m with |p_m| > |p_0| to
    (p_m p - p_0 p*)/z, which has the same number of roots inside the disk
    minus one; roots on the circle persist, so they surface as a failure of
    the strict inequality at some later step.
    """
    p = list(coeffs_low_first)
    while p and p[-1] == 0:
        p.pop()
    if not p:
        raise ValueError("zero polynomial")
    while len(p) > 1:
        m = len(p) - 1
        a0, am = p[0], p[m]
        if abs(am) <= abs(a0):
            return False
        q = [am * p[i] - a0 * p[m - i] for i in range(m + 1)]
        q = q[1:]
        g = _content(q)
        p = [c // g for c in q]
    return True


def is_expansive_2x2(A) -> bool:
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("is_expansive_2x2 needs a 2x2 matrix")
    t, d = trace(A), det(A)
    return (abs(t) <= d and d >= 2) or (abs(t) <= -d - 2 and d <= -2)


def is_expansive(A) -> bool:
    """Every eigenvalue has modulus strictly greater than one."""
    A = as_matrix(A)
    chi = charpoly(A)   # highest first: chi[0] = 1
    if chi[-1] == 0:
        return False
    # z^n chi(1/z) has coefficients chi read low-to-high as given
    return schur_stable(chi)


def lyapunov_gram(A, tol: float = 1e-12, max_terms: int = 10_000) -> np.ndarray:
    """Sum of (A^-k)^T A^-k over k >= 0, truncated once a term drops below tol."""
    Ainv = np.linalg.inv(np.array(A, dtype=float))
    P = np.zeros_like(Ainv)
    T = np.eye(len(Ainv))
    for _ in range(max_terms):
        term = T.T @ T
        P += term
        if np.linalg.norm(term, 2) < tol:
            break
        T = Ainv @ T
    return P


def ellipsoid_seed(A, m_vertices: int = 8, radius: Fraction = Fraction(1, 4)) -> ConvexBody:
    """Certified symmetric polygon Q inside [-1/2,1/2]^2 with A^-1 Q in int(Q).

    The polygon is inscribed numerically in a level set of the quadratic
    form from :func:`lyapunov_gram`, scaled so its largest coordinate is
    ``radius`` and rounded to rationals; only the exact vertex check decides
    whether it is returned.
    """
    A = as_matrix(A)
    if len(A) != 2:
        raise DimensionMismatch("ellipsoid_seed is two-dimensional only")
    if not is_expansive(A):
        raise NotExpansive(f"{A} is not expansive")
    if m_vertices < 4 or m_vertices % 2:
        raise ValueError("m_vertices must be an even number >= 4")
    P = lyapunov_gram(A)
    L = np.linalg.cholesky(P)
    Linv_T = np.linalg.inv(L).T
    half = m_vertices // 2
    for phase in (0.0, 0.5):
        thetas = 2 * np.pi * (np.arange(half) + phase) / m_vertices
        pts = (Linv_T @ np.vstack([np.cos(thetas), np.sin(thetas)])).T
        scale = float(radius) / np.abs(pts).max()
        for den in (1_000, 100_000, 10_000_000):
            qs = [(Fraction(float(x * scale)).limit_denominator(den),
                   Fraction(float(y * scale)).limit_denominator(den)) for x, y in pts]
            lim = max(max(abs(x), abs(y)) for x, y in qs)
            if lim > Fraction(1, 2):
                continue
            try:
                Q = sym_conv_hull(qs)
            except Degenerate:
                continue
            if strict_inclusion(A, Q):
                return Q
    raise SeedNotFound(f"no certified {m_vertices}-gon for {A}; try more vertices")


def ellipsoid_seed_auto(A, start: int = 8, limit: int = 512) -> ConvexBody:
    """Double the vertex count until a seed certifies."""
    m = start
    while True:
        try:
            return ellipsoid_seed(A, m)
        except SeedNotFound:
            if m >= limit:
                raise
            m *= 2


__all__ = ["charpoly", "schur_stable", "is_expansive", "is_expansive_2x2",
           "lyapunov_gram", "ellipsoid_seed", "ellipsoid_seed_auto"]
