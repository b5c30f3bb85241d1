"""The twelve acceptance criteria, one test each, each printing a PASS/FAIL line.

Run directly with ``python tests/test_acceptance.py`` or through pytest.
"""
import functools
import itertools
import random
import time
from fractions import Fraction as F

import pytest

from corpus import connected_dd_corpus, random_dd, random_unimodular, symmetric_tile_bodies
from oracles import brute_achievers
from strictexp.certificate import certify
from strictexp.classify2d import (IMPOSSIBLE, NOT_EXPANSIVE, OPEN, POSITIVE, ClassifyConfig,
                                  parallelogram_body, certify_witness, classify2d, maxu_check,
                                  maxu_terms, transport_witness)
from strictexp.dominance import (STRICT_CUBE, achievers, cube_permutation, dd_alpha,
                                 inf_norm_inverse, surgery, varah_bound)
from strictexp.geom import INTERIOR, box, op_norm_K, point_side, strict_inclusion, unit_cube
from strictexp.intmat import conjugate, det, inverse_rational, matmul, trace, transpose
from strictexp.mra import CELL, compactmra
from strictexp.spectral import ellipsoid_seed_auto, is_expansive, is_expansive_2x2
from strictexp.tiling import dilation_tiling_check, index2_nonpack_witness, verify_tiles

SURG = ((2, 1), (-1, -2))
MRA_MATRICES = [((1, 1), (-1, 1)), ((2, 1), (-1, -2)), ((0, 1), (2, 0)), ((2, 3), (0, 2)),
                ((1, -2), (2, 1)), ((0, 1), (3, 0)), ((3, 0), (0, -2)), ((1, 1), (-2, 1)),
                ((2, -1), (3, 1)), ((-3, 1), (2, 1))]


def _law(t, d):
    return (abs(t) <= d and d >= 2) or (abs(t) <= -d - 2 and d <= -2)


# ---------------------------------------------------------------------------
# corpora shared between criteria and reused by the dilation criterion

@functools.lru_cache(maxsize=None)
def alpha2_corpus():
    """Matrices with alpha >= 2, plus column-permuted copies of some of them."""
    rng = random.Random(31)
    out = []
    for i in range(300):
        n = 2 + i % 11
        A = random_dd(rng, n, alpha=2, max_off=3)
        out.append(A)
        if i % 3 == 0:
            perm = list(range(n))
            rng.shuffle(perm)
            P = [[int(perm[r] == c) for c in range(n)] for r in range(n)]
            out.append(matmul(A, P))
    return out


@functools.lru_cache(maxsize=None)
def maxu_pairs():
    rng = random.Random(17)
    out = []
    while len(out) < 500:
        A = ((rng.randint(-5, 5), rng.randint(-5, 5)), (rng.randint(-5, 5), rng.randint(-5, 5)))
        if det(A) == 0:
            continue
        u = F(rng.randint(-300, 300), rng.choice((1, 2, 3, 4, 5, 8, 10, 50, 64)))
        out.append((A, u))
    return out


@functools.lru_cache(maxsize=None)
def certified_pairs():
    """Every (A, K) certified strictly expansive in criteria 3 to 7."""
    pairs = []
    for A in alpha2_corpus():
        if len(A) == 2:
            pairs.append((A, unit_cube().region()))
    pairs.append((SURG, surgery(SURG, unit_cube())))
    for A, u in maxu_pairs():
        if maxu_check(A, u):
            pairs.append((A, parallelogram_body(u).region()))
    pairs.append((((2, 0), (3, 2)), parallelogram_body(F(-29, 50)).region()))
    pairs.append((((2, 0), (-3, 2)), parallelogram_body(F(-7, 5)).region()))
    o = classify2d(((2, 3), (0, 2)))
    pairs.append((((2, 3), (0, 2)), o.convex_symmetric.witness))
    return pairs


# ---------------------------------------------------------------------------

def test_criterion_01_two_by_two_law(acceptance):
    t0 = time.perf_counter()
    mismatches = 0
    for a, b, c, d in itertools.product(range(-6, 7), repeat=4):
        A = ((a, b), (c, d))
        if is_expansive(A) != _law(a + d, a * d - b * c):
            mismatches += 1
        if is_expansive_2x2(A) != _law(a + d, a * d - b * c):
            mismatches += 1
    dt = time.perf_counter() - t0
    ok = mismatches == 0 and dt < 10
    acceptance(1, ok, f"28561 matrices, {mismatches} mismatches, {dt:.2f}s")
    assert ok


def test_criterion_02_varah_bound(acceptance):
    rng = random.Random(2)
    violations = 0
    for _ in range(1000):
        A = random_dd(rng, rng.randint(2, 6), alpha=rng.randint(1, 4), max_off=rng.randint(1, 5))
        if not inf_norm_inverse(A) <= varah_bound(A) == F(1, dd_alpha(A)):
            violations += 1
    acceptance(2, violations == 0, f"1000 matrices, {violations} violations")
    assert violations == 0


def test_criterion_03_alpha_two_cube(acceptance):
    bad = []
    planar = 0
    for A in alpha2_corpus():
        perm = cube_permutation(A)
        norm = inf_norm_inverse(A)
        cert = certify(A)
        good = perm is not None and norm <= F(1, 2) and cert.verdict == STRICT_CUBE
        if len(A) == 2:
            planar += 1
            Ai = inverse_rational(A)
            good = good and op_norm_K(unit_cube(), Ai) == norm and strict_inclusion(A, unit_cube())
        else:
            good = good and max(sum(abs(x) for x in row) for row in inverse_rational(A)) < 1
        if not good:
            bad.append(A)
    n = len(alpha2_corpus())
    acceptance(3, not bad, f"{n} matrices ({planar} planar, n <= 12), {len(bad)} failures")
    assert not bad


def test_criterion_04_achievers(acceptance):
    t0 = time.perf_counter()
    corpus = connected_dd_corpus(500, seed=4, max_n=12)
    mism, sizes = 0, set()
    for A in corpus:
        got = achievers(A)
        sizes.add(len(got))
        if set(got) != brute_achievers(A) or len(got) not in (0, 2):
            mism += 1
    T = surgery(SURG, unit_cube())
    surg_ok = verify_tiles(T).tiles and strict_inclusion(SURG, T)
    dt = time.perf_counter() - t0
    ok = mism == 0 and surg_ok and dt < 60 and sizes == {0, 2}
    acceptance(4, ok, f"500 matrices up to n=12, {mism} mismatches, sizes {sorted(sizes)}, "
                      f"surgery certified {surg_ok}, {dt:.1f}s")
    assert ok


def test_criterion_05_maxu_equivalence(acceptance):
    mism = 0
    trues = 0
    for A, u in maxu_pairs():
        m = maxu_check(A, u)
        trues += m
        if m != strict_inclusion(A, parallelogram_body(u)):
            mism += 1
    ok = mism == 0 and 0 < trues < 500
    acceptance(5, ok, f"500 pairs ({trues} true), {mism} mismatches")
    assert ok


def test_criterion_06_jordan_u_values(acceptance):
    pos, negb = ((2, 0), (3, 2)), ((2, 0), (-3, 2))
    assert transpose(((2, 3), (0, 2))) == pos and transpose(((2, -3), (0, 2))) == negb
    m1 = max(maxu_terms(pos, F(-29, 50)))
    m2 = max(maxu_terms(negb, F(-7, 5)))
    ok = (m1 == F(9473, 2500) and m2 == F(19, 5) and m1 < 4 and m2 < 4
          and maxu_check(pos, F(-29, 50)) and maxu_check(negb, F(-7, 5))
          and strict_inclusion(pos, parallelogram_body(F(-29, 50)))
          and strict_inclusion(negb, parallelogram_body(F(-7, 5))))
    acceptance(6, ok, f"u=-29/50 max {m1}, u=-7/5 max {m2}, |det| = 4")
    assert ok


def test_criterion_07_jordan_iff(acceptance):
    p = classify2d(((2, 3), (0, 2)))
    n = classify2d(((2, 4), (0, 2)))
    ok = (p.convex_symmetric.kind == POSITIVE
          and certify_witness(((2, 3), (0, 2)), p.convex_symmetric.witness)
          and n.convex_symmetric.kind == IMPOSSIBLE)
    acceptance(7, ok, f"[[2,3],[0,2]] {p.convex_symmetric.kind}, "
                      f"[[2,4],[0,2]] {n.convex_symmetric.kind}")
    assert ok


def test_criterion_08_det_two(acceptance):
    bodies = symmetric_tile_bodies()
    assert len(bodies) == 30 and all(verify_tiles(K).tiles for K in bodies)
    mats, failures = 0, []
    for a, b, c, d in itertools.product(range(-5, 6), repeat=4):
        A = ((a, b), (c, d))
        if abs(a * d - b * c) != 2 or not is_expansive(A):
            continue
        mats += 1
        for K in bodies:
            if strict_inclusion(A, K):
                failures.append((A, "strict"))
                continue
            try:
                index2_nonpack_witness(A, K)
            except Exception as e:   # any exception is a failure of the criterion
                failures.append((A, repr(e)))
    ok = not failures and mats > 0
    acceptance(8, ok, f"{mats} matrices x 30 bodies, {len(failures)} exceptions")
    assert ok


def test_criterion_09_compactmra(acceptance):
    t0 = time.perf_counter()
    bad = []
    stages = []
    for A in MRA_MATRICES:
        assert is_expansive(A)
        tr = compactmra(A, ellipsoid_seed_auto(A))
        K = tr.K
        stages.append(tr.terminated_at)
        if not (tr.terminated_at <= 64 and K.area() == 1 and verify_tiles(K).tiles
                and K.difference(K.transform(A)).area() == 0
                and point_side(K, (0, 0)) == INTERIOR):
            bad.append(A)
    q = F(1, 4)
    tr2 = compactmra(((2, 0), (0, 2)), box(-q, -q, q, q))
    two_ok = tr2.terminated_at == 2 and tr2.K == CELL
    dt = time.perf_counter() - t0
    ok = not bad and two_ok and dt < 300
    acceptance(9, ok, f"10 matrices, stages {stages}, 2I gives the cube at stage "
                      f"{tr2.terminated_at}, {dt:.1f}s")
    assert ok


def test_criterion_10_conjugation_invariance(acceptance):
    rng = random.Random(10)
    cfg = ClassifyConfig()
    mism, recert_fail, transported = 0, 0, 0
    for _ in range(200):
        while True:
            A = ((rng.randint(-3, 3), rng.randint(-3, 3)), (rng.randint(-3, 3), rng.randint(-3, 3)))
            if is_expansive(A):
                break
        S = random_unimodular(rng, 6)
        B = conjugate(A, S)
        oa, ob = classify2d(A, cfg), classify2d(B, cfg)
        if oa.booleans() != ob.booleans():
            mism += 1
        for v in (ob.convex_symmetric, ob.general_set):
            if v.kind == POSITIVE:
                transported += 1
                try:
                    W = transport_witness(S, v.witness, A)
                    if not (verify_tiles(W).tiles and strict_inclusion(A, W)):
                        recert_fail += 1
                except Exception:
                    recert_fail += 1
    ok = mism == 0 and recert_fail == 0 and transported > 0
    acceptance(10, ok, f"200 conjugations, {mism} verdict mismatches, "
                       f"{transported} witnesses transported, {recert_fail} failed")
    assert ok


def test_criterion_11_dilation_tiling(acceptance):
    pairs = certified_pairs()
    bad = 0
    for A, K in pairs:
        assert certify_witness(A, K)
        if not dilation_tiling_check(A, K, 3):
            bad += 1
    acceptance(11, bad == 0, f"{len(pairs)} certified pairs, J=3, {bad} failures")
    assert bad == 0


def test_criterion_12_scan(acceptance):
    fast = ClassifyConfig(construct=False)
    full = ClassifyConfig()
    missing, contradictions, total = [], [], 0
    for a, b, c, d in itertools.product(range(-3, 4), repeat=4):
        A = ((a, b), (c, d))
        o = classify2d(A, full)
        o_fast = classify2d(A, fast)
        total += 1
        dt, tt = det(A), trace(A)
        conv, gen = o.convex_symmetric, o.general_set
        if not o.expansive:
            if conv.kind != NOT_EXPANSIVE or gen.kind != NOT_EXPANSIVE:
                contradictions.append(A)
            continue
        if abs(dt) > 2 and not (dt == -3 and tt == 0) and not gen.positive:
            missing.append(A)
        if conv.positive and not gen.positive:
            contradictions.append(A)
        if abs(dt) == 2 and (conv.kind != IMPOSSIBLE or gen.kind != OPEN):
            contradictions.append(A)
        if conv.kind == IMPOSSIBLE and conv.witness is not None:
            contradictions.append(A)
        for v in (conv, gen):
            if v.kind == POSITIVE and not certify_witness(A, v.witness):
                contradictions.append(A)
        if (o.booleans() != o_fast.booleans()):
            contradictions.append(A)
    ok = not missing and not contradictions
    acceptance(12, ok, f"{total} matrices, {len(missing)} without a positive general verdict, "
                       f"{len(contradictions)} contradictions")
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
