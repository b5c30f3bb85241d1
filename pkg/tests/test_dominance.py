import itertools
import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from corpus import connected_dd_corpus, random_dd
from oracles import brute_achievers
from strictexp.certificate import NO_SYMMETRIC_TILE, UNKNOWN, certify
from strictexp.dominance import (NOT_APPLICABLE, STRICT_CUBE, SURGERY_NEEDED, achievers,
                                 cube_permutation, dd_alpha, decide_connected_dd, digraph,
                                 dominance_cert, inf_norm_inverse, positive_surgery_points,
                                 strongly_connected, strongly_connected_components, surgery,
                                 surgery_points, varah_bound)
from strictexp.errors import DimensionMismatch, HypothesisFailed, SingularMatrix
from strictexp.geom import area, box, point_side, strict_inclusion, unit_cube
from strictexp.intmat import matmul, matvec
from strictexp.tiling import verify_tiles

H = F(1, 2)
SURG = ((2, 1), (-1, -2))
CYC3 = ((2, 1, 0), (0, 2, 1), (1, 0, 2))


def test_digraph_examples():
    assert digraph([[2, 1], [0, 2]]).edges == frozenset({(0, 0), (0, 1), (1, 1)})
    assert len(digraph(SURG).edges) == 4
    assert digraph([[2, 0], [0, 2]]).edges == frozenset({(0, 0), (1, 1)})


def test_strong_connectivity_examples():
    assert not strongly_connected(digraph([[2, 1], [0, 2]]))
    assert strongly_connected(digraph(SURG))
    assert strongly_connected(digraph(CYC3))


def _reach(G, s):
    seen, stack = {s}, [s]
    while stack:
        v = stack.pop()
        for w in G.successors(v):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


@given(st.integers(1, 8), st.integers(0, 10 ** 6))
def test_scc_matches_reachability(n, seed):
    rng = random.Random(seed)
    A = [[rng.choice((0, 0, 1)) for _ in range(n)] for _ in range(n)]
    G = digraph(A)
    comps = strongly_connected_components(G)
    reach = [_reach(G, v) for v in range(n)]
    for C in comps:
        for v in C:
            assert {w for w in range(n) if w in reach[v] and v in reach[w]} == set(C)
    assert sorted(v for C in comps for v in C) == list(range(n))
    assert strongly_connected(G) == all(len(r) == n for r in reach)


def test_alpha_and_bounds_examples():
    assert dd_alpha([[3, 1], [1, 3]]) == 2
    assert dd_alpha(SURG) == 1
    assert dd_alpha([[1, 2], [0, 1]]) == -1
    assert varah_bound([[3, 1], [1, 3]]) == H
    assert varah_bound(SURG) == 1
    assert varah_bound([[1, 2], [0, 1]]) is None
    assert inf_norm_inverse([[3, 1], [1, 3]]) == H
    assert inf_norm_inverse(SURG) == 1
    assert inf_norm_inverse(CYC3) == F(7, 9)
    with pytest.raises(SingularMatrix):
        inf_norm_inverse([[1, 1], [1, 1]])


def test_varah_on_random_dd():
    rng = random.Random(8)
    for _ in range(300):
        A = random_dd(rng, rng.randint(2, 6), alpha=rng.randint(1, 3))
        assert inf_norm_inverse(A) <= varah_bound(A)


def test_permutation_invariance_of_cube_norm():
    rng = random.Random(12)
    for _ in range(100):
        n = rng.randint(2, 5)
        A = random_dd(rng, n, alpha=1)
        perm = list(range(n))
        rng.shuffle(perm)
        P = [[int(perm[i] == j) for j in range(n)] for i in range(n)]
        assert inf_norm_inverse(matmul(A, P)) == inf_norm_inverse(A)
        assert cube_permutation(matmul(A, P)) is not None or dd_alpha(A) < 2


def test_cube_permutation():
    assert cube_permutation([[1, 3], [4, 1]]) == [1, 0]
    assert cube_permutation([[3, 1], [1, 3]]) == [0, 1]
    assert cube_permutation([[3, 1], [3, 1]]) is None
    assert cube_permutation([[2, 1], [1, 2]]) is None


def test_achiever_examples():
    assert sorted(achievers(SURG)) == [(-1, 1), (1, -1)]
    assert achievers(CYC3) == []
    assert achievers([[3, 1], [1, 3]]) == []
    with pytest.raises(HypothesisFailed):
        achievers([[2, 1], [0, 2]])
    with pytest.raises(HypothesisFailed):
        achievers([[1, 2], [2, 1]])


def test_achievers_against_brute_force_small_corpus():
    for A in connected_dd_corpus(count=120, seed=21, max_n=7):
        got = sorted(achievers(A))
        assert got == sorted(brute_achievers(A))
        assert len(got) in (0, 2)
        if got:
            assert got[0] == tuple(-x for x in got[1])
            assert inf_norm_inverse(A) == 1
        else:
            assert inf_norm_inverse(A) < 1


def test_decide_examples():
    c = decide_connected_dd(SURG)
    assert c.verdict == SURGERY_NEEDED and sorted(c.achievers) == [(-1, 1), (1, -1)]
    assert decide_connected_dd(CYC3).verdict == STRICT_CUBE
    c = decide_connected_dd([[3, 1], [1, 3]])
    assert c.verdict == STRICT_CUBE and c.inf_norm_inverse == H
    with pytest.raises(HypothesisFailed):
        decide_connected_dd([[2, 1], [0, 2]])


def test_dominance_cert_json():
    assert dominance_cert(SURG).to_json() == {
        "alpha": "1/1", "strongly_connected": True, "achievers": [[1, -1], [-1, 1]],
        "verdict": "SurgeryNeeded", "inf_norm_inverse": "1/1"}
    assert dominance_cert([[1, 2], [3, 4]]).verdict == NOT_APPLICABLE
    assert dominance_cert([[1, 1], [1, 1]]).verdict == NOT_APPLICABLE


def test_surgery_example():
    K = unit_cube()
    assert surgery_points(SURG, K) == [(-H, -H), (H, H)]
    T = surgery(SURG, K)
    assert area(T) == 1 and verify_tiles(T).tiles and strict_inclusion(SURG, T)
    # the cap near (1/2, 1/2) lands next to (-1/2, 1/2), i.e. moved by k = (-1, 0)
    assert point_side(T, (-F(13, 24), F(23, 48))) == "Interior"
    assert point_side(T, (F(23, 48), F(23, 48))) == "Exterior"


def test_positive_surgery_points():
    K = unit_cube()
    pts = positive_surgery_points(SURG, K)
    assert pts == [(-H, H), (H, -H)]
    for x in pts:
        y = matvec(SURG, x)
        assert max(abs(y[0]), abs(y[1])) == H   # ||A x||_K = 1 on the half-cube
    # the surgery vertices are the A-images of these points
    assert sorted(matvec(SURG, x) for x in pts) == [(-H, -H), (H, H)]


def test_surgery_preconditions():
    with pytest.raises(HypothesisFailed):
        surgery([[2, 0], [0, 2]], unit_cube())
    with pytest.raises(HypothesisFailed):
        surgery(SURG, box(-F(1, 4), -F(1, 4), F(1, 4), F(1, 4)))
    with pytest.raises(DimensionMismatch):
        surgery(CYC3, unit_cube())


def test_surgery_on_all_planar_candidates():
    # every 2x2 connected dominant matrix with norm one and entries in [-4, 4]
    count = 0
    for a, b, c, d in itertools.product(range(-4, 5), repeat=4):
        A = ((a, b), (c, d))
        cert = dominance_cert(A)
        if cert.verdict != SURGERY_NEEDED:
            continue
        T = surgery(A, unit_cube())
        assert area(T) == 1 and verify_tiles(T).tiles and strict_inclusion(A, T)
        count += 1
    assert count > 10


def test_certificate_verdicts():
    assert certify([[1, 2], [0, 1]]).verdict == "NotExpansive"
    assert certify([[0, 1], [2, 0]]).verdict == NO_SYMMETRIC_TILE
    c = certify([[3, 1], [1, 3]])
    assert c.verdict == STRICT_CUBE and c.decided
    assert certify(SURG).verdict == SURGERY_NEEDED
    assert certify(CYC3).verdict == STRICT_CUBE
    u = certify([[0, 1], [3, 0]])
    assert u.verdict == UNKNOWN and not u.decided
    j = certify(SURG).to_json()
    assert j["dominance"]["verdict"] == SURGERY_NEEDED and j["matrix"] == "2,1;-1,-2"
