from __future__ import annotations

import random
from fractions import Fraction as F

import pytest

import admpairs.equivalence as eqv
from admpairs.admissible import AdmissiblePair, construct_pair, optimal_pair
from admpairs.equivalence import (EquivalenceError, b_optimal_chain, brute_force_rank, comparable,
                                  exceptional_rank1_table, nested, rank_classifier,
                                  two_level_chain, verify_chain)
from admpairs.grading import Grading, piece_range
from admpairs.liealg import AlgebraKind, build_algebra, dynkin_diagonal, nilpotent_from_partition
from admpairs.sl2 import decompose
from instances import random_complement


@pytest.fixture
def count_slots(monkeypatch):
    seen = []
    orig = eqv.slot_path

    def wrapped(U, V, ge, slot, step):
        seen.append(U.dim - (U & V).dim)
        return orig(U, V, ge, slot, step)

    monkeypatch.setattr(eqv, "slot_path", wrapped)
    return seen


def sl4_pairs(c):
    low = c.rng("<=", -2)
    p1 = c.pair(low, low + c.span(c.E(2, 1), c.E(3, 2)))
    p2 = c.pair(low, low + c.span(c.E(3, 2), c.E(4, 3)))
    m3 = low + c.span(c.E(3, 2))
    return p1, p2, c.pair(m3, m3)


def test_comparable_is_reflexive(sl4):
    p1, _, _ = sl4_pairs(sl4)
    w = comparable(sl4.G, sl4.e, 2, p1, p1)
    assert w is not None and w.holds()


def test_pairs_not_comparable(sl4):
    p1, p2, _ = sl4_pairs(sl4)
    assert comparable(sl4.G, sl4.e, 2, p1, p2) is None


def test_three_pair_chain(sl4):
    p1, p2, p3 = sl4_pairs(sl4)
    w1 = comparable(sl4.G, sl4.e, 2, p1, p3)
    w2 = comparable(sl4.G, sl4.e, 2, p3, p2)
    assert w1.lesser.m == p3.m and w1.greater.n == p1.n
    assert w2.lesser.m == p3.m and w2.greater.n == p2.n
    chain = eqv.EquivalenceChain(tuple(sl4.e), (p1, p3, p2), (w1, w2))
    assert verify_chain(chain).ok


def test_cross_grading_chain(sl3):
    A, e = sl3.A, sl3.e
    G, Gp, Gpp = sl3.G, Grading(A, [F(4, 3), F(-2, 3), F(-2, 3)]), Grading(A, [1, 0, -1])
    q = AdmissiblePair(G.piece(-2), G.piece(-2), G, F(2))
    qp = AdmissiblePair(Gp.piece(-2), Gp.piece(-2), Gp, F(2))
    big = AdmissiblePair(Gpp.piece(-2), Gpp.piece(-2) + Gpp.piece(-1), Gpp, F(2))
    w1 = comparable(Gpp, e, 2, q, big)
    w2 = comparable(Gpp, e, 2, big, qp)
    assert w1 is not None and w2 is not None
    assert verify_chain(eqv.EquivalenceChain(tuple(e), (q, big, qp), (w1, w2))).ok


def test_sl8_case_witness(sl8):
    low = sl8.rng("<=", -3)
    m = low + sl8.G.piece(-1)
    mp = low + sl8.span(sl8.E(6, 1))
    np_ = mp + sl8.span(sl8.E(7, 2), sl8.E(8, 3), sl8.E(3, 7), sl8.E(4, 8))
    w = comparable(sl8.G, sl8.e, 3, sl8.pair(m, m), sl8.pair(mp, np_))
    assert w is not None
    assert (w.lesser.m, w.lesser.n) == (m, m) and (w.greater.m, w.greater.n) == (mp, np_)
    assert w.inclusions() == (True, True, True)


def test_comparable_rejects_uncertified(sl4):
    bad = sl4.pair(sl4.rng("<=", -2), sl4.rng("<", 0))
    with pytest.raises(EquivalenceError):
        comparable(sl4.G, sl4.e, 2, bad, bad)


def test_verify_chain_detects_broken_link(sl4):
    p1, p2, p3 = sl4_pairs(sl4)
    w1 = comparable(sl4.G, sl4.e, 2, p1, p3)
    chain = eqv.EquivalenceChain(tuple(sl4.e), (p1, p2), (w1,))
    assert not verify_chain(chain).ok


def test_singleton_chain(sl4):
    p1, _, _ = sl4_pairs(sl4)
    assert verify_chain(eqv.EquivalenceChain(tuple(sl4.e), (p1,), ())).ok


@pytest.mark.parametrize("which", [0, 1, 2])
def test_sl4_case_b_optimal_chains(sl4, which):
    p = sl4_pairs(sl4)[which]
    c = b_optimal_chain(sl4.G, sl4.e, 2, 1, p)
    assert verify_chain(c).ok
    assert c.start.m == p.m and c.start.n == p.n


def test_sl4_case_constructed_pair_chain(sl4):
    p = construct_pair(decompose(sl4.G, sl4.e, 2), sl4.G)
    c = b_optimal_chain(sl4.G, sl4.e, 2, 1, p)
    assert verify_chain(c).ok


def test_b_optimal_requires_b_optimality(sl11):
    p = construct_pair(decompose(sl11.G, sl11.e, 3), sl11.G)
    with pytest.raises(EquivalenceError):
        b_optimal_chain(sl11.G, sl11.e, 3, 1, p)


@pytest.mark.parametrize("kind,parts", [("SL(4)", (2, 2)), ("SL(5)", (2, 2, 1)), ("SO(7)", (3, 2, 2)),
                                        ("SP(6)", (2, 2, 2))])
def test_dynkin_chain_ends_at_optimal_pair(kind, parts):
    A = build_algebra(kind)
    e = nilpotent_from_partition(A, parts)
    G = Grading(A, dynkin_diagonal(A, parts))
    p = construct_pair(decompose(G, e, 2), G)
    c = b_optimal_chain(G, e, 2, 1, p)
    assert verify_chain(c).ok
    assert (c.end.m, c.end.n) == (piece_range(G, "<=", -2), piece_range(G, "<", 0))


def test_slot_recursion_codim_two(count_slots):
    A = build_algebra("SL(6)")
    e = nilpotent_from_partition(A, (2, 2, 1, 1))
    G = Grading(A, [0, -2, 1, -1, 1, 1])
    below = piece_range(G, "<", -1)
    U0 = eqv.canonical_complement(G.ge_piece(e, -1), G.piece(-1))
    for s in range(3):
        W = random_complement(G, e, -1, random.Random(s))
        c = b_optimal_chain(G, e, 2, 1, AdmissiblePair(below, below + W, G, F(2)))
        assert verify_chain(c).ok
        assert c.end.n == below + U0
    assert 2 in count_slots


def test_two_level_sl3_case_is_immediate(sl3):
    m = sl3.G.piece(-2)
    c = two_level_chain(sl3.G, sl3.e, 2, 1, sl3.pair(m, m))
    assert len(c) == 1


def test_two_level_sl8_case(sl8):
    low = sl8.rng("<=", -3)
    m = low + sl8.G.piece(-1)
    c = two_level_chain(sl8.G, sl8.e, 3, 1, sl8.pair(m, m))
    assert verify_chain(c).ok
    U0 = eqv.canonical_complement(sl8.G.ge_piece(sl8.e, -2), sl8.G.piece(-2))
    assert c.end.m == c.end.n == low + U0


def test_two_level_codim_two(count_slots):
    A = build_algebra("SL(5)")
    e = nilpotent_from_partition(A, (2, 1, 1, 1))
    G = Grading(A, [2, -2, -2, 1, 1])
    low = piece_range(G, "<=", -4)
    for s in range(1, 3):
        W = random_complement(G, e, -3, random.Random(s))
        c = two_level_chain(G, e, 4, 1, AdmissiblePair(low + W, low + W, G, F(4)))
        assert verify_chain(c).ok
    assert 2 in count_slots


def test_two_level_rejects_wrong_shape(sl11):
    p = construct_pair(decompose(sl11.G, sl11.e, 3), sl11.G)
    with pytest.raises(EquivalenceError):
        two_level_chain(sl11.G, sl11.e, 3, F(1, 2), p)


def test_optimal_pair_is_maximal(sl4):
    opt = optimal_pair(sl4.G, sl4.e, 2).pair
    starts = list(sl4_pairs(sl4)) + [construct_pair(decompose(sl4.G, sl4.e, 2), sl4.G)]
    others = [q for p in starts for q in b_optimal_chain(sl4.G, sl4.e, 2, 1, p).pairs]
    assert any(nested(opt, q) for q in others)
    for q in others:
        if nested(opt, q):
            assert (q.m, q.n) == (opt.m, opt.n)


# --- rank classification ---

def test_rank_examples():
    r = rank_classifier("SL(8)", (4, 4))
    assert (r.rank, r.iso_class, r.case_label) == (1, "sl2", "two-row")
    assert rank_classifier("SL(5)", (3, 2)).iso_class == "abelian-line"
    assert rank_classifier("SL(6)", (6,)).rank == 0
    so = rank_classifier("SO(12)", (5, 3, 3, 1))
    assert (so.rank, so.case_label, so.iso_class) == (1, "so(b)", "abelian-line")
    sp = rank_classifier("SP(4)", (2, 2))
    assert (sp.rank, sp.case_label) == (1, "sp(b)")
    assert rank_classifier("SO(9)", (3, 3, 3)).case_label == "so(c)"
    assert rank_classifier("SO(8)", (3, 2, 2, 1)).case_label == "so(a)"
    assert rank_classifier("SP(6)", (2, 2, 2)).case_label == "sp(c)"


@pytest.mark.parametrize("kind", ["SL(6)", "SO(7)", "SO(8)", "SP(6)", "SP(8)"])
def test_rank_matches_brute_force(kind):
    K = AlgebraKind.parse(kind)
    from admpairs.liealg import valid_partitions
    for parts in valid_partitions(K):
        r = rank_classifier(K, parts)
        assert r.rank == brute_force_rank(K, parts)
        assert not r.readings_disagree


def test_sl_two_rows_rank_one():
    for n in range(2, 9):
        for d2 in range(1, n // 2 + 1):
            assert rank_classifier(f"SL({n})", (n - d2, d2)).rank == 1


def test_exceptional_table():
    t = exceptional_rank1_table()
    assert t["G2"] == [("A_1", 6), ("Ã_1", 8)]
    assert dict(t["F4"])["C_3"] == 36
    assert dict(t["E6"])["D_5"] == 68
