"""Acceptance criteria 1-10, exact arithmetic throughout. Each test records one pass/fail line."""

from __future__ import annotations

import random
import sys
from contextlib import contextmanager
from fractions import Fraction as F
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from admpairs.admissible import (AdmissibleError, AdmissiblePair, ad_e_degree_profile,  # noqa: E402
                                 check_pair, construct_pair, optimal_pair, slot_dimension_identity,
                                 slice_complement)
from admpairs.connectivity import breakpoints, connect_to_dynkin, p_index, verify_connectivity  # noqa: E402
from admpairs.equivalence import (EquivalenceChain, b_optimal_chain, brute_force_rank,  # noqa: E402
                                  comparable, rank_classifier, verify_chain)
from admpairs.exactlin import kernel  # noqa: E402
from admpairs.grading import (Grading, is_admissible_grading, is_b_optimal, is_dynkin_grading,  # noqa: E402
                              is_good_grading, piece_range)
from admpairs.liealg import (AlgebraKind, build_algebra, dynkin_diagonal,  # noqa: E402
                             nilpotent_from_partition, valid_partitions)
from admpairs.sl2 import Sl2Error, decompose  # noqa: E402
from conftest import sl3_case, sl4_case, sl8_case, sl11_case  # noqa: E402
from instances import ACCEPTANCE, WIDE_KINDS, random_complement, random_instances  # noqa: E402

ADMISSIBLE = random_instances(60, WIDE_KINDS, seed=2024)
INADMISSIBLE = [i for i in random_instances(80, WIDE_KINDS, seed=99, admissible_only=False)
                if not i.admissible][:20]
SL_SMALL = random_instances(20, tuple(f"SL({n})" for n in range(3, 8)), seed=77)


@contextmanager
def criterion(k: int, note: str):
    ok = False
    try:
        yield
        ok = True
    finally:
        ACCEPTANCE[k] = (ok, note)
        print(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")


def degree_matrix(G):
    return [list(row) for row in G.degree_matrix()]


def test_criterion_01_sl4_grading():
    with criterion(1, "sl4 diag(3,1,-1,-3)/2: degrees, pair, ad e, admissible not good"):
        c = sl4_case()
        assert degree_matrix(c.G) == [[0, 1, 2, 3], [-1, 0, 1, 2], [-2, -1, 0, 1], [-3, -2, -1, 0]]
        low = c.rng("<=", -2)
        rep = check_pair(c.G, c.e, 2, low, low + c.span(c.E(2, 1), c.E(3, 2)))
        assert all(rep.verdicts[k] for k in ("A1", "A2", "A3", "A4", "A5", "A6"))
        rows = {r.degree: r for r in ad_e_degree_profile(c.G, c.e, 2)}
        assert not rows[F(-1)].injective
        assert is_admissible_grading(c.G, c.e, 2) and not is_good_grading(c.G, c.e, 2)


def test_criterion_02_sl3_grading():
    with criterion(2, "sl3 grading diag(2,2,-4)/3: degrees, g_-2 admissible, good, not Dynkin"):
        c = sl3_case()
        assert degree_matrix(c.G) == [[0, 0, 2], [0, 0, 2], [-2, -2, 0]]
        m = c.G.piece(-2)
        assert c.A.is_subalgebra(m) and check_pair(c.G, c.e, 2, m, m).overall
        assert is_good_grading(c.G, c.e, 2) and not is_dynkin_grading(c.G, c.e)


def test_criterion_03_sl11_grading():
    with criterion(3, "sl11, a=3: negative centralizer is one line, no optimal pair, dim g^e = 24"):
        c = sl11_case()
        neg = c.G.ge_range(c.e, "<", 0)
        assert neg == c.span(tuple(x + y for x, y in zip(c.E(7, 10), c.E(8, 11))))
        assert neg.dim == 1
        out = optimal_pair(c.G, c.e, 3)
        assert out.status == "No" and out.obstruction_degrees == (F(-1), F(-2))
        assert kernel(c.A.ad_matrix(c.e)).dim == 24


def test_criterion_04_blocks_and_p_index():
    blocks = {(8, F(1, 2)), (6, F(1, 2)), (4, F(1, 2)), (4, F(7, 2)), (2, F(7, 2)), (7, F(4)), (5, F(4))}
    p_at_one = {(8, F(-1, 2)): 9, (6, F(-1, 2)): 7, (4, F(-1, 2)): 5, (4, F(-7, 2)): 7,
                (2, F(-7, 2)): 5, (7, F(-4)): 11, (5, F(-4)): 9}
    with criterion(4, "isotypic blocks, p-values at 1, breakpoints {3/7, 3/4}, p + p' = 2d + 2"):
        c = sl11_case()
        dec = decompose(c.G, c.e, 3)
        keys = {k for k in dec.keys() if k[1] != 0}
        assert keys == {(d, s * lam) for d, lam in blocks for s in (1, -1)}
        for (d, lam), p in p_at_one.items():
            assert p_index(dec.block(d, lam), 1, 3) == p
        assert breakpoints(dec) == [F(3, 7), F(3, 4)]
        rng = random.Random(15)
        eps = {F(0), F(1), F(3, 7), F(3, 4)}
        while len(eps) < 20:
            q = rng.randint(2, 60)
            eps.add(F(rng.randint(0, q), q))
        for x in eps:
            for B in dec.blocks:
                assert p_index(B, x, 3) + p_index(dec.block(B.d, -B.lam), x, 3) == 2 * B.d + 2


def test_criterion_05_sl8_pairs():
    with criterion(5, "sl8 (4,4): dim g^e = 15, both pairs certify, witness (m,m) below (m',n')"):
        c = sl8_case()
        assert kernel(c.A.ad_matrix(c.e)).dim == 15
        low = c.rng("<=", -3)
        m = low + c.G.piece(-1)
        mp = low + c.span(c.E(6, 1))
        np_ = mp + c.span(c.E(7, 2), c.E(8, 3), c.E(3, 7), c.E(4, 8))
        assert check_pair(c.G, c.e, 3, m, m).overall and check_pair(c.G, c.e, 3, mp, np_).overall
        w = comparable(c.G, c.e, 3, c.pair(m, m), c.pair(mp, np_))
        assert w is not None and w.holds()
        assert (w.lesser.m, w.lesser.n, w.greater.m, w.greater.n) == (m, m, mp, np_)


def test_criterion_06_chains():
    with criterion(6, "incomparable pairs joined through (m3,m3); cross-grading chain via Dynkin"):
        c = sl4_case()
        low = c.rng("<=", -2)
        p1 = c.pair(low, low + c.span(c.E(2, 1), c.E(3, 2)))
        p2 = c.pair(low, low + c.span(c.E(3, 2), c.E(4, 3)))
        m3 = low + c.span(c.E(3, 2))
        p3 = c.pair(m3, m3)
        assert comparable(c.G, c.e, 2, p1, p2) is None
        ws = (comparable(c.G, c.e, 2, p1, p3), comparable(c.G, c.e, 2, p3, p2))
        assert verify_chain(EquivalenceChain(tuple(c.e), (p1, p3, p2), ws)).ok
        d = sl3_case()
        G, e = d.G, d.e
        Gp, Gd = Grading(d.A, [F(4, 3), F(-2, 3), F(-2, 3)]), Grading(d.A, [1, 0, -1])
        assert is_dynkin_grading(Gd, e)
        q = AdmissiblePair(G.piece(-2), G.piece(-2), G, F(2))
        qp = AdmissiblePair(Gp.piece(-2), Gp.piece(-2), Gp, F(2))
        mid = AdmissiblePair(Gd.piece(-2), Gd.piece(-2) + Gd.piece(-1), Gd, F(2))
        ws = (comparable(Gd, e, 2, q, mid), comparable(Gd, e, 2, mid, qp))
        assert verify_chain(EquivalenceChain(tuple(e), (q, mid, qp), ws)).ok


def constructs(inst) -> bool:
    A, e, G = inst.build()
    try:
        p = construct_pair(decompose(G, e, inst.a), G)
    except (Sl2Error, AdmissibleError):
        return False
    return check_pair(G, e, inst.a, p.m, p.n).overall


def test_criterion_07_property_suite():
    note = f"{len(ADMISSIBLE)} admissible + {len(INADMISSIBLE)} inadmissible random instances"
    with criterion(7, note):
        assert len(ADMISSIBLE) >= 50
        assert sum(i.build()[2].is_integral() for i in ADMISSIBLE) >= 10
        for inst in ADMISSIBLE:
            A, e, G = inst.build()
            p = construct_pair(decompose(G, e, inst.a), G)
            rep = check_pair(G, e, inst.a, p.m, p.n)
            assert rep.overall, (inst, rep.failed())
            assert rep.diagnostics["parity"] and rep.diagnostics["m_perp_in_g_lt_a"]
            if G.is_integral():
                assert rep.diagnostics["m_perp_in_g_le_a-1"]
            assert slice_complement(G, e, p).dim == A.centralizer(e).dim
            for b in {-j for j in G.degrees if -inst.a < j < 0}:
                assert slot_dimension_identity(G, e, p, b), (inst, b)
        for inst in ADMISSIBLE + INADMISSIBLE:
            A, e, G = inst.build()
            assert is_admissible_grading(G, e, inst.a) == inst.admissible == constructs(inst), inst


def test_criterion_08_connectivity():
    with criterion(8, f"connect to Dynkin on three worked examples and {len(SL_SMALL)} random sl_n"):
        assert len(SL_SMALL) == 20
        cases = [(c.G, c.e, c.a) for c in (sl3_case(), sl4_case(), sl11_case())]
        cases += [(i.build()[2], i.build()[1], i.a) for i in SL_SMALL]
        for G, e, a in cases:
            cert = connect_to_dynkin(G, e, a)
            assert all(s.ok for s in cert.steps)
            assert verify_connectivity(cert).ok


def all_kinds():
    yield from (f"SL({n})" for n in range(2, 9))
    yield from (f"SO({n})" for n in range(3, 9))
    yield from (f"SP({n})" for n in range(2, 9, 2))


def test_criterion_09_rank_classifier():
    with criterion(9, "rank formula and clauses agree with brute force for every partition, n <= 8"):
        count = 0
        for kind in all_kinds():
            K = AlgebraKind.parse(kind)
            for parts in valid_partitions(K):
                r = rank_classifier(K, parts)
                assert r.rank == brute_force_rank(K, parts), (kind, parts)
                assert not r.readings_disagree
                if K.family == "SL":
                    assert (r.rank == 1) == (len(parts) == 2)
                count += 1
        assert count > 100


def test_criterion_10_b_optimal_chains():
    with criterion(10, "b-optimal chains verify on random instances; Dynkin endpoint is optimal"):
        rng = random.Random(10)
        runs = 0
        for inst in ADMISSIBLE:
            A, e, G = inst.build()
            b = inst.a / 2
            if not is_b_optimal(G, e, b):
                continue
            starts = [construct_pair(decompose(G, e, inst.a), G)]
            slot = G.piece(-b)
            if slot.dim > G.ge_piece(e, -b).dim:
                below = piece_range(G, "<", -b)
                W = random_complement(G, e, -b, rng)
                starts.append(AdmissiblePair(below, below + W, G, inst.a))
            for p in starts:
                assert verify_chain(b_optimal_chain(G, e, inst.a, b, p)).ok, inst
                runs += 1
        assert runs >= 20
        for kind in ("SL(3)", "SL(4)", "SL(5)", "SO(5)", "SO(7)", "SP(4)", "SP(6)"):
            K = AlgebraKind.parse(kind)
            A = build_algebra(K)
            for parts in valid_partitions(K):
                e = nilpotent_from_partition(A, parts)
                G = Grading(A, dynkin_diagonal(A, parts))
                if G.homogeneous_degree(e) != 2:
                    continue
                c = b_optimal_chain(G, e, 2, 1, construct_pair(decompose(G, e, 2), G))
                assert verify_chain(c).ok
                assert (c.end.m, c.end.n) == (piece_range(G, "<=", -2), piece_range(G, "<", 0))


if __name__ == "__main__":
    for name, fn in list(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                pass
