"""Comparability, equivalence chains, the constructive chain builders and rank-1 classification.

Order convention: (m', n') <= (m, n) under a grading means m inside m' inside n' inside n.
Witnesses record the four inclusions explicitly rather than the order symbol.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .admissible import AdmissiblePair, check_pair, phi_e
from .exactlin import (QMatrix, Subspace, as_fraction, complement_within, kernel, relations,
                       to_sparse)
from .grading import Grading, is_b_optimal, piece_range
from .liealg import (AlgebraKind, build_algebra, check_partition, dynkin_diagonal,
                     nilpotent_from_partition)


class EquivalenceError(ValueError):
    pass


@dataclass(frozen=True)
class ComparabilityWitness:
    grading: Grading
    a: Fraction
    lesser: AdmissiblePair
    greater: AdmissiblePair

    def inclusions(self) -> tuple:
        g, l = self.greater, self.lesser
        return (l.m.contains_subspace(g.m), l.n.contains_subspace(l.m), g.n.contains_subspace(l.n))

    def holds(self) -> bool:
        return all(self.inclusions())


def nested(lesser: AdmissiblePair, greater: AdmissiblePair) -> bool:
    """m_greater inside m_lesser inside n_lesser inside n_greater."""
    return (lesser.m.contains_subspace(greater.m) and lesser.n.contains_subspace(lesser.m)
            and greater.n.contains_subspace(lesser.n))


def comparable(G: Grading, e: Sequence, a, p1: AdmissiblePair, p2: AdmissiblePair):
    """Witness that the pairs are nested (either direction), None otherwise."""
    a = as_fraction(a)
    for p in (p1, p2):
        rep = check_pair(G, e, a, p.m, p.n)
        if not rep.overall:
            raise EquivalenceError(f"pair is not admissible under this grading: {rep.failed()}")
    q1, q2 = AdmissiblePair(p1.m, p1.n, G, a), AdmissiblePair(p2.m, p2.n, G, a)
    if nested(q1, q2):
        return ComparabilityWitness(G, a, q1, q2)
    if nested(q2, q1):
        return ComparabilityWitness(G, a, q2, q1)
    return None


@dataclass(frozen=True)
class EquivalenceChain:
    e: tuple
    pairs: tuple          # AdmissiblePair, each carrying the grading it was built under
    witnesses: tuple      # witnesses[i] links pairs[i] and pairs[i + 1]

    def __len__(self) -> int:
        return len(self.pairs)

    @property
    def start(self) -> AdmissiblePair:
        return self.pairs[0]

    @property
    def end(self) -> AdmissiblePair:
        return self.pairs[-1]


@dataclass
class ChainVerdict:
    ok: bool
    failures: list

    def __bool__(self) -> bool:
        return self.ok


def _same(p: AdmissiblePair, q: AdmissiblePair) -> bool:
    return p.m == q.m and p.n == q.n


def verify_chain(chain: EquivalenceChain) -> ChainVerdict:
    failures = []
    if not chain.pairs:
        return ChainVerdict(False, ["empty chain"])
    if len(chain.witnesses) != len(chain.pairs) - 1:
        return ChainVerdict(False, ["witness count does not match pair count"])
    for i, p in enumerate(chain.pairs):
        rep = check_pair(p.grading, chain.e, p.a, p.m, p.n)
        if not rep.overall:
            failures.append(f"pair {i}: fails {rep.failed()}")
    for i, w in enumerate(chain.witnesses):
        p, q = chain.pairs[i], chain.pairs[i + 1]
        ends = {(w.lesser.m, w.lesser.n), (w.greater.m, w.greater.n)}
        if ends != {(p.m, p.n), (q.m, q.n)} and not (_same(p, q) and _same(w.lesser, p)):
            failures.append(f"witness {i}: does not link pairs {i} and {i + 1}")
        for side in (w.lesser, w.greater):
            rep = check_pair(w.grading, chain.e, w.a, side.m, side.n)
            if not rep.overall:
                failures.append(f"witness {i}: pair fails {rep.failed()} under the witness grading")
        if not w.holds():
            failures.append(f"witness {i}: inclusions fail")
    return ChainVerdict(not failures, failures)


def chain_from_pairs(G: Grading, e: Sequence, a, pairs: list) -> EquivalenceChain:
    """Chain under one grading; consecutive duplicates are dropped, links must be nested."""
    a = as_fraction(a)
    out: list = []
    for p in pairs:
        q = AdmissiblePair(p.m, p.n, G, a)
        if out and _same(out[-1], q):
            continue
        out.append(q)
    wits = []
    for p, q in zip(out, out[1:]):
        if nested(p, q):
            wits.append(ComparabilityWitness(G, a, p, q))
        elif nested(q, p):
            wits.append(ComparabilityWitness(G, a, q, p))
        else:
            raise EquivalenceError("internal: consecutive pairs are not nested")
    return EquivalenceChain(tuple(e), tuple(out), tuple(wits))


def join_chains(*chains: EquivalenceChain) -> EquivalenceChain:
    """Concatenate chains whose endpoints match (same m, n)."""
    pairs, wits = list(chains[0].pairs), list(chains[0].witnesses)
    for c in chains[1:]:
        if not _same(pairs[-1], c.pairs[0]):
            raise EquivalenceError("chains do not meet")
        pairs += list(c.pairs[1:])
        wits += list(c.witnesses)
    return EquivalenceChain(chains[0].e, tuple(pairs), tuple(wits))


def reverse_chain(c: EquivalenceChain) -> EquivalenceChain:
    return EquivalenceChain(c.e, tuple(reversed(c.pairs)), tuple(reversed(c.witnesses)))


# --- slot families: P_W for complements W of g^e_j in g_j -------------------

def _sum(N: int, *parts) -> Subspace:
    vecs = []
    for P in parts:
        vecs.extend(P.sparse_basis() if isinstance(P, Subspace) else P)
    return Subspace.from_sparse(vecs, N)


def _scan_coefficients(limit: int = 6):
    yield (1, 1)
    yield (1, -1)
    for s in range(3, 2 * limit):
        for al in range(1, s):
            be = s - al
            if al != be:
                yield (al, be)
                yield (al, -be)


def _is_complement(W: Subspace, ge: Subspace, slot: Subspace) -> bool:
    return W.dim + ge.dim == slot.dim and (W & ge).dim == 0


def slot_path(U: Subspace, V: Subspace, ge: Subspace, slot: Subspace, codim1) -> list:
    """Pairs from P_U to P_V: codim1(U, V) for adjacent complements, else the (alpha, beta) interpolation."""
    N = U.ambient_dim
    if U == V:
        return [codim1(U, U)[0]]
    W = U & V
    n = U.dim - W.dim
    if n == 1:
        return codim1(U, V)
    us = list(complement_within(W, U).sparse_basis())
    vs = list(complement_within(W, V).sparse_basis())
    orders = [(us, vs)] + [(us[:i] + us[i + 1:] + [us[i]], vs[:j] + vs[j + 1:] + [vs[j]])
                           for i in range(len(us)) for j in range(len(vs)) if (i, j) != (n - 1, n - 1)]
    for uo, vo in orders:
        for al, be in _scan_coefficients():
            un = {k: al * uo[-1].get(k, 0) + be * vo[-1].get(k, 0) for k in set(uo[-1]) | set(vo[-1])}
            vn = {k: al * vo[-1].get(k, 0) + be * uo[-1].get(k, 0) for k in set(uo[-1]) | set(vo[-1])}
            Uab = _sum(N, W, uo[:-1], [{k: c for k, c in un.items() if c}])
            Vab = _sum(N, W, vo[:-1], [{k: c for k, c in vn.items() if c}])
            if not (_is_complement(Uab, ge, slot) and _is_complement(Vab, ge, slot)):
                continue
            if Uab.dim - (Uab & Vab).dim != n - 1:
                continue
            if U.dim - (U & Uab).dim != 1 or V.dim - (V & Vab).dim != 1:
                continue
            first = slot_path(U, Uab, ge, slot, codim1)
            middle = slot_path(Uab, Vab, ge, slot, codim1)
            last = slot_path(Vab, V, ge, slot, codim1)
            return first + middle[1:] + last[1:]
    raise EquivalenceError("internal: no (alpha, beta) keeps the complements transverse")


def extend_to_complement(Up: Subspace, ge: Subspace, slot: Subspace) -> Subspace:
    """A complement of ge in slot that contains Up (Up must meet ge trivially)."""
    return Up + complement_within(Up + ge, slot)


def canonical_complement(ge: Subspace, slot: Subspace) -> Subspace:
    return complement_within(ge, slot)


# --- b-optimal gradings -----------------------------------------------------

def _b_optimal_codim1(G: Grading, e: Sequence, a: Fraction, low: Subspace):
    A = G.algebra
    N = A.dim
    es = to_sparse(e)

    def step(U: Subspace, V: Subspace) -> list:
        PU = AdmissiblePair(low, _sum(N, low, U), G, a)
        if U == V:
            return [PU]
        PV = AdmissiblePair(low, _sum(N, low, V), G, a)
        W = U & V
        basis = W.sparse_basis()
        gram = [[A.form_sparse(es, A.bracket_sparse(x, y)) for y in basis] for x in basis]
        ker = kernel(QMatrix.from_rows(gram, len(basis)))
        if ker.dim == 0:
            raise EquivalenceError("internal: Phi_e is nondegenerate on U meet V")
        x = W.combine(ker.basis[0])
        mid = AdmissiblePair(_sum(N, low, [x]), _sum(N, low, W), G, a)
        return [PU, mid, PV]
    return step


def b_optimal_chain(G: Grading, e: Sequence, a, b, pair: AdmissiblePair) -> EquivalenceChain:
    """Chain from pair to P_U0 = (g_{<-a/2}, g_{<-a/2} + U0), U0 the canonical complement."""
    A = G.algebra
    N = A.dim
    a, b = as_fraction(a), as_fraction(b)
    if not is_b_optimal(G, e, b):
        raise EquivalenceError("grading is not b-optimal for e")
    rep = check_pair(G, e, a, pair.m, pair.n)
    if not rep.overall:
        raise EquivalenceError(f"pair is not admissible: {rep.failed()}")
    half = a / 2
    low = piece_range(G, "<=", -a)
    below = piece_range(G, "<", -half)
    upper = Subspace.coordinate([k for k in G.range_indices("<", 0) if G.degree_of[k] > -half], N)
    lower = Subspace.coordinate([k for k in G.range_indices("<", -half) if G.degree_of[k] > -a], N)
    slot = G.piece(-half)
    ge = G.ge_piece(e, -half)
    U = extend_to_complement(pair.n & slot, ge, slot)
    m1 = _sum(N, low, pair.m & lower)
    n1 = _sum(N, below, pair.n & upper, U)
    PU = AdmissiblePair(below, _sum(N, below, U), G, a)
    U0 = canonical_complement(ge, slot)
    path = slot_path(U, U0, ge, slot, _b_optimal_codim1(G, e, a, below))
    pairs = [pair, AdmissiblePair(m1, n1, G, a), PU] + path[1:]
    return chain_from_pairs(G, e, a, pairs)


# --- two-level gradings -----------------------------------------------------

def _two_level_codim1(G: Grading, e: Sequence, a: Fraction, b: Fraction, low: Subspace):
    A = G.algebra
    N = A.dim
    es = to_sparse(e)
    gb = G.piece(-b)
    geb = G.ge_piece(e, -b)

    def step(U: Subspace, V: Subspace) -> list:
        PU = AdmissiblePair(_sum(N, low, U), _sum(N, low, U), G, a)
        if U == V:
            return [PU]
        PV = AdmissiblePair(_sum(N, low, V), _sum(N, low, V), G, a)
        W = U & V
        eW = Subspace.from_sparse([A.bracket_sparse(es, w) for w in W.sparse_basis()], N)
        cand = A.orth(eW, gb)
        D = complement_within(geb, cand)
        if D.dim == 0:
            raise EquivalenceError("internal: no line D avoiding g^e")
        d = [D.sparse_basis()[0]]
        AU = AdmissiblePair(_sum(N, low, W), _sum(N, low, U, d), G, a)
        AV = AdmissiblePair(_sum(N, low, W), _sum(N, low, V, d), G, a)
        mid = AdmissiblePair(_sum(N, low, W, d), _sum(N, low, W, d), G, a)
        return [PU, AU, mid, AV, PV]
    return step


def middle_degrees(G: Grading, a) -> list:
    a = as_fraction(a)
    return [j for j in G.degrees if -a < j < 0]


def two_level_chain(G: Grading, e: Sequence, a, b, pair: AdmissiblePair) -> EquivalenceChain:
    """Chain to (g_{<=-a} + U0, same) when g_{<0} = g_{<=-a} + g_{b-a} + g_{-b}."""
    A = G.algebra
    N = A.dim
    a, b = as_fraction(a), as_fraction(b)
    if not 0 < b <= a / 2:
        raise EquivalenceError("b must lie in (0, a/2]")
    mids = middle_degrees(G, a)
    if any(j not in (b - a, -b) for j in mids):
        raise EquivalenceError("negative part is not g_{<=-a} + g_{b-a} + g_{-b}")
    rep = check_pair(G, e, a, pair.m, pair.n)
    if not rep.overall:
        raise EquivalenceError(f"pair is not admissible: {rep.failed()}")
    if not mids:
        return chain_from_pairs(G, e, a, [pair])
    if b == a / 2 or G.ge_piece(e, b - a).dim == 0:
        return b_optimal_chain(G, e, a, b, pair)
    low = piece_range(G, "<=", -a)
    slot, sb = G.piece(b - a), G.piece(-b)
    ge = G.ge_piece(e, b - a)
    U2, U1 = pair.m & slot, pair.n & slot
    V1 = pair.n & sb
    U = extend_to_complement(U1, ge, slot)
    p1 = AdmissiblePair(_sum(N, low, U2), _sum(N, low, U, V1), G, a)
    PU = AdmissiblePair(_sum(N, low, U), _sum(N, low, U), G, a)
    U0 = canonical_complement(ge, slot)
    path = slot_path(U, U0, ge, slot, _two_level_codim1(G, e, a, b, low))
    return chain_from_pairs(G, e, a, [pair, p1, PU] + path[1:])


# --- rank of the reductive centralizer --------------------------------------

@dataclass(frozen=True)
class RankClass:
    kind: AlgebraKind
    partition: tuple
    rank: int
    iso_class: str
    case_label: str | None
    factors: tuple
    readings_disagree: bool = False


def _factor_rank(name: str, r: int) -> int:
    return r // 2 if name in ("so", "sp") else r


def centralizer_factors(kind: AlgebraKind, parts: Sequence[int]) -> tuple:
    counts = Counter(parts)
    if kind.family == "SL":
        return tuple(("gl", counts[s], s) for s in sorted(counts, reverse=True))
    out = []
    for s in sorted(counts, reverse=True):
        odd = s % 2 == 1
        if kind.family == "SO":
            out.append(("so" if odd else "sp", counts[s], s))
        else:
            out.append(("sp" if odd else "so", counts[s], s))
    return tuple(out)


def formula_rank(kind: AlgebraKind, parts: Sequence[int]) -> int:
    f = centralizer_factors(kind, parts)
    if kind.family == "SL":
        return sum(r for _, r, _ in f) - 1
    return sum(_factor_rank(name, r) for name, r, _ in f)


def _strict_except(d: list, equal: set) -> bool:
    """d_j > d_{j+1} for all j, except d_j = d_{j+1} exactly when j is in equal (0-based)."""
    for j in range(len(d) - 1):
        if j in equal:
            if d[j] != d[j + 1]:
                return False
        elif not d[j] > d[j + 1]:
            return False
    return True


def rank_one_clauses(kind: AlgebraKind, parts: Sequence[int], triple_min: int | None = None) -> list:
    """Rank-one clauses that hold, each as (label, iso tag)."""
    d = list(parts)
    m = len(d)
    out = []
    if kind.family == "SL":
        if m == 2:
            out.append(("two-row", "sl2" if d[0] == d[1] else "abelian-line"))
        return out
    pair_par, line_par = (0, 1) if kind.family == "SO" else (1, 0)
    triple_par = line_par
    if m >= 2:
        for i in range(m - 1):
            if _strict_except(d, {i}):
                if d[i] % 2 == pair_par:
                    out.append(("(a)", "sp2"))
                if d[i] % 2 == line_par:
                    out.append(("(b)", "abelian-line"))
    min_m = triple_min if triple_min is not None else (3 if kind.family == "SO" else 2)
    if m >= min_m:
        for i in range(1, m - 1):
            if d[i] % 2 == triple_par and _strict_except(d, {i - 1, i}):
                out.append(("(c)", "so3"))
    return out


def _iso_tag(kind: AlgebraKind, parts: tuple, rank: int, clauses: list) -> str:
    if clauses:
        return clauses[0][1]
    if rank == 0:
        return "zero"
    names = []
    for name, r, s in centralizer_factors(kind, parts):
        if name == "gl":
            names.append(f"gl{r}")
        elif r > 1:
            names.append(f"{name}{r}")
    body = " x ".join(names)
    return f"s({body})" if kind.family == "SL" else body


def rank_classifier(kind: AlgebraKind | str, parts: Sequence[int]) -> RankClass:
    if isinstance(kind, str):
        kind = AlgebraKind.parse(kind)
    parts = check_partition(kind, parts)
    rk = formula_rank(kind, parts)
    clauses = rank_one_clauses(kind, parts)
    if bool(clauses) != (rk == 1):
        raise EquivalenceError(f"internal: clauses {clauses} disagree with rank {rk}")
    label = clauses[0][0] if clauses else None
    if kind.family != "SL" and label is not None:
        label = kind.family.lower() + label
    # (c) read with 'm >= 2' and with 'm >= 3': i ranges over 2..m-1, so both agree
    disagree = kind.family != "SL" and rank_one_clauses(kind, parts, 2) != rank_one_clauses(kind, parts, 3)
    return RankClass(kind, parts, rk, _iso_tag(kind, parts, rk, clauses), label,
                     centralizer_factors(kind, parts), disagree)


def brute_force_rank(kind: AlgebraKind | str, parts: Sequence[int], samples: int = 3, seed: int = 0) -> int:
    """Rank of g^e meet g^h: smallest centralizer dimension of random elements of it."""
    A = build_algebra(kind)
    parts = check_partition(A.kind, parts)
    e = nilpotent_from_partition(A, parts)
    hdiag = dynkin_diagonal(A, parts)
    zero_deg = [k for k, (i, j) in enumerate(A.positions) if hdiag[i] == hdiag[j]]
    ge = A.centralizer(e)
    K = ge & Subspace.coordinate(zero_deg, A.dim)
    basis = K.sparse_basis()
    if not basis:
        return 0
    rng = random.Random(seed)
    best = None
    for _ in range(samples):
        x = K.combine([Fraction(rng.randint(-97, 97)) for _ in basis])
        cols = [A.bracket_sparse(x, y) for y in basis]
        c = len(relations(cols))
        best = c if best is None else min(best, c)
    return best


EXCEPTIONAL_RANK1 = {
    "G2": (("A_1", 6), ("Ã_1", 8)),
    "F4": (("A_2+Ã_1", 34), ("Ã_2+A_1", 36), ("C_3(a_1)", 38), ("B_3", 42), ("C_3", 36)),
    "E6": (("2A_2+A_1", 54), ("A_4+A_1", 62), ("A_5", 64), ("D_5(a_1)", 64), ("D_5", 68)),
}


def exceptional_rank1_table() -> dict:
    return {k: list(v) for k, v in EXCEPTIONAL_RANK1.items()}


__all__ = [
    "ComparabilityWitness", "EquivalenceChain", "comparable", "verify_chain", "b_optimal_chain",
    "two_level_chain", "rank_classifier", "brute_force_rank", "exceptional_rank1_table",
    "chain_from_pairs", "join_chains", "reverse_chain", "RankClass", "phi_e",
]
