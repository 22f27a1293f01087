"""Admissible pairs: the (A1)-(A6) checks, the blockwise construction, optimal pairs and slices."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import (ZERO, QMatrix, Subspace, as_fraction, complement_within, rank,
                       to_sparse)
from .grading import (Grading, GradingError, check_degree, is_admissible_grading, is_graded,
                      piece_range)
from .sl2 import IsotypicDecomposition


class AdmissibleError(ValueError):
    pass


CONDITIONS = ("A1", "A2", "A3", "A4", "A5", "A6", "subalgebras")


@dataclass(frozen=True)
class AdmissiblePair:
    m: Subspace
    n: Subspace
    grading: Grading = field(compare=False)
    a: Fraction = field(compare=False)

    @property
    def dims(self) -> tuple:
        return (self.m.dim, self.n.dim)


@dataclass
class CheckReport:
    verdicts: dict
    details: dict
    diagnostics: dict

    @property
    def overall(self) -> bool:
        return all(self.verdicts.values())

    def __bool__(self) -> bool:
        return self.overall

    def failed(self) -> list:
        return [c for c, v in self.verdicts.items() if not v]


def _parts(G: Grading, U: Subspace) -> dict | None:
    ok, parts = is_graded(G, U)
    return parts if ok else None


def _image(A, xs: dict, U: Subspace) -> Subspace:
    return Subspace.from_sparse([A.bracket_sparse(xs, u) for u in U.sparse_basis()], A.dim)


def ge_total(G: Grading, e: Sequence) -> Subspace:
    return G.ge_range(e, "<=", max(G.degrees) + 1)


def check_pair(G: Grading, e: Sequence, a, m: Subspace, n: Subspace) -> CheckReport:
    A = G.algebra
    N = A.dim
    a = as_fraction(a)
    es = to_sparse(e)
    v: dict = {}
    det: dict = {}
    diag: dict = {}

    deg = G.homogeneous_degree(es)
    v["A1"] = a > 1 and deg == a
    if not v["A1"]:
        det["A1"] = f"e has degree {deg}, required a = {a} > 1"

    pm, pn = _parts(G, m), _parts(G, n)
    low, neg = piece_range(G, "<=", -a), piece_range(G, "<", 0)
    a2 = []
    if pm is None:
        a2.append("m is not graded")
    if pn is None:
        a2.append("n is not graded")
    if not m.contains_subspace(low):
        a2.append("g_{<=-a} is not inside m")
    if not n.contains_subspace(m):
        a2.append("m is not inside n")
    if not neg.contains_subspace(n):
        a2.append("n is not inside g_{<0}")
    v["A2"] = not a2
    if a2:
        det["A2"] = "; ".join(a2)

    # (A3) and (A4), degree by degree when both spaces are graded
    if pm is not None and pn is not None:
        bad3, bad4 = [], []
        for k in G.degrees:
            mk = pm.get(-k, Subspace.zero(N))
            perp = A.orth(mk, G.piece(k)) if mk.dim else G.piece(k)
            ge_img = G.ad_e_piece(e, k - a)[1]
            lhs = perp & ge_img
            nk = pn.get(k - a, Subspace.zero(N))
            rhs = _image(A, es, nk)
            if lhs != rhs:
                bad3.append(k)
        for j, nj in pn.items():
            if (nj & G.ge_piece(e, j)).dim:
                bad4.append(j)
        v["A3"] = not bad3
        v["A4"] = not bad4
        if bad3:
            det["A3"] = "fails in degrees " + ", ".join(str(k) for k in bad3)
        if bad4:
            det["A4"] = "n meets g^e in degrees " + ", ".join(str(j) for j in bad4)
    else:
        ge_img = Subspace.from_sparse(
            [b for j in G.degrees for b in G.ad_e_piece(e, j)[1].sparse_basis()], N)
        v["A3"] = (A.orth(m) & ge_img) == _image(A, es, n)
        v["A4"] = (n & ge_total(G, e)).dim == 0
        if not v["A3"]:
            det["A3"] = "m-perp meet [g, e] differs from [n, e]"
        if not v["A4"]:
            det["A4"] = "n meets g^e"

    v["A5"] = m.contains_subspace(A.bracket_spaces(n, m))
    if not v["A5"]:
        det["A5"] = "[n, m] is not inside m"
    subs = []
    if not A.is_subalgebra(m):
        subs.append("m")
    if not A.is_subalgebra(n):
        subs.append("n")
    v["subalgebras"] = not subs
    if subs:
        det["subalgebras"] = " and ".join(subs) + " not closed under bracket"

    gedim = sum(G.ge_piece(e, j).dim for j in G.degrees)
    v["A6"] = m.dim + n.dim == N - gedim
    if not v["A6"]:
        det["A6"] = f"dim m + dim n = {m.dim + n.dim}, dim g - dim g^e = {N - gedim}"

    diag["dim_m"] = m.dim
    diag["dim_n"] = n.dim
    diag["dim_ge"] = gedim
    diag["parity"] = (m.dim + n.dim) % 2 == 0 and (n.dim - m.dim) % 2 == 0
    if pm is not None:
        diag["m_perp_in_g_le_a-1"] = _perp_above(G, pm, a - 1)
        # for non-integral degrees only m-perp inside g_{<a} is forced
        diag["m_perp_in_g_lt_a"] = _perp_above(G, pm, a, strict=False)
    return CheckReport(v, det, diag)


def _perp_above(G: Grading, pm: dict, bound: Fraction, strict: bool = True) -> bool:
    """m-perp inside g_{<=bound} (g_{<bound} if not strict): above it m_{-k} must fill g_{-k}."""
    for k in G.degrees:
        mk = pm[-k].dim if -k in pm else 0
        above = k > bound if strict else k >= bound
        if above and mk != len(G.indices(k)):
            return False
    return True


def certify(G: Grading, e: Sequence, a, m: Subspace, n: Subspace) -> AdmissiblePair:
    rep = check_pair(G, e, a, m, n)
    if not rep.overall:
        raise AdmissibleError(f"pair fails {rep.failed()}: {rep.details}")
    return AdmissiblePair(m, n, G, as_fraction(a))


# --- blockwise construction -------------------------------------------------

def layer_span(block, lo: int, hi: int) -> list:
    """Sparse vectors of layers lo..hi (inclusive) of a block."""
    if block is None:
        return []
    return [v for l in range(max(lo, 0), min(hi, block.d - 1) + 1)
            for v in block.layers[l].sparse_basis()]


def _negative_layers(block, rho: Fraction, a: Fraction, bound: Fraction, strict: bool) -> list:
    if block is None:
        return []
    out = []
    for l in range(block.d):
        w = rho + l * a
        if w < bound or (not strict and w == bound):
            out.extend(block.layers[l].sparse_basis())
    return out


def _paired_blocks(dec: IsotypicDecomposition) -> list:
    seen = []
    for B in dec.blocks:
        if B.lam >= 0:
            seen.append((B, dec.block(B.d, -B.lam) if B.lam else None))
    return seen


def block_choice(B, Bm, a: Fraction) -> tuple:
    """(m_part, n_part, case label) for V = E_lam + E_{-lam}, lam >= 0."""
    d, rho = B.d, B.rho
    rho_m = -rho - (d - 1) * a
    zero_at = [k for k in range(d) if rho + k * a == 0]
    if zero_at:
        part = (_negative_layers(B, rho, a, ZERO, True)
                + _negative_layers(Bm, rho_m, a, ZERO, True))
        return part, part, "I"
    k = next(k for k in range(-1, d) if rho + k * a < 0 < rho + (k + 1) * a)
    if k == -1:
        part = layer_span(Bm, 0, d - 2)
        return part, part, "II(a)"
    if k == d - 1:
        part = layer_span(B, 0, d - 2)
        return part, part, "II(b)"
    if B.lam == 0:
        return layer_span(B, 0, k - 1), layer_span(B, 0, k), "II(c)"
    if rho + k * a <= -rho - (k + 1) * a:
        part = layer_span(B, 0, k) + layer_span(Bm, 0, d - 3 - k)
        return part, part, "II(d)"
    part = layer_span(B, 0, k - 1) + layer_span(Bm, 0, d - 2 - k)
    return part, part, "II(e)"


def construct_pair(dec: IsotypicDecomposition, G: Grading) -> AdmissiblePair:
    A = G.algebra
    a = dec.a
    hG = tuple(x + a / 2 * y for x, y in zip(dec.t, dec.triple.h))
    if hG != tuple(G.element):
        raise AdmissibleError("decomposition does not belong to this grading")
    mv, nv = [], []
    for B, Bm in _paired_blocks(dec):
        mp, np_, _ = block_choice(B, Bm, a)
        mv += mp
        nv += np_
    m = Subspace.from_sparse(mv, A.dim)
    n = Subspace.from_sparse(nv, A.dim)
    rep = check_pair(G, dec.triple.e, a, m, n)
    if not rep.overall:
        raise AdmissibleError(f"internal: constructed pair fails {rep.failed()}: {rep.details}")
    return AdmissiblePair(m, n, G, a)


def construction_cases(dec: IsotypicDecomposition) -> list:
    return [((B.d, B.lam), block_choice(B, Bm, dec.a)[2]) for B, Bm in _paired_blocks(dec)]


# --- optimal pairs ----------------------------------------------------------

@dataclass
class OptimalOutcome:
    status: str                   # "Yes", "No" or "Unknown"
    pair: AdmissiblePair | None = None
    forced_degrees: tuple = ()
    violation_degrees: tuple = ()
    narrative: str = ""

    @property
    def obstruction_degrees(self) -> tuple:
        return self.forced_degrees + self.violation_degrees


def generated_subalgebra(A, U: Subspace) -> Subspace:
    S = U
    while True:
        T = S + A.bracket_spaces(S, S)
        if T.dim == S.dim:
            return S
        S = T


def optimal_pair(G: Grading, e: Sequence, a, max_coordinate: int = 2000,
                 random_tries: int = 40, seed: int = 0) -> OptimalOutcome:
    A = G.algebra
    N = A.dim
    a = check_degree(G, e, a)
    if not is_admissible_grading(G, e, a):
        raise GradingError("grading is not admissible for e")
    low = piece_range(G, "<=", -a)
    mid = [j for j in G.degrees if -a < j < 0]
    ge = {j: G.ge_piece(e, j) for j in mid}
    if all(ge[j].dim == 0 for j in mid):
        pair = certify(G, e, a, low, piece_range(G, "<", 0))
        return OptimalOutcome("Yes", pair, narrative="g_{<0} meets g^e trivially")

    # a graded complement n of g_{<0} meet g^e has n_j = g_j wherever g^e_j = 0
    forced = [j for j in mid if ge[j].dim == 0]
    core = Subspace.coordinate(low.pivots + tuple(i for j in forced for i in G.indices(j)), N)
    closure = generated_subalgebra(A, core)
    viol = tuple(j for j in mid if (closure & ge[j]).dim)
    if viol:
        text = ("n_j = g_j is forced in degrees " + ", ".join(str(j) for j in sorted(forced, reverse=True))
                + "; the subalgebra they generate meets g^e in degrees "
                + ", ".join(str(j) for j in viol))
        return OptimalOutcome("No", None, tuple(sorted(forced, reverse=True)), viol, text)

    def attempt(comps: dict) -> AdmissiblePair | None:
        n = Subspace.from_sparse(list(low.sparse_basis()) + [v for C in comps.values()
                                                            for v in C.sparse_basis()], N)
        if not A.is_subalgebra(n):
            return None
        rep = check_pair(G, e, a, low, n)
        return AdmissiblePair(low, n, G, a) if rep.overall else None

    options = {}
    for j in mid:
        idx = G.indices(j)
        need = len(idx) - ge[j].dim
        opts = []
        for combo in itertools.combinations(idx, need):
            C = Subspace.coordinate(combo, N)
            if (C & ge[j]).dim == 0:
                opts.append(C)
        options[j] = opts
    total = 1
    for j in mid:
        total *= max(len(options[j]), 1)
    if total <= max_coordinate:
        for choice in itertools.product(*(options[j] for j in mid)):
            pair = attempt(dict(zip(mid, choice)))
            if pair is not None:
                return OptimalOutcome("Yes", pair, narrative="coordinate complement found")
    rng = random.Random(seed)
    for _ in range(random_tries):
        comps = {}
        for j in mid:
            idx = G.indices(j)
            need = len(idx) - ge[j].dim
            while True:
                vecs = [{k: Fraction(rng.randint(-9, 9)) for k in idx} for _ in range(need)]
                vecs = [{k: c for k, c in v.items() if c} for v in vecs]
                C = Subspace.from_sparse(vecs, N)
                if C.dim == need and (C & ge[j]).dim == 0:
                    break
            comps[j] = C
        pair = attempt(comps)
        if pair is not None:
            return OptimalOutcome("Yes", pair, narrative="random graded complement found")
    return OptimalOutcome("Unknown", None, narrative="no complement found by the bounded search")


# --- slices, profiles, pairings ---------------------------------------------

def slice_complement(G: Grading, e: Sequence, pair: AdmissiblePair) -> Subspace:
    A = G.algebra
    N = A.dim
    a = pair.a
    es = to_sparse(e)
    pm, pn = _parts(G, pair.m), _parts(G, pair.n)
    if pm is None or pn is None:
        raise AdmissibleError("pair is not graded")
    vecs = []
    for k in G.degrees:
        mk = pm.get(-k, Subspace.zero(N))
        perp = A.orth(mk, G.piece(k)) if mk.dim else G.piece(k)
        ne = _image(A, es, pn.get(k - a, Subspace.zero(N)))
        vecs.extend(complement_within(ne, perp).sparse_basis())
    s = Subspace.from_sparse(vecs, N)
    ge_img = Subspace.from_sparse(
        [b for j in G.degrees for b in G.ad_e_piece(e, j)[1].sparse_basis()], N)
    gedim = sum(G.ge_piece(e, j).dim for j in G.degrees)
    if s.dim != gedim or (s & ge_img).dim or (s + ge_img).dim != N:
        raise AdmissibleError("internal: slice is not a complement of [g, e]")
    return s


@dataclass(frozen=True)
class DegreeRow:
    degree: Fraction
    dim: int
    dim_ge: int
    injective: bool
    surjective: bool


def ad_e_degree_profile(G: Grading, e: Sequence, a) -> list:
    a = check_degree(G, e, a)
    rows = []
    for j in sorted(set(G.degrees) | {k - a for k in G.degrees}):
        ker, img = G.ad_e_piece(e, j)
        rows.append(DegreeRow(j, len(G.indices(j)), ker.dim, ker.dim == 0,
                              img.dim == len(G.indices(j + a))))
    return rows


def phi_e(A, e: Sequence, x: dict, y: dict) -> Fraction:
    return A.form_sparse(to_sparse(e), A.bracket_sparse(x, y))


@dataclass(frozen=True)
class PhiPairing:
    gram: QMatrix
    rank: int
    V: Subspace
    W: Subspace


def phi_e_pairing(G: Grading, e: Sequence, a, b) -> PhiPairing:
    A = G.algebra
    a, b = as_fraction(a), as_fraction(b)
    V = complement_within(G.ge_piece(e, -b), G.piece(-b))
    W = complement_within(G.ge_piece(e, b - a), G.piece(b - a))
    rows = [[phi_e(A, e, x, y) for y in W.sparse_basis()] for x in V.sparse_basis()]
    r = rank(QMatrix.from_rows(rows, W.dim)) if rows and W.dim else 0
    if V.dim != W.dim or r != V.dim:
        raise AdmissibleError(f"Phi_e pairing is degenerate: rank {r}, dims {V.dim}, {W.dim}")
    gram = QMatrix.from_rows(rows, W.dim) if rows else QMatrix.zeros(0, W.dim)
    return PhiPairing(gram, r, V, W)


def slot_dimension_identity(G: Grading, e: Sequence, pair: AdmissiblePair, b) -> bool:
    """dim(n meet g_{b-a}) + dim(m meet g_{-b}) = dim g_{-b} - dim g^e_{-b} = dim(m meet g_{b-a}) + dim(n meet g_{-b})."""
    a = pair.a
    b = as_fraction(b)
    m, n = pair.m, pair.n
    U = (n & G.piece(b - a)).dim
    Up = (m & G.piece(b - a)).dim
    V = (n & G.piece(-b)).dim
    Vp = (m & G.piece(-b)).dim
    target = len(G.indices(-b)) - G.ge_piece(e, -b).dim
    return U + Vp == target == Up + V


def sum_spaces(N: int, *parts) -> Subspace:
    vecs = []
    for P in parts:
        if isinstance(P, Subspace):
            vecs.extend(P.sparse_basis())
        else:
            vecs.extend(P)
    return Subspace.from_sparse(vecs, N)

