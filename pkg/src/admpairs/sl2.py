"""Adapted sl2-triples, the element t = h_G - (a/2) h and the joint isotypic decomposition.

Blocks are built from lowest-weight vectors: ker(ad f) inside a joint
eigenspace of (ad h_G, ad h), then layer l is (ad e)^l of the lowest layer.
A block is keyed by (d, lam) with d the dimension of the simple sl2-module and
lam the ad t eigenvalue; its lowest h_G-weight is rho = -(a/2)(d-1) + lam.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactlin import (ONE, ZERO, QMatrix, Subspace, as_fraction, relations, solve,
                       to_dense, to_sparse)
from .grading import Grading, GradingError, check_degree, is_admissible_grading
from .liealg import MatrixLieAlgebra


class Sl2Error(ValueError):
    pass


@dataclass(frozen=True)
class Sl2Triple:
    e: tuple
    h: tuple
    f: tuple

    def check(self, A: MatrixLieAlgebra) -> bool:
        two = Fraction(2)
        return (A.bracket(self.h, self.e) == tuple(two * c for c in self.e)
                and A.bracket(self.e, self.f) == tuple(self.h)
                and A.bracket(self.h, self.f) == tuple(-two * c for c in self.f))


def _solve_sparse(columns: list, target: dict, extra_rows: list = ()) -> tuple | None:
    """Lexicographically-first c with sum c_k columns[k] = target and extra_rows . c = 0."""
    keys = sorted(set(target) | {r for col in columns for r in col})
    rows = [[col.get(r, ZERO) for col in columns] for r in keys]
    rhs = [target.get(r, ZERO) for r in keys]
    for er in extra_rows:
        rows.append(list(er))
        rhs.append(ZERO)
    if not rows:
        return tuple(ZERO for _ in columns)
    return solve(QMatrix.from_rows(rows, len(columns)), rhs)


def adapted_triple(G: Grading, e: Sequence, a) -> Sl2Triple:
    """(e, h, f) with h in g_0 and f in g_{-a}.

    h is sought first among diagonal matrices of g_0 orthogonal to g^e_0 (the
    space g_0 meet (g^e_0)-perp equals [e, g_{-a}] for admissible gradings), and
    only then in all of g_0 meet (g^e_0)-perp. f is the solution of [e, f] = h in
    g_{-a}, unique because ad e is injective there.
    """
    A = G.algebra
    a = check_degree(G, e, a)
    if not is_admissible_grading(G, e, a):
        raise Sl2Error("grading is not admissible for e")
    es = to_sparse(e)
    target = {k: 2 * c for k, c in es.items()}
    ge0 = G.ge_piece(e, 0).sparse_basis()
    g0 = G.indices(0)
    diag_idx = [k for k in g0 if A.positions[k][0] == A.positions[k][1]]
    h = None
    for cand in (diag_idx, None):
        if cand is None:
            space = A.orth(Subspace.from_sparse(ge0, A.dim), G.piece(0)).sparse_basis()
        else:
            space = [{k: ONE} for k in cand]
        cols = [A.bracket_sparse(v, es) for v in space]
        orth_rows = [[A.form_sparse(v, z) for v in space] for z in ge0]
        c = _solve_sparse(cols, target, orth_rows)
        if c is not None:
            hs: dict = {}
            for ck, v in zip(c, space):
                for k, x in v.items():
                    hs[k] = hs.get(k, ZERO) + ck * x
            h = {k: x for k, x in hs.items() if x}
            break
    if h is None:
        raise Sl2Error("no h in g_0 with [h, e] = 2e")
    neg = G.indices(-a)
    cols = [A.bracket_sparse(es, {k: ONE}) for k in neg]
    c = _solve_sparse(cols, h)
    if c is None:
        raise Sl2Error("no f in g_{-a} with [e, f] = h")
    f = {k: ck for k, ck in zip(neg, c) if ck}
    T = Sl2Triple(tuple(e), to_dense(h, A.dim), to_dense(f, A.dim))
    if not T.check(A):
        raise Sl2Error("internal: triple relations fail")
    return T


def t_element(G: Grading, T: Sl2Triple, a) -> tuple:
    A = G.algebra
    a = as_fraction(a)
    t = tuple(x - a / 2 * y for x, y in zip(G.element, T.h))
    if any(A.bracket(t, T.e)) or any(A.bracket(t, T.h)):
        raise Sl2Error("t does not centralize e and h")
    return t


@dataclass(frozen=True)
class IsotypicBlock:
    d: int
    lam: Fraction
    rho: Fraction
    layers: tuple            # Subspaces, layer l has h_G weight rho + l a
    multiplicity: int
    lowest: tuple = field(default=(), repr=False, compare=False)  # sparse lowest vectors

    @property
    def key(self) -> tuple:
        return (self.d, self.lam)

    def layer_vectors(self, l: int) -> tuple:
        return self.layers[l].sparse_basis()


@dataclass(frozen=True)
class IsotypicDecomposition:
    algebra: MatrixLieAlgebra
    triple: Sl2Triple
    t: tuple
    a: Fraction
    blocks: tuple

    def block(self, d: int, lam) -> IsotypicBlock | None:
        lam = as_fraction(lam)
        for B in self.blocks:
            if B.d == d and B.lam == lam:
                return B
        return None

    def keys(self) -> list:
        return [B.key for B in self.blocks]

    def centralizer_dim(self) -> int:
        return sum(B.multiplicity for B in self.blocks)


def _weight_spaces(A: MatrixLieAlgebra, hs: dict, indices: list) -> dict:
    """ad h eigenspaces inside the span of the given basis indices (all eigenvalues integral)."""
    cols = [A.bracket_sparse(hs, {k: ONE}) for k in indices]
    diagonal = all(set(c) <= {k} for c, k in zip(cols, indices))
    out: dict = {}
    if diagonal:
        for c, k in zip(cols, indices):
            out.setdefault(c.get(k, ZERO), []).append({k: ONE})
        return {w: Subspace.from_sparse(v, A.dim) for w, v in out.items()}
    bound = 2 * A.n
    found = 0
    for w in range(-bound, bound + 1):
        shifted = []
        for c, k in zip(cols, indices):
            s = dict(c)
            s[k] = s.get(k, ZERO) - w
            shifted.append({i: x for i, x in s.items() if x})
        rel = relations(shifted)
        if rel:
            out[Fraction(w)] = Subspace.from_sparse(
                [{indices[i]: x for i, x in r.items()} for r in rel], A.dim)
            found += len(rel)
    if found != len(indices):
        raise Sl2Error("ad h is not diagonalizable with integral eigenvalues")
    return out


def isotypic_decompose(A: MatrixLieAlgebra, T: Sl2Triple, t: Sequence, a) -> IsotypicDecomposition:
    a = as_fraction(a)
    hs = to_sparse(T.h)
    es = to_sparse(T.e)
    fs = to_sparse(T.f)
    hG = [x + a / 2 * y for x, y in zip(t, T.h)]
    diag = A.diagonal_of(hG)
    if diag is None:
        raise Sl2Error("h_G = t + (a/2) h must be diagonal")
    G = Grading(A, diag)
    groups: dict = {}
    for j in G.degrees:
        for w, W in _weight_spaces(A, hs, G.indices(j)).items():
            if w > 0:
                continue
            vecs = W.sparse_basis()
            cols = [A.bracket_sparse(fs, v) for v in vecs]
            low = [W.combine(r) for r in relations(cols)]
            if not low:
                continue
            d = int(1 - w)
            lam = j - a / 2 * w
            if lam.denominator > 10 ** 6:
                raise Sl2Error("t eigenvalue is not a small rational")
            groups.setdefault((d, lam), []).extend(low)
    blocks = []
    for (d, lam), low in sorted(groups.items(), key=lambda kv: (-kv[0][0], kv[0][1])):
        layers = []
        cur = low
        for l in range(d):
            layers.append(Subspace.from_sparse(cur, A.dim))
            cur = [A.bracket_sparse(es, v) for v in cur]
        if any(cur):
            raise Sl2Error("internal: ad e^d does not vanish on a block")
        m = layers[0].dim
        if any(L.dim != m for L in layers):
            raise Sl2Error("internal: block layers have unequal dimension")
        rho = -a / 2 * (d - 1) + lam
        blocks.append(IsotypicBlock(d, lam, rho, tuple(layers), m, tuple(low)))
    total = sum(B.d * B.multiplicity for B in blocks)
    if total != A.dim:
        raise Sl2Error(f"layers span dimension {total}, expected {A.dim}")
    allvecs = [v for B in blocks for L in B.layers for v in L.sparse_basis()]
    if Subspace.from_sparse(allvecs, A.dim).dim != A.dim:
        raise Sl2Error("layers do not direct-sum to g")
    return IsotypicDecomposition(A, T, tuple(t), a, tuple(blocks))


def decompose(G: Grading, e: Sequence, a) -> IsotypicDecomposition:
    """Adapted triple, t and isotypic decomposition in one call."""
    T = adapted_triple(G, e, a)
    t = t_element(G, T, a)
    return isotypic_decompose(G.algebra, T, t, a)


@dataclass
class CouplingReport:
    ok: bool
    failures: list

    def __bool__(self) -> bool:
        return self.ok


def verify_coupling(dec: IsotypicDecomposition) -> CouplingReport:
    """Schur orthogonality between blocks and the layer coupling inside (d, lam) x (d, -lam)."""
    A = dec.algebra
    failures = []
    for i, B in enumerate(dec.blocks):
        for C in dec.blocks[i:]:
            paired = B.d == C.d and B.lam + C.lam == 0
            for l, L in enumerate(B.layers):
                for l2, L2 in enumerate(C.layers):
                    gram = [[A.form_sparse(x, y) for y in L2.sparse_basis()] for x in L.sparse_basis()]
                    nonzero = any(any(row) for row in gram)
                    if paired and l + l2 == B.d - 1:
                        r = _rank(gram)
                        if r != B.multiplicity:
                            failures.append(f"layers {B.key}^{l} x {C.key}^{l2} not in perfect pairing")
                    elif nonzero:
                        failures.append(f"layers {B.key}^{l} x {C.key}^{l2} not orthogonal")
    return CouplingReport(not failures, failures)


def _rank(rows: list) -> int:
    from .exactlin import rank
    if not rows or not rows[0]:
        return 0
    return rank(QMatrix.from_rows(rows))


def block_bounds_hold(dec: IsotypicDecomposition) -> bool:
    """-(a/2)(d+1) < lam < (a/2)(d+1) for every block."""
    a = dec.a
    return all(-a / 2 * (B.d + 1) < B.lam < a / 2 * (B.d + 1) for B in dec.blocks)


__all__ = [
    "Sl2Error", "Sl2Triple", "adapted_triple", "t_element", "IsotypicBlock",
    "IsotypicDecomposition", "isotypic_decompose", "decompose", "verify_coupling",
    "CouplingReport", "block_bounds_hold", "GradingError",
]
