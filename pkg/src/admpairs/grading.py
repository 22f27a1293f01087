"""Rational gradings of a matrix Lie algebra given by diagonal defining elements."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .exactlin import LinAlgError, Subspace, as_fraction, relations, to_sparse
from .liealg import AlgebraError, MatrixLieAlgebra

_OPS = {
    "<=": lambda j, k: j <= k,
    "<": lambda j, k: j < k,
    ">=": lambda j, k: j >= k,
    ">": lambda j, k: j > k,
    "==": lambda j, k: j == k,
}


class GradingError(ValueError):
    pass


class Grading:
    """g = sum of g_j, with g_j the ad(h)-eigenspace of eigenvalue j for a diagonal h."""

    def __init__(self, A: MatrixLieAlgebra, diag: Sequence):
        try:
            diag = tuple(as_fraction(d) for d in diag)
        except (TypeError, ValueError) as exc:
            raise GradingError(f"non-rational diagonal entry: {exc}") from None
        if len(diag) != A.n:
            raise GradingError(f"diagonal has length {len(diag)}, expected {A.n}")
        try:
            self.element = A.diagonal_element(diag)
        except AlgebraError as exc:
            raise GradingError(f"diagonal does not define an element of {A.kind}: {exc}") from None
        self.algebra = A
        self.diag = diag
        self.degree_of = tuple(diag[i] - diag[j] for (i, j) in A.positions)
        by_deg: dict = {}
        for k, d in enumerate(self.degree_of):
            by_deg.setdefault(d, []).append(k)
        self._indices = by_deg
        self.degrees = tuple(sorted(by_deg))
        self._pieces: dict = {}
        self._ge: dict = {}

    def __repr__(self) -> str:
        return f"Grading({self.algebra.kind}, {[str(d) for d in self.diag]})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Grading) and other.algebra == self.algebra
                and other.diag == self.diag)

    def __hash__(self) -> int:
        return hash((self.algebra.kind, self.diag))

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def indices(self, j) -> list:
        return self._indices.get(as_fraction(j), [])

    def piece(self, j) -> Subspace:
        j = as_fraction(j)
        S = self._pieces.get(j)
        if S is None:
            S = Subspace.coordinate(self._indices.get(j, ()), self.dim)
            self._pieces[j] = S
        return S

    @property
    def pieces(self) -> dict:
        return {j: self.piece(j) for j in self.degrees}

    def range_indices(self, op: str, k) -> list:
        if op not in _OPS:
            raise GradingError(f"unknown comparison {op!r}")
        k = as_fraction(k)
        test = _OPS[op]
        return sorted(i for j, idx in self._indices.items() if test(j, k) for i in idx)

    def degree_matrix(self) -> tuple:
        n = self.algebra.n
        return tuple(tuple(self.diag[i] - self.diag[j] for j in range(n)) for i in range(n))

    def is_integral(self) -> bool:
        return all(d.denominator == 1 for d in self.degrees)

    def homogeneous_degree(self, x: Sequence | dict):
        """Degree of x if x is a nonzero homogeneous element, else None."""
        xs = x if isinstance(x, dict) else to_sparse(x)
        degs = {self.degree_of[k] for k in xs}
        return degs.pop() if len(degs) == 1 else None

    def components(self, x: dict) -> dict:
        out: dict = {}
        for k, c in x.items():
            out.setdefault(self.degree_of[k], {})[k] = c
        return out

    # --- centralizer of e, computed degree by degree ---

    def ad_e_piece(self, e: Sequence, j) -> tuple:
        """(kernel, image) of ad e restricted to g_j."""
        j = as_fraction(j)
        key = (tuple(e), j)
        res = self._ge.get(key)
        if res is None:
            A = self.algebra
            es = to_sparse(e)
            idx = self._indices.get(j, [])
            cols = [A.bracket_sparse(es, {k: Fraction(1)}) for k in idx]
            ker = Subspace.from_sparse(
                [{idx[i]: c for i, c in r.items()} for r in relations(cols)], self.dim)
            img = Subspace.from_sparse(cols, self.dim)
            res = (ker, img)
            self._ge[key] = res
        return res

    def ge_piece(self, e: Sequence, j) -> Subspace:
        return self.ad_e_piece(e, j)[0]

    def ge_range(self, e: Sequence, op: str, k) -> Subspace:
        k = as_fraction(k)
        parts = [self.ge_piece(e, j) for j in self.degrees if _OPS[op](j, k)]
        return Subspace.from_sparse([b for P in parts for b in P.sparse_basis()], self.dim)


def grading_from_diagonal(A: MatrixLieAlgebra, diag: Sequence) -> Grading:
    return Grading(A, diag)


def piece_range(G: Grading, op: str, k) -> Subspace:
    return Subspace.coordinate(G.range_indices(op, k), G.dim)


def is_graded(G: Grading, U: Subspace) -> tuple:
    """(True, {degree: U meet g_j}) if U is graded, else (False, None)."""
    if U.ambient_dim != G.dim:
        raise LinAlgError("ambient dimension mismatch")
    comps: dict = {}
    for b in U.sparse_basis():
        for j, c in G.components(b).items():
            if not U.contains(c):
                return False, None
            comps.setdefault(j, []).append(c)
    return True, {j: Subspace.from_sparse(v, G.dim) for j, v in sorted(comps.items())}


def check_degree(G: Grading, e: Sequence, a) -> Fraction:
    a = as_fraction(a)
    d = G.homogeneous_degree(e)
    if d is None or d != a:
        raise GradingError(f"e is not homogeneous of degree {a}")
    return a


def is_admissible_grading(G: Grading, e: Sequence, a) -> bool:
    a = check_degree(G, e, a)
    if a <= 1:
        raise GradingError("the degree a of e must exceed 1")
    return all(G.ge_piece(e, j).dim == 0 for j in G.degrees if j <= -a)


def is_good_grading(G: Grading, e: Sequence, a) -> bool:
    """e in g_a with a = 2d; ad e injective on g_j for j <= -d, surjective for j >= -d."""
    a = check_degree(G, e, a)
    d = a / 2
    for j in sorted(set(G.degrees) | {k - a for k in G.degrees}):
        ker, img = G.ad_e_piece(e, j)
        if j <= -d and ker.dim:
            return False
        if j >= -d and img.dim != len(G.indices(j + a)):
            return False
    return True


def is_b_optimal(G: Grading, e: Sequence, b) -> bool:
    b = as_fraction(b)
    if b <= 0:
        raise GradingError("b must be positive")
    a = G.homogeneous_degree(e)
    if a is None:
        raise GradingError("e is not homogeneous")
    if a.denominator != 1 or a < 2 or a < 2 * b:
        return False
    return all(G.ge_piece(e, j).dim == 0 for j in G.degrees if j < -b)


def is_dynkin_grading(G: Grading, e: Sequence) -> bool:
    """e in g_2 and the defining element lies in [e, g], so it is the h of a triple through e."""
    if G.homogeneous_degree(e) != 2:
        return False
    img = Subspace.from_sparse([b for j in G.degrees for b in G.ad_e_piece(e, j)[1].sparse_basis()],
                               G.dim)
    return img.contains(to_sparse(G.element))


def scale_grading(G: Grading, k) -> Grading:
    k = as_fraction(k)
    if k <= 0:
        raise GradingError("scale factor must be positive")
    return Grading(G.algebra, [k * d for d in G.diag])


def dynkin_grading(A: MatrixLieAlgebra, h_diag: Sequence) -> Grading:
    return Grading(A, h_diag)

