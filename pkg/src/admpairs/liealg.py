"""Classical Lie algebras sl_n, so_n, sp_n realized by n x n rational matrices.

Matrix indices are 0-based internally; labels and text formats are 1-based.
The invariant form is the trace form tr(xy) of the defining representation.
On a simple algebra the Killing form is a fixed multiple of it:
sl_n: 2n, so_n: n - 2, sp_n: n + 2.

For so and sp the defining form is anti-diagonal,
Phi(v_i, v_{n+1-j}) = delta_ij * eps_i, with eps_i = 1 for so and
eps_i = +1 (i <= n/2), -1 (i > n/2) for sp. Diagonal matrices in the
algebra are therefore exactly those with d_i = -d_{n+1-i}.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .exactlin import (ONE, ZERO, QMatrix, Subspace, as_fraction, rank,
                       relations, to_dense, to_sparse)

KILLING_FACTOR = {"SL": lambda n: 2 * n, "SO": lambda n: n - 2, "SP": lambda n: n + 2}


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AlgebraKind:
    family: str
    n: int

    def __post_init__(self):
        if self.family not in ("SL", "SO", "SP"):
            raise AlgebraError(f"unknown family {self.family!r}")
        if not isinstance(self.n, int) or self.n < 2:
            raise AlgebraError(f"bad size {self.n!r}")
        if self.family == "SP" and self.n % 2:
            raise AlgebraError("SP needs an even n")

    def __str__(self) -> str:
        return f"{self.family}({self.n})"

    @classmethod
    def parse(cls, text: str) -> "AlgebraKind":
        m = re.fullmatch(r"\s*(SL|SO|SP)\s*\(\s*(\d+)\s*\)\s*", text.upper())
        if not m:
            raise AlgebraError(f"cannot parse algebra {text!r}")
        return cls(m.group(1), int(m.group(2)))

    @property
    def expected_dim(self) -> int:
        n = self.n
        return {"SL": n * n - 1, "SO": n * (n - 1) // 2, "SP": n * (n + 1) // 2}[self.family]


def _mirror(i: int, n: int) -> int:
    return n - 1 - i


class MatrixLieAlgebra:
    """Matrix realization with a basis of homogeneous elements for diagonal gradings.

    Every basis element has a representative position (i, j): the coordinate of
    a matrix on that element is its (i, j) entry (for sl the diagonal part uses
    the differences H_k = E_kk - E_{k+1,k+1}).
    """

    def __init__(self, kind: AlgebraKind):
        self.kind = kind
        self.n = n = kind.n
        fam = kind.family
        self.eps = tuple(ONE if (fam != "SP" or i < n // 2) else -ONE for i in range(n))
        positions = []
        mats = []
        labels = []
        if fam == "SL":
            for i in range(n):
                for j in range(n):
                    if i != j:
                        positions.append((i, j))
                        mats.append({(i, j): ONE})
                        labels.append(f"E{i + 1},{j + 1}")
            for k in range(n - 1):
                positions.append((k, k))
                mats.append({(k, k): ONE, (k + 1, k + 1): -ONE})
                labels.append(f"H{k + 1}")
        else:
            for i in range(n):
                for j in range(n):
                    s = i + j + 2  # 1-based i + j
                    if s < n + 1:
                        mi, mj = _mirror(j, n), _mirror(i, n)
                        c = -self.eps[i] * self.eps[j]
                        positions.append((i, j))
                        mats.append({(i, j): ONE, (mi, mj): c})
                        labels.append(f"X{i + 1},{j + 1}")
                    elif s == n + 1 and fam == "SP":
                        positions.append((i, j))
                        mats.append({(i, j): ONE})
                        labels.append(f"X{i + 1},{j + 1}")
        self.positions = tuple(positions)
        self.labels = tuple(labels)
        self._mats = tuple(mats)
        self.dim = len(mats)
        if self.dim != kind.expected_dim:
            raise AlgebraError("internal: dimension formula mismatch")
        self._pos_index = {p: k for k, p in enumerate(positions) if p[0] != p[1] or fam != "SL"}
        self._bracket_cache: dict = {}
        self._gram_rows = None

    def __repr__(self) -> str:
        return f"MatrixLieAlgebra({self.kind})"

    def __eq__(self, other) -> bool:
        return isinstance(other, MatrixLieAlgebra) and other.kind == self.kind

    def __hash__(self) -> int:
        return hash(self.kind)

    # --- matrices and coordinates ---

    @property
    def basis(self) -> list:
        return [self.dense_matrix(m) for m in self._mats]

    def dense_matrix(self, sparse: dict) -> tuple:
        n = self.n
        return tuple(tuple(sparse.get((i, j), ZERO) for j in range(n)) for i in range(n))

    def matrix(self, x: Sequence | dict) -> dict:
        """Sparse matrix {(i, j): value} of an element given by coordinates."""
        items = x.items() if isinstance(x, dict) else enumerate(x)
        out: dict = {}
        for k, c in items:
            if not c:
                continue
            for p, v in self._mats[k].items():
                nv = out.get(p, ZERO) + c * v
                if nv:
                    out[p] = nv
                else:
                    out.pop(p, None)
        return out

    def _coords_unchecked(self, M: dict) -> dict:
        out = {}
        if self.kind.family == "SL":
            acc = ZERO
            for k in range(self.n - 1):
                acc += M.get((k, k), ZERO)
                if acc:
                    out[self.dim - (self.n - 1) + k] = acc
            for p, v in M.items():
                if p[0] != p[1] and v:
                    out[self._pos_index[p]] = v
        else:
            for p, v in M.items():
                k = self._pos_index.get(p)
                if k is not None and v:
                    out[k] = v
        return out

    def coords_from_matrix(self, M: dict | Sequence[Sequence]) -> tuple:
        """Coordinates of a matrix; raises if the matrix is not in the algebra."""
        if not isinstance(M, dict):
            M = {(i, j): as_fraction(v) for i, row in enumerate(M) for j, v in enumerate(row) if v}
        M = {p: as_fraction(v) for p, v in M.items() if v}
        for (i, j) in M:
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise AlgebraError(f"matrix index ({i + 1},{j + 1}) out of range")
        c = self._coords_unchecked(M)
        if self.matrix(c) != M:
            raise AlgebraError(f"matrix is not an element of {self.kind}")
        return to_dense(c, self.dim)

    def element_from_entries(self, triples: Iterable) -> tuple:
        """Element from 1-based (row, col, value) matrix entries."""
        M: dict = {}
        for r, c, v in triples:
            p = (int(r) - 1, int(c) - 1)
            M[p] = M.get(p, ZERO) + as_fraction(v)
        return self.coords_from_matrix(M)

    def entries_of(self, x: Sequence) -> list:
        """1-based (row, col, value) triples of an element's matrix, sorted."""
        M = self.matrix(x)
        return [(i + 1, j + 1, v) for (i, j), v in sorted(M.items())]

    def diagonal_element(self, diag: Sequence) -> tuple:
        diag = [as_fraction(d) for d in diag]
        if len(diag) != self.n:
            raise AlgebraError("diagonal has the wrong length")
        return self.coords_from_matrix({(i, i): d for i, d in enumerate(diag) if d})

    def diagonal_of(self, x: Sequence) -> tuple | None:
        M = self.matrix(x)
        if any(i != j for (i, j) in M):
            return None
        return tuple(M.get((i, i), ZERO) for i in range(self.n))

    # --- structure ---

    def _basis_bracket(self, a: int, b: int) -> dict:
        key = (a, b) if a <= b else (b, a)
        res = self._bracket_cache.get(key)
        if res is None:
            res = self._coords_unchecked(_commutator(self._mats[key[0]], self._mats[key[1]]))
            self._bracket_cache[key] = res
        if a <= b:
            return res
        return {k: -v for k, v in res.items()}

    def bracket_sparse(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for a, ca in x.items():
            for b, cb in y.items():
                if a == b:
                    continue
                c = ca * cb
                for k, v in self._basis_bracket(a, b).items():
                    nv = out.get(k, ZERO) + c * v
                    if nv:
                        out[k] = nv
                    else:
                        out.pop(k, None)
        return out

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        return to_dense(self.bracket_sparse(to_sparse(x), to_sparse(y)), self.dim)

    def gram_rows(self) -> list:
        if self._gram_rows is None:
            rows = [dict() for _ in range(self.dim)]
            by_pos: dict = {}
            for k, m in enumerate(self._mats):
                for p in m:
                    by_pos.setdefault(p, []).append(k)
            for a, ma in enumerate(self._mats):
                cands = set()
                for (i, j) in ma:
                    cands.update(by_pos.get((j, i), ()))
                for b in cands:
                    v = _trace_product(ma, self._mats[b])
                    if v:
                        rows[a][b] = v
            self._gram_rows = rows
        return self._gram_rows

    @property
    def form_gram(self) -> QMatrix:
        return QMatrix(self.dim, self.dim, tuple(to_dense(r, self.dim) for r in self.gram_rows()))

    def form_sparse(self, x: dict, y: dict) -> Fraction:
        rows = self.gram_rows()
        s = ZERO
        for a, ca in x.items():
            r = rows[a]
            for b, cb in y.items():
                g = r.get(b)
                if g:
                    s += ca * cb * g
        return s

    def form(self, x: Sequence, y: Sequence) -> Fraction:
        return self.form_sparse(to_sparse(x), to_sparse(y))

    def ad_matrix(self, x: Sequence) -> QMatrix:
        xs = to_sparse(x)
        cols = [self.bracket_sparse(xs, {j: ONE}) for j in range(self.dim)]
        return QMatrix(self.dim, self.dim,
                       tuple(tuple(cols[j].get(i, ZERO) for j in range(self.dim)) for i in range(self.dim)))

    def centralizer(self, x: Sequence) -> Subspace:
        xs = to_sparse(x)
        cols = [self.bracket_sparse(xs, {j: ONE}) for j in range(self.dim)]
        return Subspace.from_sparse(relations(cols), self.dim)

    def bracket_spaces(self, U: Subspace, V: Subspace) -> Subspace:
        vecs = []
        for u in U.sparse_basis():
            for v in V.sparse_basis():
                w = self.bracket_sparse(u, v)
                if w:
                    vecs.append(w)
        return Subspace.from_sparse(vecs, self.dim)

    def ad_image(self, x: Sequence, U: Subspace) -> Subspace:
        xs = to_sparse(x)
        return Subspace.from_sparse([self.bracket_sparse(xs, u) for u in U.sparse_basis()], self.dim)

    def orth(self, U: Subspace, W: Subspace | None = None) -> Subspace:
        from .exactlin import orth_complement
        return orth_complement(U, self.gram_rows(), W if W is not None else Subspace.full(self.dim))

    def is_subalgebra(self, U: Subspace) -> bool:
        return U.contains_subspace(self.bracket_spaces(U, U))

    def jordan_type(self, x: Sequence) -> tuple | None:
        """Partition of a nilpotent matrix (None if not nilpotent)."""
        return jordan_type(self.matrix(x), self.n)


def _commutator(A: dict, B: dict) -> dict:
    out: dict = {}
    brow: dict = {}
    for (k, j), v in B.items():
        brow.setdefault(k, []).append((j, v))
    arow: dict = {}
    for (k, j), v in A.items():
        arow.setdefault(k, []).append((j, v))
    for (i, k), a in A.items():
        for j, b in brow.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + a * b
    for (i, k), b in B.items():
        for j, a in arow.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) - b * a
    return {p: v for p, v in out.items() if v}


def _trace_product(A: dict, B: dict) -> Fraction:
    return sum((v * B.get((j, i), ZERO) for (i, j), v in A.items()), ZERO)


def _matmul(A: dict, B: dict) -> dict:
    brow: dict = {}
    for (k, j), v in B.items():
        brow.setdefault(k, []).append((j, v))
    out: dict = {}
    for (i, k), a in A.items():
        for j, b in brow.get(k, ()):
            out[(i, j)] = out.get((i, j), ZERO) + a * b
    return {p: v for p, v in out.items() if v}


def jordan_type(M: dict, n: int) -> tuple | None:
    ranks = [n]
    P = {(i, i): ONE for i in range(n)}
    while ranks[-1] > 0:
        P = _matmul(P, M)
        rows = [dict() for _ in range(n)]
        for (i, j), v in P.items():
            rows[i][j] = v
        r = rank(QMatrix(n, n, tuple(to_dense(row, n) for row in rows)))
        if r == ranks[-1]:
            return None
        ranks.append(r)
    # number of blocks of size >= k is rank(M^{k-1}) - rank(M^k)
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]
    parts = []
    for k in range(len(ge), 0, -1):
        count = ge[k - 1] - (ge[k] if k < len(ge) else 0)
        parts += [k] * count
    return tuple(parts)


@lru_cache(maxsize=None)
def build_algebra(kind: AlgebraKind | str) -> MatrixLieAlgebra:
    if isinstance(kind, str):
        kind = AlgebraKind.parse(kind)
    return MatrixLieAlgebra(kind)


def invariant_form(A: MatrixLieAlgebra, x: Sequence, y: Sequence) -> Fraction:
    return A.form(x, y)


def bracket(A: MatrixLieAlgebra, x: Sequence, y: Sequence) -> tuple:
    return A.bracket(x, y)


def ad_matrix(A: MatrixLieAlgebra, x: Sequence) -> QMatrix:
    return A.ad_matrix(x)


def centralizer(A: MatrixLieAlgebra, x: Sequence) -> Subspace:
    return A.centralizer(x)


# --- partitions and nilpotent representatives -------------------------------

def check_partition(kind: AlgebraKind, parts: Sequence[int]) -> tuple:
    parts = tuple(int(p) for p in parts)
    if not parts or any(p <= 0 for p in parts):
        raise AlgebraError("partition parts must be positive")
    if list(parts) != sorted(parts, reverse=True):
        raise AlgebraError("partition parts must be weakly decreasing")
    if sum(parts) != kind.n:
        raise AlgebraError(f"partition {parts} does not sum to {kind.n}")
    counts = Counter(parts)
    if kind.family == "SO" and any(s % 2 == 0 and r % 2 for s, r in counts.items()):
        raise AlgebraError(f"SO partition {parts}: even parts need even multiplicity")
    if kind.family == "SP" and any(s % 2 == 1 and r % 2 for s, r in counts.items()):
        raise AlgebraError(f"SP partition {parts}: odd parts need even multiplicity")
    return parts


def partitions(n: int, maxpart: int | None = None):
    if maxpart is None:
        maxpart = n
    if n == 0:
        yield ()
        return
    for p in range(min(n, maxpart), 0, -1):
        for rest in partitions(n - p, p):
            yield (p,) + rest


def valid_partitions(kind: AlgebraKind):
    for p in partitions(kind.n):
        try:
            yield check_partition(kind, p)
        except AlgebraError:
            continue


def _plan_units(kind: AlgebraKind, parts: tuple) -> list:
    """Split the defining space into blocks: self-dual chains, isotropic chain pairs,
    and (so only) pairs of distinct odd chains sharing their zero-weight plane."""
    counts = Counter(parts)
    units = []
    singles = []
    for s in sorted(counts, reverse=True):
        r = counts[s]
        units += [("pair", s)] * (r // 2)
        if r % 2:
            singles.append(s)
    if kind.family == "SP":
        units += [("self", s) for s in singles]
    else:
        if kind.n % 2:
            units.append(("self", singles[0]))
            singles = singles[1:]
        units += [("odd2", singles[i], singles[i + 1]) for i in range(0, len(singles), 2)]
    return units


def _representative(kind: AlgebraKind, parts: tuple) -> tuple:
    """(e as sparse matrix, diagonal Dynkin h) for a partition."""
    n = kind.n
    if kind.family == "SL":
        e = {}
        h = []
        start = 0
        for d in parts:
            for k in range(d - 1):
                e[(start + k, start + k + 1)] = ONE
            h += [Fraction(d - 1 - 2 * k) for k in range(d)]
            start += d
        return e, tuple(h)

    eps = [ONE if (kind.family != "SP" or i < n // 2) else -ONE for i in range(n)]
    # abstract chain vectors: (chain id, k) with e (c, k) = (c, k + 1), weight -(d-1) + 2k
    expr: dict = {}   # abstract vector -> {coordinate: coefficient}
    chains: dict = {}
    left = 0

    def place_pair(x, y, psi):
        # x at the next left slot, y at its mirror, with Psi(x, y) = psi
        nonlocal left
        i = left
        left += 1
        expr[x] = {i: ONE}
        expr[y] = {_mirror(i, n): psi * eps[i]}

    for u, unit in enumerate(_plan_units(kind, parts)):
        if unit[0] == "pair":
            d = unit[1]
            a, b = (u, "a"), (u, "b")
            chains[a] = d
            chains[b] = d
            for k in range(d):
                # Psi(a_j, b_{d-1-j}) = (-1)^j
                j = d - 1 - k
                place_pair((a, j), (b, d - 1 - j), Fraction((-1) ** j))
        elif unit[0] == "self":
            d = unit[1]
            c = (u, "s")
            chains[c] = d
            mid = (d - 1) // 2
            s0 = Fraction((-1) ** mid) if d % 2 else ONE
            for k in range(d // 2):
                j = d - 1 - k
                place_pair((c, j), (c, d - 1 - j), s0 * (-1) ** j)
            if d % 2:
                expr[(c, mid)] = {(n - 1) // 2: ONE}
        else:
            d1, d2 = unit[1], unit[2]
            A, B = (u, "A"), (u, "B")
            chains[A] = d1
            chains[B] = d2
            for C, d, sign in ((A, d1, 1), (B, d2, -1)):
                mid = (d - 1) // 2
                s0 = sign * Fraction((-1) ** mid)
                for k in range(d // 2):
                    j = d - 1 - k
                    place_pair((C, j), (C, d - 1 - j), s0 * (-1) ** j)
            i = left
            left += 1
            p, q = i, _mirror(i, n)
            expr[(A, (d1 - 1) // 2)] = {p: ONE, q: Fraction(1, 2)}
            expr[(B, (d2 - 1) // 2)] = {p: ONE, q: Fraction(-1, 2)}

    vecs = sorted(expr)
    if len(vecs) != n:
        raise AlgebraError("internal: representative construction lost vectors")
    C = [[ZERO] * n for _ in range(n)]
    Eabs = [[ZERO] * n for _ in range(n)]
    pos = {v: col for col, v in enumerate(vecs)}
    for v, col in pos.items():
        for i, c in expr[v].items():
            C[i][col] = c
        ch, k = v
        if k + 1 < chains[ch]:
            Eabs[pos[(ch, k + 1)]][col] = ONE
    Cinv = _inverse(C)
    M = _dense_mul(_dense_mul(C, Eabs), Cinv)
    e = {(i, j): M[i][j] for i in range(n) for j in range(n) if M[i][j]}
    h = [ZERO] * n
    for v, ex in expr.items():
        ch, k = v
        w = Fraction(-(chains[ch] - 1) + 2 * k)
        for i in ex:
            h[i] = w
    return e, tuple(h)


def _dense_mul(A, B):
    n = len(A)
    m = len(B[0])
    return [[sum((A[i][k] * B[k][j] for k in range(len(B)) if A[i][k] and B[k][j]), ZERO)
             for j in range(m)] for i in range(n)]


def _inverse(A):
    n = len(A)
    aug = [list(A[i]) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for c in range(n):
        p = next(r for r in range(c, n) if aug[r][c])
        aug[c], aug[p] = aug[p], aug[c]
        piv = aug[c][c]
        aug[c] = [x / piv for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c]:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def nilpotent_from_partition(A: MatrixLieAlgebra, parts: Sequence[int]) -> tuple:
    parts = check_partition(A.kind, parts)
    e, _ = _representative(A.kind, parts)
    x = A.coords_from_matrix(e)
    if A.jordan_type(x) != parts:
        raise AlgebraError("internal: representative has the wrong Jordan type")
    return x


def dynkin_diagonal(A: MatrixLieAlgebra, parts: Sequence[int]) -> tuple:
    """Diagonal of the Dynkin element h matching nilpotent_from_partition."""
    parts = check_partition(A.kind, parts)
    return _representative(A.kind, parts)[1]


def centralizer_dim_formula(parts: Sequence[int]) -> int:
    """dim of the centralizer in sl_n of a nilpotent with the given Jordan type."""
    return sum(min(a, b) for a in parts for b in parts) - 1
