"""Exact rational linear algebra over Q.

Vectors are tuples of Fractions. Subspaces are stored by their reduced row
echelon basis, so two subspaces are equal exactly when their bases are equal.
Elimination runs on sparse rows internally; the public values are dense.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class LinAlgError(ValueError):
    pass


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise LinAlgError(f"not a rational: {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise LinAlgError(f"not a rational: {x!r}") from exc
    raise LinAlgError(f"not a rational: {x!r}")


def to_sparse(v: Sequence) -> dict:
    return {i: c for i, c in enumerate(v) if c}


def to_dense(d: dict, n: int) -> Vector:
    out = [ZERO] * n
    for i, c in d.items():
        out[i] = c
    return tuple(out)


# --- sparse elimination core ------------------------------------------------

def _echelon(rows: Iterable[dict]) -> dict:
    """Fully reduced echelon form of sparse rows, keyed by pivot column."""
    basis: dict = {}
    for row in rows:
        r = {k: v for k, v in row.items() if v}
        hits = [k for k in r if k in basis]
        for p in hits:
            c = r.get(p)
            if not c:
                continue
            for k, v in basis[p].items():
                nv = r.get(k, ZERO) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        if not r:
            continue
        q = min(r)
        inv = 1 / r[q]
        if inv != 1:
            r = {k: v * inv for k, v in r.items()}
        for b in basis.values():
            c = b.get(q)
            if c:
                for k, v in r.items():
                    nv = b.get(k, ZERO) - c * v
                    if nv:
                        b[k] = nv
                    else:
                        del b[k]
        basis[q] = r
    return basis


def _reduce(v: dict, basis: dict) -> dict:
    r = dict(v)
    for p in [k for k in r if k in basis]:
        c = r.get(p)
        if not c:
            continue
        for k, b in basis[p].items():
            nv = r.get(k, ZERO) - c * b
            if nv:
                r[k] = nv
            else:
                r.pop(k, None)
    return r


def _kernel_from_echelon(basis: dict, ncols: int) -> list:
    pivots = sorted(basis)
    pset = set(pivots)
    out = []
    for f in range(ncols):
        if f in pset:
            continue
        v = {f: ONE}
        for p in pivots:
            c = basis[p].get(f)
            if c:
                v[p] = -c
        out.append(v)
    return out


def relations(vectors: Sequence[dict]) -> list:
    """Coefficient vectors c (sparse) with sum c_i v_i = 0, a kernel basis."""
    rows: dict = {}
    for i, v in enumerate(vectors):
        for t, c in v.items():
            if c:
                rows.setdefault(t, {})[i] = c
    return _kernel_from_echelon(_echelon(rows.values()), len(vectors))


# --- matrices ---------------------------------------------------------------

@dataclass(frozen=True)
class QMatrix:
    nrows: int
    ncols: int
    entries: tuple  # row-major tuple of row tuples

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], ncols: int | None = None) -> "QMatrix":
        rows = [tuple(as_fraction(x) for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise LinAlgError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise LinAlgError("ragged matrix")
        return cls(len(rows), ncols, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "QMatrix":
        return cls(nrows, ncols, tuple((ZERO,) * ncols for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls(n, n, tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def transpose(self) -> "QMatrix":
        return QMatrix(self.ncols, self.nrows,
                       tuple(tuple(self.entries[i][j] for i in range(self.nrows)) for j in range(self.ncols)))

    def apply(self, v: Sequence) -> Vector:
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.entries)

    def sparse_rows(self) -> list:
        return [to_sparse(r) for r in self.entries]

    def is_symmetric(self) -> bool:
        return self.nrows == self.ncols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.nrows) for j in range(i))


def rref(M: QMatrix) -> tuple:
    """Reduced row echelon form and pivot columns; zero rows are appended."""
    basis = _echelon(M.sparse_rows())
    pivots = sorted(basis)
    rows = [to_dense(basis[p], M.ncols) for p in pivots]
    rows += [(ZERO,) * M.ncols] * (M.nrows - len(rows))
    return QMatrix(M.nrows, M.ncols, tuple(rows)), pivots


def rank(M: QMatrix) -> int:
    return len(_echelon(M.sparse_rows()))


def kernel(M: QMatrix) -> "Subspace":
    basis = _echelon(M.sparse_rows())
    return Subspace.from_sparse(_kernel_from_echelon(basis, M.ncols), M.ncols)


def determinant(M: QMatrix) -> Fraction:
    if M.nrows != M.ncols:
        raise LinAlgError("determinant of a non-square matrix")
    a = [list(r) for r in M.entries]
    n = M.nrows
    det = ONE
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c]), None)
        if p is None:
            return ZERO
        if p != c:
            a[c], a[p] = a[p], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            if a[r][c]:
                f = a[r][c] / a[c][c]
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def solve(M: QMatrix, b: Sequence) -> Vector | None:
    """Lexicographically-first particular solution of M x = b (free variables zero)."""
    n = M.ncols
    rows = []
    for r, rhs in zip(M.entries, b):
        d = to_sparse(r)
        if rhs:
            d[n] = as_fraction(rhs)
        rows.append(d)
    basis = _echelon(rows)
    if n in basis:
        return None
    x = [ZERO] * n
    for p, row in basis.items():
        x[p] = row.get(n, ZERO)
    return tuple(x)


# --- subspaces --------------------------------------------------------------

@dataclass(frozen=True)
class Subspace:
    ambient_dim: int
    basis: tuple  # RREF rows, dense
    pivots: tuple = field(compare=False, default=())
    _sparse: tuple = field(compare=False, default=(), repr=False)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"

    @classmethod
    def from_sparse(cls, vectors: Iterable[dict], n: int) -> "Subspace":
        ech = _echelon(vectors)
        piv = tuple(sorted(ech))
        return cls(n, tuple(to_dense(ech[p], n) for p in piv), piv, tuple(ech[p] for p in piv))

    @classmethod
    def span(cls, vectors: Iterable[Sequence], n: int) -> "Subspace":
        vs = []
        for v in vectors:
            if len(v) != n:
                raise LinAlgError("vector length does not match ambient dimension")
            vs.append({i: as_fraction(c) for i, c in enumerate(v) if c})
        return cls.from_sparse(vs, n)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, (), (), ())

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls.coordinate(range(n), n)

    @classmethod
    def coordinate(cls, indices: Iterable[int], n: int) -> "Subspace":
        idx = sorted(set(indices))
        return cls(n, tuple(to_dense({i: ONE}, n) for i in idx), tuple(idx),
                   tuple({i: ONE} for i in idx))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def sparse_basis(self) -> tuple:
        return self._sparse

    def _ech(self) -> dict:
        return dict(zip(self.pivots, self._sparse))

    def contains(self, v: Sequence | dict) -> bool:
        d = v if isinstance(v, dict) else to_sparse(v)
        return not _reduce(d, self._ech())

    def contains_subspace(self, other: "Subspace") -> bool:
        ech = self._ech()
        return all(not _reduce(b, ech) for b in other._sparse)

    def coords_of(self, v: Sequence | dict) -> Vector:
        """Coefficients of v in the echelon basis; v must lie in the subspace."""
        d = v if isinstance(v, dict) else to_sparse(v)
        if _reduce(d, self._ech()):
            raise LinAlgError("vector not in subspace")
        return tuple(d.get(p, ZERO) for p in self.pivots)

    def combine(self, coeffs: dict | Sequence) -> dict:
        items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
        out: dict = {}
        for i, c in items:
            if not c:
                continue
            for k, v in self._sparse[i].items():
                nv = out.get(k, ZERO) + c * v
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def annihilator(self) -> list:
        """Sparse functionals w with w.x = 0 exactly for x in the subspace."""
        return _kernel_from_echelon(self._ech(), self.ambient_dim)

    def __add__(self, other: "Subspace") -> "Subspace":
        return subspace_sum(self, other)

    def __and__(self, other: "Subspace") -> "Subspace":
        return subspace_intersect(self, other)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains_subspace(self)


def _check_same(U: Subspace, V: Subspace) -> None:
    if U.ambient_dim != V.ambient_dim:
        raise LinAlgError("ambient dimension mismatch")


def subspace_sum(*spaces: Subspace) -> Subspace:
    if not spaces:
        raise LinAlgError("empty sum")
    n = spaces[0].ambient_dim
    for S in spaces:
        _check_same(spaces[0], S)
    return Subspace.from_sparse([b for S in spaces for b in S._sparse], n)


def subspace_intersect(U: Subspace, V: Subspace) -> Subspace:
    _check_same(U, V)
    n = U.ambient_dim
    if U.dim == 0 or V.dim == 0:
        return Subspace.zero(n)
    if V.dim == n:
        return U
    if U.dim == n:
        return V
    if U.dim > V.dim:
        U, V = V, U
    funcs = V.annihilator()
    images = []
    for u in U._sparse:
        images.append({f: sum((w.get(k, ZERO) * c for k, c in u.items()), ZERO) for f, w in enumerate(funcs)})
    rel = relations([{f: c for f, c in im.items() if c} for im in images])
    return Subspace.from_sparse([U.combine(c) for c in rel], n)


def complement_within(U: Subspace, W: Subspace) -> Subspace:
    """C with U + C = W and U meet C = 0, completing U by W's echelon vectors in order."""
    _check_same(U, W)
    if not W.contains_subspace(U):
        raise LinAlgError("complement_within requires U inside W")
    ech = U._ech()
    ech = {p: dict(r) for p, r in ech.items()}
    picked = []
    for w in W._sparse:
        r = _reduce(w, ech)
        if r:
            picked.append(w)
            ech = _echelon(list(ech.values()) + [w])
    return Subspace.from_sparse(picked, U.ambient_dim)


def _bilinear_rows(U: Subspace, B) -> list:
    if isinstance(B, QMatrix):
        rows = B.sparse_rows()
    else:
        rows = B
    out = []
    for u in U._sparse:
        acc: dict = {}
        for i, c in u.items():
            for j, g in rows[i].items():
                nv = acc.get(j, ZERO) + c * g
                if nv:
                    acc[j] = nv
                else:
                    acc.pop(j, None)
        out.append(acc)
    return out


def orth_complement(U: Subspace, B, W: Subspace) -> Subspace:
    """{w in W : B(u, w) = 0 for all u in U}; B is a QMatrix or sparse Gram rows."""
    _check_same(U, W)
    n = U.ambient_dim
    if isinstance(B, QMatrix) and (B.nrows != n or B.ncols != n):
        raise LinAlgError("form dimension mismatch")
    if U.dim == 0:
        return W
    funcs = _bilinear_rows(U, B)
    images = []
    for w in W._sparse:
        im = {}
        for f, row in enumerate(funcs):
            s = sum((row.get(k, ZERO) * c for k, c in w.items()), ZERO)
            if s:
                im[f] = s
        images.append(im)
    rel = relations(images)
    return Subspace.from_sparse([W.combine(c) for c in rel], n)
