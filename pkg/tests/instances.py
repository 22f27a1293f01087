"""Seeded random gradings (a/2) h + t for partition nilpotents, t diagonal and commuting with e."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from admpairs.exactlin import ONE, Subspace, relations
from admpairs.grading import Grading, is_admissible_grading
from admpairs.liealg import (AlgebraKind, build_algebra, dynkin_diagonal, nilpotent_from_partition,
                             valid_partitions)


@dataclass(frozen=True)
class Instance:
    kind: str
    partition: tuple
    a: Fraction
    diag: tuple
    admissible: bool

    def build(self):
        A = build_algebra(self.kind)
        e = nilpotent_from_partition(A, self.partition)
        return A, e, Grading(A, self.diag)


def diagonal_centralizer(A, e) -> list:
    """Basis of diagonal elements commuting with e, as diagonals."""
    es = {k: c for k, c in enumerate(e) if c}
    diag_idx = [k for k, (i, j) in enumerate(A.positions) if i == j]
    cols = [A.bracket_sparse(es, {k: ONE}) for k in diag_idx]
    out = []
    for r in relations(cols):
        x = [Fraction(0)] * A.dim
        for i, c in r.items():
            x[diag_idx[i]] = c
        out.append(A.diagonal_of(x))
    return out


def random_instances(count: int, kinds, seed: int = 0, admissible_only: bool = True,
                     degrees=(2, 3, 4)) -> list:
    rng = random.Random(seed)
    pool = [(k, p) for k in kinds for p in valid_partitions(AlgebraKind.parse(k)) if len(p) > 1]
    out = []
    tries = 0
    while len(out) < count and tries < 50 * count:
        tries += 1
        kind, parts = rng.choice(pool)
        A = build_algebra(kind)
        e = nilpotent_from_partition(A, parts)
        h = dynkin_diagonal(A, parts)
        a = Fraction(rng.choice(degrees))
        basis = diagonal_centralizer(A, e)
        den = rng.choice((1, 2, 3))
        t = [Fraction(0)] * A.n
        for b in basis:
            c = Fraction(rng.randint(-3, 3), den)
            t = [x + c * y for x, y in zip(t, b)]
        diag = tuple(a / 2 * x + y for x, y in zip(h, t))
        G = Grading(A, diag)
        if G.homogeneous_degree(e) != a:
            continue
        adm = is_admissible_grading(G, e, a)
        if admissible_only and not adm:
            continue
        inst = Instance(kind, tuple(parts), a, diag, adm)
        if inst not in out:
            out.append(inst)
    return out


SMALL_KINDS = ("SL(3)", "SL(4)", "SL(5)", "SL(6)", "SO(5)", "SO(6)", "SO(7)", "SP(4)", "SP(6)")
WIDE_KINDS = SMALL_KINDS + ("SL(7)", "SL(8)", "SO(8)", "SP(8)")


def random_complement(G, e, j, rng):
    """A random complement of g^e_j in g_j with small integer coordinates."""
    ge, idx = G.ge_piece(e, j), G.indices(j)
    need = len(idx) - ge.dim
    while True:
        vecs = [{k: Fraction(rng.randint(-3, 3)) for k in idx} for _ in range(need)]
        W = Subspace.from_sparse([{k: c for k, c in v.items() if c} for v in vecs], G.dim)
        if W.dim == need and (W & ge).dim == 0:
            return W


# acceptance criterion number -> (passed, note); printed by the terminal summary hook
ACCEPTANCE: dict = {}
