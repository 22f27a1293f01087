"""Deformations h(eps) = (a/2) h + eps t, p-indices, common pairs and Dynkin-connectivity chains."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .admissible import AdmissiblePair, CheckReport, _paired_blocks, check_pair
from .exactlin import Subspace, as_fraction
from .grading import Grading, GradingError, is_admissible_grading
from .sl2 import IsotypicBlock, IsotypicDecomposition, Sl2Triple, decompose, t_element


class ConnectivityError(ValueError):
    pass


def _diag(A, x: Sequence) -> tuple:
    d = A.diagonal_of(x)
    if d is None:
        raise ConnectivityError("deformation needs diagonal h and t")
    return d


def deformed_diagonal(A, h: Sequence, t: Sequence, a, eps) -> tuple:
    a, eps = as_fraction(a), as_fraction(eps)
    return tuple(a / 2 * x + eps * y for x, y in zip(_diag(A, h), _diag(A, t)))


def deform(G: Grading, T: Sl2Triple, a, eps) -> Grading:
    eps = as_fraction(eps)
    if not 0 <= eps <= 1:
        raise ConnectivityError("eps must lie in [0, 1]")
    t = t_element(G, T, a)
    D = Grading(G.algebra, deformed_diagonal(G.algebra, T.h, t, a, eps))
    if not is_admissible_grading(D, T.e, a):
        raise ConnectivityError("internal: deformed grading is not admissible")
    return D


def dec_grading(dec: IsotypicDecomposition, eps) -> Grading:
    return Grading(dec.algebra, deformed_diagonal(dec.algebra, dec.triple.h, dec.t, dec.a, eps))


def rho_eps(block: IsotypicBlock, eps, a) -> Fraction:
    a, eps = as_fraction(a), as_fraction(eps)
    return -a / 2 * (block.d - 1) + eps * block.lam


def p_value(d: int, rho: Fraction, a: Fraction) -> int:
    if rho > 0:
        return 1
    for s in range(d):
        if rho + s * a == 0:
            return 2 * (s + 1)
    if rho + (d - 1) * a < 0:
        return 2 * d + 1
    for s in range(d - 1):
        if rho + s * a < 0 < rho + (s + 1) * a:
            return 2 * (s + 1) + 1
    raise ConnectivityError("internal: p-index undefined")


def p_index(block: IsotypicBlock, eps, a) -> int:
    return p_value(block.d, rho_eps(block, eps, a), as_fraction(a))


def p_index_of(d: int, lam, eps, a) -> int:
    a, eps, lam = as_fraction(a), as_fraction(eps), as_fraction(lam)
    return p_value(d, -a / 2 * (d - 1) + eps * lam, a)


def breakpoints(dec: IsotypicDecomposition, a=None) -> list:
    a = dec.a if a is None else as_fraction(a)
    pts = set()
    for B in dec.blocks:
        if B.lam == 0:
            continue
        for k in range(1, B.d + 1):
            eps = (a / 2 * (B.d - 1) - (k - 1) * a) / B.lam
            if 0 < eps < 1:
                pts.add(eps)
    return sorted(pts)


def epsilon_chain(points: list) -> list:
    """0 = e_0 < e'_0 < e_1 < ... < e_s = 1, with e'_k the midpoints."""
    ends = [Fraction(0)] + list(points) + [Fraction(1)]
    out = [ends[0]]
    for lo, hi in zip(ends, ends[1:]):
        out += [(lo + hi) / 2, hi]
    return out


# --- common pairs -----------------------------------------------------------

def _layers_where(block, rho: Fraction, a: Fraction, test) -> list:
    if block is None:
        return []
    return [v for l in range(block.d) if test(rho + l * a) for v in block.layers[l].sparse_basis()]


def _lt0(w):
    return w < 0


def common_block_choice(B, Bm, eps, eps2, a: Fraction) -> tuple:
    """(m_part, n_part, case) for V = E_lam + E_{-lam} shared by the two deformed gradings."""
    d = B.d
    p, p2 = p_index(B, eps, a), p_index(B, eps2, a)
    if abs(p - p2) > 1:
        raise ConnectivityError(f"p-indices of block {(d, B.lam)} differ by more than 1")
    rho = rho_eps(B, eps, a)
    rho_m = -rho - (d - 1) * a
    le_a = lambda w: w <= -a
    if p == p2:
        if B.lam == 0:
            m = _layers_where(B, rho, a, le_a)
            n = _layers_where(B, rho, a, _lt0)
            return m, n, "I(a)"
        if p % 2 == 0 or p in (1, 2 * d + 1):
            part = _layers_where(B, rho, a, le_a) + _layers_where(Bm, rho_m, a, le_a)
            return part, part, "I(b)"
        k = (p - 1) // 2
        if rho + (k - 1) * a <= rho_m + (d - k - 1) * a:
            part = _layers_where(B, rho, a, _lt0) + _layers_where(Bm, rho_m, a, le_a)
        else:
            part = _layers_where(B, rho, a, le_a) + _layers_where(Bm, rho_m, a, _lt0)
        return part, part, "I(c)"
    k = (p if p % 2 == 0 else p2) // 2
    part = ([v for l in range(0, k - 1) for v in B.layers[l].sparse_basis()]
            + [v for l in range(0, d - k) for v in Bm.layers[l].sparse_basis()])
    return part, part, "II"


def block_conditions(dec: IsotypicDecomposition, G: Grading, B, Bm, m_part: list, n_part: list) -> bool:
    """(C1)-(C4) for the subspace V = E_lam + E_{-lam} and the pieces chosen in it."""
    A = dec.algebra
    N = A.dim
    a = dec.a
    blocks = [B] + ([Bm] if Bm is not None else [])
    P = Subspace.from_sparse([v for X in blocks for L in X.layers for v in L.sparse_basis()], N)
    Pe = Subspace.from_sparse([v for X in blocks for v in X.layers[-1].sparse_basis()], N)
    eP = Subspace.from_sparse([v for X in blocks for L in X.layers[1:] for v in L.sparse_basis()], N)
    m = Subspace.from_sparse(m_part, N)
    n = Subspace.from_sparse(n_part, N)
    low = Subspace.coordinate(G.range_indices("<=", -a), N) & P
    neg = Subspace.coordinate(G.range_indices("<", 0), N) & P
    c1 = m.contains_subspace(low) and n.contains_subspace(m) and neg.contains_subspace(n)
    es = {k: c for k, c in enumerate(dec.triple.e) if c}
    en = Subspace.from_sparse([A.bracket_sparse(es, v) for v in n.sparse_basis()], N)
    c2 = A.orth(m, eP) == en
    c3 = (n & Pe).dim == 0
    c4 = m.dim + n.dim == P.dim - Pe.dim
    return c1 and c2 and c3 and c4


@dataclass(frozen=True)
class Step:
    eps: Fraction
    eps2: Fraction
    grading: Grading
    grading2: Grading
    a: Fraction
    a2: Fraction
    pair: AdmissiblePair
    report: CheckReport
    report2: CheckReport
    kind: str = "deformation"

    @property
    def ok(self) -> bool:
        return self.report.overall and self.report2.overall


def common_pair(dec: IsotypicDecomposition, eps, eps2, a=None) -> Step:
    a = dec.a if a is None else as_fraction(a)
    eps, eps2 = as_fraction(eps), as_fraction(eps2)
    G1, G2 = dec_grading(dec, eps), dec_grading(dec, eps2)
    N = dec.algebra.dim
    mv, nv = [], []
    for B, Bm in _paired_blocks(dec):
        mp, np_, _ = common_block_choice(B, Bm, eps, eps2, a)
        for G in (G1, G2):
            if not block_conditions(dec, G, B, Bm, mp, np_):
                raise ConnectivityError(f"internal: block {(B.d, B.lam)} fails (C1)-(C4)")
        mv += mp
        nv += np_
    m, n = Subspace.from_sparse(mv, N), Subspace.from_sparse(nv, N)
    r1 = check_pair(G1, dec.triple.e, a, m, n)
    r2 = check_pair(G2, dec.triple.e, a, m, n)
    if not (r1.overall and r2.overall):
        raise ConnectivityError(f"internal: common pair fails {r1.failed()} / {r2.failed()}")
    return Step(eps, eps2, G1, G2, a, a, AdmissiblePair(m, n, G1, a), r1, r2)


@dataclass(frozen=True)
class ConnectivityCertificate:
    start: Grading
    e: tuple
    a: Fraction
    h: tuple
    breakpoints: tuple
    epsilon_chain: tuple
    steps: tuple

    @property
    def end(self) -> Grading:
        return self.steps[-1].grading2 if self.steps else self.start


def _dynkin_step(dec: IsotypicDecomposition) -> Step | None:
    """Common pair of (a/2) Dynkin (degree a) and Dynkin (degree 2)."""
    A = dec.algebra
    a = dec.a
    G0 = dec_grading(dec, 0)
    D = Grading(A, _diag(A, dec.triple.h))
    if a == 2:
        return None
    base = common_pair(dec, 0, 0, a).pair
    m, n = base.m, base.n
    r1 = check_pair(G0, dec.triple.e, a, m, n)
    r2 = check_pair(D, dec.triple.e, 2, m, n)
    if not (r1.overall and r2.overall):
        raise ConnectivityError("internal: scaling step fails")
    return Step(Fraction(0), Fraction(0), G0, D, a, Fraction(2), AdmissiblePair(m, n, G0, a),
                r1, r2, "scaling")


def connect_to_dynkin(G: Grading, e: Sequence, a) -> ConnectivityCertificate:
    a = as_fraction(a)
    if not is_admissible_grading(G, e, a):
        raise GradingError("grading is not admissible for e")
    dec = decompose(G, e, a)
    return connect_from_decomposition(G, dec)


def connect_from_decomposition(G: Grading, dec: IsotypicDecomposition) -> ConnectivityCertificate:
    a = dec.a
    pts = breakpoints(dec, a)
    if not any(dec.t):
        chain = [Fraction(0), Fraction(1)]
    else:
        chain = epsilon_chain(pts)
    steps = []
    for hi, lo in zip(reversed(chain), list(reversed(chain))[1:]):
        steps.append(common_pair(dec, hi, lo, a))
    if dec_grading(dec, 1) != G:
        raise ConnectivityError("internal: deformation at eps = 1 is not the input grading")
    last = _dynkin_step(dec)
    if last is not None:
        steps.append(last)
    return ConnectivityCertificate(G, tuple(dec.triple.e), a, tuple(dec.triple.h), tuple(pts),
                                   tuple(chain), tuple(steps))


@dataclass
class VerifyResult:
    ok: bool
    failures: list

    def __bool__(self) -> bool:
        return self.ok


def verify_connectivity(cert: ConnectivityCertificate) -> VerifyResult:
    """Re-run the dual check of every step and the chaining of the gradings."""
    failures = []
    prev = cert.start
    for i, s in enumerate(cert.steps):
        if s.grading != prev:
            failures.append(f"step {i}: does not start where the previous step ended")
        r1 = check_pair(s.grading, cert.e, s.a, s.pair.m, s.pair.n)
        r2 = check_pair(s.grading2, cert.e, s.a2, s.pair.m, s.pair.n)
        if not r1.overall:
            failures.append(f"step {i}: fails {r1.failed()} under the first grading")
        if not r2.overall:
            failures.append(f"step {i}: fails {r2.failed()} under the second grading")
        prev = s.grading2
    A = cert.start.algebra
    dyn = A.diagonal_of(cert.h)
    if dyn is None or prev.diag != tuple(dyn):
        failures.append("chain does not end at the Dynkin grading")
    return VerifyResult(not failures, failures)


def compose(c1: ConnectivityCertificate, c2: ConnectivityCertificate) -> list:
    """Grading path from c1.start to c2.start through their common Dynkin grading."""
    if c1.e != c2.e or c1.end != c2.end:
        raise ConnectivityError("certificates do not share the Dynkin endpoint")
    path = [(s.grading, s.grading2, s.pair) for s in c1.steps]
    path += [(s.grading2, s.grading, s.pair) for s in reversed(c2.steps)]
    return path

