"""Command-line entry point: problem files in, text reports and JSON certificates out.

Exit codes: 0 pass, 1 verdict failure, 2 input error, 3 internal verification failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

import tomli

from .admissible import (CONDITIONS, AdmissibleError, AdmissiblePair, ad_e_degree_profile,
                         check_pair, construct_pair, construction_cases, optimal_pair)
from .connectivity import (ConnectivityCertificate, ConnectivityError, Step, connect_to_dynkin,
                           verify_connectivity)
from .equivalence import (ComparabilityWitness, EquivalenceChain, EquivalenceError,
                          b_optimal_chain, comparable, middle_degrees, rank_classifier,
                          two_level_chain, verify_chain)
from .exactlin import LinAlgError, Subspace, as_fraction, to_dense, to_sparse
from .grading import (Grading, GradingError, is_admissible_grading, is_b_optimal, is_dynkin_grading,
                      is_good_grading, piece_range)
from .liealg import (AlgebraError, AlgebraKind, build_algebra, dynkin_diagonal, jordan_type,
                     nilpotent_from_partition)
from .sl2 import Sl2Error, decompose

FORMAT = "admpairs-certificate"
VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3

INPUT_ERRORS = (AlgebraError, GradingError, LinAlgError, tomli.TOMLDecodeError, KeyError,
                TypeError, ValueError)


class SpecError(ValueError):
    pass


class InternalError(RuntimeError):
    pass


def fstr(x: Fraction) -> str:
    x = as_fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# --- problem files -----------------------------------------------------------

@dataclass
class ProblemSpec:
    algebra: object
    e: tuple
    grading: Grading
    a: Fraction
    partition: tuple | None = None
    pair: AdmissiblePair | None = None
    b: Fraction | None = None
    provenance: str = ""
    chain: list = field(default_factory=list)
    links: list = field(default_factory=list)


_RANGE = re.compile(r"^g\s*(<=|<|>=|>|==|_)\s*(-?\d+(?:/\d+)?)$")


def _rational(x, what: str) -> Fraction:
    if isinstance(x, float):
        raise SpecError(f"{what}: write rationals as \"p/q\" strings, not floats")
    try:
        return as_fraction(x)
    except LinAlgError as exc:
        raise SpecError(f"{what}: {exc}") from None


def _diag(raw, what: str) -> list:
    if not isinstance(raw, list):
        raise SpecError(f"{what} must be a list of rationals")
    return [_rational(x, what) for x in raw]


def _vector(A, raw, what: str) -> dict:
    try:
        triples = [(int(r), int(c), _rational(v, what)) for r, c, v in raw]
        return to_sparse(A.element_from_entries(triples))
    except (AlgebraError, ValueError, TypeError) as exc:
        raise SpecError(f"{what}: {exc}") from None


def _space(A, G: Grading, items, what: str) -> Subspace:
    if not isinstance(items, list):
        raise SpecError(f"{what} must be a list")
    vecs = []
    for it in items:
        if isinstance(it, str):
            m = _RANGE.match(it.strip())
            if not m:
                raise SpecError(f"{what}: cannot parse range {it!r}")
            op = "==" if m.group(1) == "_" else m.group(1)
            vecs.extend(piece_range(G, op, Fraction(m.group(2))).sparse_basis())
        elif isinstance(it, list):
            vecs.append(_vector(A, it, what))
        else:
            raise SpecError(f"{what}: items are range strings or lists of [row, col, value]")
    return Subspace.from_sparse(vecs, A.dim)


def parse_spec(data: dict) -> ProblemSpec:
    if "algebra" not in data:
        raise SpecError("missing key 'algebra'")
    A = build_algebra(AlgebraKind.parse(str(data["algebra"])))
    parts = None
    if "partition" in data:
        parts = tuple(int(p) for p in data["partition"])
        e = nilpotent_from_partition(A, parts)
    elif "nilpotent" in data:
        e = A.element_from_entries([(r, c, _rational(v, "nilpotent")) for r, c, v in data["nilpotent"]])
        parts = jordan_type(A.matrix(e), A.n)
        if parts is None:
            raise SpecError("the given element is not nilpotent")
    else:
        raise SpecError("give either 'partition' or 'nilpotent'")
    if not any(e):
        raise SpecError("the nilpotent element is zero")
    if "grading" in data:
        G = Grading(A, _diag(data["grading"], "grading"))
    elif "partition" in data:
        G = Grading(A, dynkin_diagonal(A, parts))
    else:
        raise SpecError("an explicit nilpotent needs an explicit 'grading'")
    deg = G.homogeneous_degree(e)
    if deg is None:
        raise SpecError("e is not homogeneous for the grading")
    a = _rational(data["a"], "a") if "a" in data else deg
    if a != deg:
        raise SpecError(f"e has degree {fstr(deg)}, not a = {fstr(a)}")
    spec = ProblemSpec(A, tuple(e), G, a, parts, provenance=str(data.get("provenance", "")))
    if "b" in data:
        spec.b = _rational(data["b"], "b")
    if "pair" in data:
        p = data["pair"]
        m = _space(A, G, p.get("m", []), "pair.m")
        n = _space(A, G, p.get("n", []), "pair.n")
        spec.pair = AdmissiblePair(m, n, G, a)
    chain = data.get("chain", {})
    for i, p in enumerate(chain.get("pair", [])):
        Gp = Grading(A, _diag(p["grading"], "chain grading")) if "grading" in p else G
        ap = Gp.homogeneous_degree(e)
        if ap is None:
            raise SpecError(f"chain pair {i}: e is not homogeneous")
        spec.chain.append(AdmissiblePair(_space(A, Gp, p.get("m", []), f"chain pair {i} m"),
                                         _space(A, Gp, p.get("n", []), f"chain pair {i} n"), Gp, ap))
    for i, l in enumerate(chain.get("link", [])):
        spec.links.append(Grading(A, _diag(l["grading"], "link grading")) if "grading" in l else G)
    if spec.chain and len(spec.links) not in (0, len(spec.chain) - 1):
        raise SpecError("chain needs one link per consecutive pair")
    return spec


def load_spec(path: str) -> ProblemSpec:
    with open(path, "rb") as fh:
        data = tomli.load(fh)
    return parse_spec(data)


# --- serialization -----------------------------------------------------------

def enc_vector(A, v: dict) -> list:
    return [[r, c, fstr(x)] for r, c, x in A.entries_of(to_dense(v, A.dim))]


def enc_space(A, U: Subspace) -> list:
    return [enc_vector(A, v) for v in U.sparse_basis()]


def dec_space(A, raw) -> Subspace:
    return Subspace.from_sparse([_vector(A, v, "certificate") for v in raw], A.dim)


def enc_diag(G: Grading) -> list:
    return [fstr(x) for x in G.diag]


def enc_pair(A, p: AdmissiblePair, verdicts: dict) -> dict:
    return {"grading": enc_diag(p.grading), "a": fstr(p.a), "m": enc_space(A, p.m),
            "n": enc_space(A, p.n), "verdicts": dict(verdicts)}


def dec_pair(A, raw) -> AdmissiblePair:
    G = Grading(A, _diag(raw["grading"], "grading"))
    return AdmissiblePair(dec_space(A, raw["m"]), dec_space(A, raw["n"]), G,
                          _rational(raw["a"], "a"))


def header(kind: str, A, e, provenance: str = "") -> dict:
    return {"format": FORMAT, "version": VERSION, "type": kind, "algebra": str(A.kind),
            "e": enc_vector(A, to_sparse(e)), "provenance": provenance}


def dump(doc: dict) -> str:
    return json.dumps(doc, indent=1, sort_keys=True) + "\n"


# --- reports -----------------------------------------------------------------

class Report:
    def __init__(self):
        self.lines: list = []

    def add(self, text: str = "") -> None:
        self.lines.append(text)

    def text(self) -> str:
        return "\n".join(self.lines) + "\n"


def _report_head(r: Report, cmd: str, spec: ProblemSpec) -> None:
    A = spec.algebra
    r.add(f"admpairs {cmd}")
    if spec.provenance:
        r.add(f"provenance: {spec.provenance}")
    r.add(f"algebra: {A.kind} (dim {A.dim})")
    if spec.partition:
        r.add(f"partition: {tuple(spec.partition)}")
    r.add("e: " + " + ".join(f"{fstr(v)}*E{i},{j}" for i, j, v in A.entries_of(spec.e)))
    r.add("grading: diag(" + ", ".join(fstr(x) for x in spec.grading.diag) + f"), a = {fstr(spec.a)}")


def _report_degrees(r: Report, G: Grading, e, a) -> None:
    r.add("degree  dim  dim g^e  ad e injective  ad e surjective")
    for row in ad_e_degree_profile(G, e, a):
        if row.dim == 0:
            continue
        r.add(f"{fstr(row.degree):>6}  {row.dim:>3}  {row.dim_ge:>7}  {'yes' if row.injective else 'no':>14}"
              f"  {'yes' if row.surjective else 'no':>15}")


def _report_pair(r: Report, rep) -> None:
    r.add(f"pair: dim m = {rep.diagnostics['dim_m']}, dim n = {rep.diagnostics['dim_n']}, "
          f"dim g^e = {rep.diagnostics['dim_ge']}")
    for c in CONDITIONS:
        line = f"  {c}: {'pass' if rep.verdicts[c] else 'FAIL'}"
        if c in rep.details:
            line += f" ({rep.details[c]})"
        r.add(line)


# --- commands ----------------------------------------------------------------

def cmd_check(spec: ProblemSpec, args) -> tuple:
    r = Report()
    _report_head(r, "check", spec)
    G, e, a = spec.grading, spec.e, spec.a
    A = spec.algebra
    ok = True
    adm = is_admissible_grading(G, e, a)
    good = is_good_grading(G, e, a)
    dyn = is_dynkin_grading(G, e)
    r.add(f"admissible grading: {'yes' if adm else 'no'}")
    r.add(f"good grading: {'yes' if good else 'no'}")
    r.add(f"Dynkin grading: {'yes' if dyn else 'no'}")
    ok &= adm
    b = args.b if args.b is not None else spec.b
    verdicts = {"admissible": adm, "good": good, "dynkin": dyn}
    if b is not None:
        bo = is_b_optimal(G, e, b)
        r.add(f"{fstr(b)}-optimal: {'yes' if bo else 'no'}")
        verdicts["b_optimal"] = bo
        ok &= bo
    _report_degrees(r, G, e, a)
    doc = header("check", A, e, spec.provenance)
    doc.update({"grading": enc_diag(G), "a": fstr(a), "verdicts": verdicts})
    if b is not None:
        doc["b"] = fstr(b)
    if spec.pair is not None:
        rep = check_pair(G, e, a, spec.pair.m, spec.pair.n)
        _report_pair(r, rep)
        ok &= rep.overall
        doc["pair"] = enc_pair(A, spec.pair, rep.verdicts)
    r.add(f"verdict: {'PASS' if ok else 'FAIL'}")
    return (EXIT_OK if ok else EXIT_FAIL), r, doc


def cmd_construct(spec: ProblemSpec, args) -> tuple:
    r = Report()
    _report_head(r, "construct", spec)
    G, e, a = spec.grading, spec.e, spec.a
    A = spec.algebra
    if not is_admissible_grading(G, e, a):
        r.add("grading is not admissible: no admissible pair exists")
        return EXIT_FAIL, r, None
    doc = header("construct", A, e, spec.provenance)
    if args.optimal:
        out = optimal_pair(G, e, a)
        r.add(f"optimal pair: {out.status}")
        if out.narrative:
            r.add(f"  {out.narrative}")
        if out.obstruction_degrees:
            r.add("  obstruction degrees: " + ", ".join(fstr(j) for j in out.obstruction_degrees))
        doc.update({"mode": "optimal", "status": out.status, "narrative": out.narrative,
                    "forced_degrees": [fstr(j) for j in out.forced_degrees],
                    "violation_degrees": [fstr(j) for j in out.violation_degrees]})
        if out.pair is None:
            doc["pair"] = None
            return (EXIT_FAIL if out.status == "No" else EXIT_OK), r, doc
        pair = out.pair
    else:
        dec = decompose(G, e, a)
        pair = construct_pair(dec, G)
        r.add("blocks (d, lambda): case")
        for (d, lam), case in construction_cases(dec):
            r.add(f"  ({d}, {fstr(lam)}): {case}")
        doc["mode"] = "blockwise"
    rep = check_pair(G, e, a, pair.m, pair.n)
    _report_pair(r, rep)
    if not rep.overall:
        raise InternalError(f"constructed pair fails {rep.failed()}")
    doc["pair"] = enc_pair(A, pair, rep.verdicts)
    return EXIT_OK, r, doc


def _step_doc(A, s: Step) -> dict:
    return {"kind": s.kind, "eps": fstr(s.eps), "eps2": fstr(s.eps2), "grading": enc_diag(s.grading),
            "grading2": enc_diag(s.grading2), "a": fstr(s.a), "a2": fstr(s.a2),
            "m": enc_space(A, s.pair.m), "n": enc_space(A, s.pair.n),
            "verdicts": dict(s.report.verdicts), "verdicts2": dict(s.report2.verdicts)}


def cmd_connect(spec: ProblemSpec, args) -> tuple:
    r = Report()
    _report_head(r, "connect", spec)
    G, e, a = spec.grading, spec.e, spec.a
    A = spec.algebra
    if not is_admissible_grading(G, e, a):
        r.add("grading is not admissible")
        return EXIT_FAIL, r, None
    cert = connect_to_dynkin(G, e, a)
    res = verify_connectivity(cert)
    if not res.ok:
        raise InternalError("; ".join(res.failures))
    r.add("Dynkin h: diag(" + ", ".join(fstr(x) for x in A.diagonal_of(cert.h)) + ")")
    r.add("breakpoints: " + (", ".join(fstr(x) for x in cert.breakpoints) or "none"))
    r.add("epsilon chain: " + ", ".join(fstr(x) for x in cert.epsilon_chain))
    for i, s in enumerate(cert.steps):
        r.add(f"step {i} ({s.kind}): eps {fstr(s.eps)} -> {fstr(s.eps2)}, dims {s.pair.dims}, "
              f"certified under both gradings: {'yes' if s.ok else 'no'}")
    r.add("verdict: PASS")
    doc = header("connectivity", A, e, spec.provenance)
    doc.update({"start": enc_diag(G), "a": fstr(a), "h": enc_vector(A, to_sparse(cert.h)),
                "breakpoints": [fstr(x) for x in cert.breakpoints],
                "epsilon_chain": [fstr(x) for x in cert.epsilon_chain],
                "steps": [_step_doc(A, s) for s in cert.steps]})
    return EXIT_OK, r, doc


def _chain_doc(A, chain: EquivalenceChain, provenance: str) -> dict:
    doc = header("chain", A, chain.e, provenance)
    pairs = []
    for p in chain.pairs:
        rep = check_pair(p.grading, chain.e, p.a, p.m, p.n)
        pairs.append(enc_pair(A, p, rep.verdicts))
    wits = []
    for i, w in enumerate(chain.witnesses):
        p = chain.pairs[i]
        lesser = i if (w.lesser.m, w.lesser.n) == (p.m, p.n) else i + 1
        wits.append({"grading": enc_diag(w.grading), "a": fstr(w.a), "lesser": lesser,
                     "greater": 2 * i + 1 - lesser, "inclusions": list(w.inclusions())})
    doc.update({"pairs": pairs, "witnesses": wits})
    return doc


def _explicit_chain(spec: ProblemSpec) -> EquivalenceChain | None:
    links = spec.links or [spec.grading] * (len(spec.chain) - 1)
    wits = []
    for i, L in enumerate(links):
        aL = L.homogeneous_degree(spec.e)
        p, q = spec.chain[i], spec.chain[i + 1]
        try:
            w = comparable(L, spec.e, aL, p, q)
        except EquivalenceError:
            return None
        if w is None:
            return None
        wits.append(w)
    return EquivalenceChain(spec.e, tuple(spec.chain), tuple(wits))


def cmd_chain(spec: ProblemSpec, args) -> tuple:
    r = Report()
    _report_head(r, "chain", spec)
    G, e, a = spec.grading, spec.e, spec.a
    A = spec.algebra
    if spec.chain:
        r.add(f"explicit chain of {len(spec.chain)} pairs")
        chain = _explicit_chain(spec)
        if chain is None:
            for i, p in enumerate(spec.chain):
                rep = check_pair(p.grading, e, p.a, p.m, p.n)
                r.add(f"  pair {i}: {'certified' if rep.overall else 'fails ' + ','.join(rep.failed())}")
            r.add("consecutive pairs are not comparable")
            r.add("verdict: FAIL")
            return EXIT_FAIL, r, None
        builder = "explicit"
    else:
        if not is_admissible_grading(G, e, a):
            r.add("grading is not admissible")
            return EXIT_FAIL, r, None
        pair = spec.pair
        if pair is None:
            pair = construct_pair(decompose(G, e, a), G)
            r.add("start pair: blockwise construction")
        rep = check_pair(G, e, a, pair.m, pair.n)
        if not rep.overall:
            _report_pair(r, rep)
            r.add("start pair is not admissible")
            r.add("verdict: FAIL")
            return EXIT_FAIL, r, None
        b = args.b if args.b is not None else spec.b
        if b is None:
            b = a / 2
        if 0 < b <= a / 2 and all(j in (b - a, -b) for j in middle_degrees(G, a)):
            chain = two_level_chain(G, e, a, b, pair)
            builder = "two-level"
        elif a.denominator == 1 and is_b_optimal(G, e, b):
            chain = b_optimal_chain(G, e, a, b, pair)
            builder = "b-optimal"
        else:
            r.add(f"grading is neither {fstr(b)}-optimal nor two-level for b = {fstr(b)}")
            r.add("verdict: FAIL")
            return EXIT_FAIL, r, None
        r.add(f"builder: {builder}, b = {fstr(b)}")
    res = verify_chain(chain)
    if not res.ok:
        if builder == "explicit":
            r.add("chain fails: " + "; ".join(res.failures))
            r.add("verdict: FAIL")
            return EXIT_FAIL, r, None
        raise InternalError("; ".join(res.failures))
    for i, p in enumerate(chain.pairs):
        r.add(f"pair {i}: dims {p.dims}, grading diag(" + ", ".join(fstr(x) for x in p.grading.diag) + ")")
        if i < len(chain.witnesses):
            w = chain.witnesses[i]
            rel = "<=" if (w.lesser.m, w.lesser.n) == (p.m, p.n) else ">="
            r.add(f"  pair {i} {rel} pair {i + 1}")
    r.add("verdict: PASS")
    doc = _chain_doc(A, chain, spec.provenance)
    doc["builder"] = builder
    return EXIT_OK, r, doc


def cmd_classify(kind: AlgebraKind, parts: tuple, provenance: str = "") -> tuple:
    r = Report()
    r.add("admpairs classify")
    if provenance:
        r.add(f"provenance: {provenance}")
    rc = rank_classifier(kind, parts)
    r.add(f"algebra: {kind}")
    r.add(f"partition: {tuple(parts)}")
    r.add("centralizer factors: " + ", ".join(f"{name}_{rs} (part {s})" for name, rs, s in rc.factors))
    r.add(f"rank: {rc.rank}")
    r.add(f"isomorphism class: {rc.iso_class}")
    r.add(f"clause: {rc.case_label or 'none'}")
    if rc.readings_disagree:
        r.add("note: the two readings of clause (c) disagree here")
    doc = {"format": FORMAT, "version": VERSION, "type": "classify", "algebra": str(kind),
           "partition": list(parts), "rank": rc.rank, "iso_class": rc.iso_class,
           "case_label": rc.case_label, "provenance": provenance}
    return EXIT_OK, r, doc


# --- verification of certificate files ----------------------------------------

def _check_doc(doc: dict) -> tuple:
    """(ok, messages) from re-running every recorded verdict."""
    if doc.get("format") != FORMAT:
        raise SpecError("not an admpairs certificate")
    if doc.get("version") != VERSION:
        raise SpecError(f"unsupported certificate version {doc.get('version')}")
    kind = doc.get("type")
    if kind == "classify":
        rc = rank_classifier(AlgebraKind.parse(doc["algebra"]), tuple(doc["partition"]))
        same = (rc.rank, rc.iso_class, rc.case_label) == (doc["rank"], doc["iso_class"], doc["case_label"])
        return same, [] if same else ["classification differs from the recorded one"]
    A = build_algebra(AlgebraKind.parse(doc["algebra"]))
    e = to_dense(_vector(A, doc["e"], "e"), A.dim)
    msgs = []

    def recheck(raw, where):
        p = dec_pair(A, raw)
        rep = check_pair(p.grading, e, p.a, p.m, p.n)
        if rep.verdicts != raw["verdicts"]:
            msgs.append(f"{where}: verdicts drift")
        return p, rep

    if kind == "check":
        G = Grading(A, _diag(doc["grading"], "grading"))
        a = _rational(doc["a"], "a")
        rec = doc["verdicts"]
        if rec.get("admissible") != is_admissible_grading(G, e, a):
            msgs.append("admissibility drift")
        if rec.get("good") != is_good_grading(G, e, a):
            msgs.append("goodness drift")
        if rec.get("dynkin") != is_dynkin_grading(G, e):
            msgs.append("Dynkin drift")
        if "b_optimal" in rec and rec["b_optimal"] != is_b_optimal(G, e, _rational(doc["b"], "b")):
            msgs.append("b-optimality drift")
        if doc.get("pair"):
            recheck(doc["pair"], "pair")
    elif kind == "construct":
        if doc.get("pair"):
            _, rep = recheck(doc["pair"], "pair")
            if not rep.overall:
                msgs.append("pair is not admissible")
    elif kind == "connectivity":
        steps = []
        for i, s in enumerate(doc["steps"]):
            G1 = Grading(A, _diag(s["grading"], "grading"))
            G2 = Grading(A, _diag(s["grading2"], "grading2"))
            a1, a2 = _rational(s["a"], "a"), _rational(s["a2"], "a2")
            m, n = dec_space(A, s["m"]), dec_space(A, s["n"])
            r1, r2 = check_pair(G1, e, a1, m, n), check_pair(G2, e, a2, m, n)
            if r1.verdicts != s["verdicts"] or r2.verdicts != s["verdicts2"]:
                msgs.append(f"step {i}: verdicts drift")
            steps.append(Step(_rational(s["eps"], "eps"), _rational(s["eps2"], "eps2"), G1, G2, a1, a2,
                              AdmissiblePair(m, n, G1, a1), r1, r2, s["kind"]))
        start = Grading(A, _diag(doc["start"], "start"))
        h = to_dense(_vector(A, doc["h"], "h"), A.dim)
        cert = ConnectivityCertificate(start, tuple(e), _rational(doc["a"], "a"), tuple(h),
                                       tuple(_rational(x, "bp") for x in doc["breakpoints"]),
                                       tuple(_rational(x, "eps") for x in doc["epsilon_chain"]),
                                       tuple(steps))
        res = verify_connectivity(cert)
        msgs.extend(res.failures)
    elif kind == "chain":
        pairs = [recheck(raw, f"pair {i}")[0] for i, raw in enumerate(doc["pairs"])]
        wits = []
        for i, w in enumerate(doc["witnesses"]):
            G = Grading(A, _diag(w["grading"], "grading"))
            a = _rational(w["a"], "a")
            lo, hi = pairs[w["lesser"]], pairs[w["greater"]]
            if {w["lesser"], w["greater"]} != {i, i + 1}:
                msgs.append(f"witness {i}: does not link consecutive pairs")
            wits.append(ComparabilityWitness(G, a, AdmissiblePair(lo.m, lo.n, G, a),
                                             AdmissiblePair(hi.m, hi.n, G, a)))
        res = verify_chain(EquivalenceChain(tuple(e), tuple(pairs), tuple(wits)))
        msgs.extend(res.failures)
    else:
        raise SpecError(f"unknown certificate type {kind!r}")
    return not msgs, msgs


def cmd_verify(path: str) -> tuple:
    r = Report()
    r.add("admpairs verify")
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SpecError(f"certificate is not valid JSON: {exc}") from None
    r.add(f"certificate type: {doc.get('type')}")
    if doc.get("provenance"):
        r.add(f"provenance: {doc['provenance']}")
    ok, msgs = _check_doc(doc)
    for m in msgs:
        r.add(f"  {m}")
    r.add(f"verdict: {'PASS' if ok else 'FAIL'}")
    return (EXIT_OK if ok else EXIT_INTERNAL), r, None


# --- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="admpairs", description="Admissible pairs for nilpotent elements.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in ("check", "construct", "connect", "chain", "classify", "verify"):
        s = sub.add_parser(name)
        s.add_argument("--spec", help="problem file (TOML)")
        s.add_argument("--out", help="write the certificate here")
        s.add_argument("--quiet", action="store_true", help="suppress the report")
        if name in ("check", "chain"):
            s.add_argument("--b", help="rational b")
        if name == "construct":
            s.add_argument("--optimal", action="store_true", help="look for an optimal pair")
        if name == "classify":
            s.add_argument("--kind", help="algebra, e.g. SO(12)")
            s.add_argument("--partition", help="comma separated parts, e.g. 5,3,3,1")
        if name == "verify":
            s.add_argument("--verify", dest="cert", help="certificate file to re-verify")
            s.add_argument("path", nargs="?", help="certificate file (alternative to --verify)")
    return p


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            path = args.cert or args.path
            if not path:
                raise SpecError("give a certificate with --verify <path>")
            code, rep, doc = cmd_verify(path)
        elif args.command == "classify":
            prov = ""
            if args.spec:
                with open(args.spec, "rb") as fh:
                    data = tomli.load(fh)
                kind, parts = AlgebraKind.parse(str(data["algebra"])), tuple(int(x) for x in data["partition"])
                prov = str(data.get("provenance", ""))
            elif args.kind and args.partition:
                kind = AlgebraKind.parse(args.kind)
                parts = tuple(int(x) for x in args.partition.split(","))
            else:
                raise SpecError("classify needs --spec or --kind with --partition")
            code, rep, doc = cmd_classify(kind, parts, prov)
        else:
            if not args.spec:
                raise SpecError(f"{args.command} needs --spec <path>")
            spec = load_spec(args.spec)
            if getattr(args, "b", None) is not None:
                args.b = _rational(args.b, "--b")
            handler = {"check": cmd_check, "construct": cmd_construct, "connect": cmd_connect,
                       "chain": cmd_chain}[args.command]
            code, rep, doc = handler(spec, args)
    except (InternalError, AdmissibleError, ConnectivityError, EquivalenceError, Sl2Error) as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (SpecError, OSError, *INPUT_ERRORS) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if not args.quiet:
        stdout.write(rep.text())
    if args.out and doc is not None:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dump(doc))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
