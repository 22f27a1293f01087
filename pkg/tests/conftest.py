from __future__ import annotations

import sys
from fractions import Fraction as F
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from admpairs.admissible import AdmissiblePair  # noqa: E402
from admpairs.exactlin import Subspace  # noqa: E402
from admpairs.grading import Grading, piece_range  # noqa: E402
from admpairs.liealg import build_algebra  # noqa: E402

GOLDEN = Path(__file__).parent / "golden"


class Case:
    """An algebra, a nilpotent, a grading and helpers for elementary matrices."""

    def __init__(self, kind, entries, diag, a):
        self.A = build_algebra(kind)
        self.e = self.A.element_from_entries(entries)
        self.G = Grading(self.A, [F(x) for x in diag])
        self.a = F(a)

    def E(self, i, j):
        return self.A.coords_from_matrix({(i - 1, j - 1): F(1)})

    def span(self, *xs):
        return Subspace.span(list(xs), self.A.dim)

    def rng(self, op, k, G=None):
        return piece_range(G or self.G, op, k)

    def pair(self, m, n, G=None, a=None):
        return AdmissiblePair(m, n, G or self.G, self.a if a is None else F(a))


def sl4_case() -> Case:
    return Case("SL(4)", [(1, 3, 1), (2, 4, 1)], ["3/2", "1/2", "-1/2", "-3/2"], 2)


def sl3_case() -> Case:
    return Case("SL(3)", [(1, 3, 1)], ["2/3", "2/3", "-4/3"], 2)


def sl11_case() -> Case:
    ent = [(i, i + 1, 1) for i in (1, 2, 3, 4, 5, 7, 8, 10)]
    diag = [F(x, 11) for x in (73, 40, 7, -26, -59, -92, 29, -4, -37, 51, 18)]
    return Case("SL(11)", ent, diag, 3)


def sl8_case() -> Case:
    ent = [(i, i + 1, 1) for i in range(1, 8) if i != 4]
    return Case("SL(8)", ent, [F(x, 2) for x in (7, 1, -5, -11, 11, 5, -1, -7)], 3)


@pytest.fixture(scope="session")
def sl4():
    return sl4_case()


@pytest.fixture(scope="session")
def sl3():
    return sl3_case()


@pytest.fixture(scope="session")
def sl11():
    return sl11_case()


@pytest.fixture(scope="session")
def sl8():
    return sl8_case()


@pytest.fixture(scope="session")
def dec11(sl11):
    from admpairs.sl2 import decompose
    return decompose(sl11.G, sl11.e, sl11.a)


def pytest_terminal_summary(terminalreporter):
    from instances import ACCEPTANCE
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        ok, note = ACCEPTANCE[k]
        terminalreporter.write_line(f"criterion {k:2d}: {'PASS' if ok else 'FAIL'}  {note}")
