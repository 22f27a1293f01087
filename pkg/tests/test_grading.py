from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from admpairs.grading import (Grading, GradingError, check_degree, is_admissible_grading,
                              is_b_optimal, is_dynkin_grading, is_good_grading, is_graded,
                              scale_grading)
from admpairs.liealg import build_algebra


def as_int_matrix(G):
    return [[x for x in row] for row in G.degree_matrix()]


def test_sl4_case_degree_matrix(sl4):
    assert as_int_matrix(sl4.G) == [[0, 1, 2, 3], [-1, 0, 1, 2], [-2, -1, 0, 1], [-3, -2, -1, 0]]


def test_sl3_case_degree_matrix(sl3):
    assert as_int_matrix(sl3.G) == [[0, 0, 2], [0, 0, 2], [-2, -2, 0]]


def test_sl4_case_properties(sl4):
    G, e = sl4.G, sl4.e
    assert is_admissible_grading(G, e, 2)
    assert not is_good_grading(G, e, 2)
    assert is_b_optimal(G, e, 1)
    assert not is_dynkin_grading(G, e)
    ker, _ = G.ad_e_piece(e, -1)
    assert ker.dim == 1


def test_sl3_case_properties(sl3):
    G, e = sl3.G, sl3.e
    assert is_admissible_grading(G, e, 2)
    assert is_good_grading(G, e, 2)
    assert not is_dynkin_grading(G, e)
    assert is_dynkin_grading(Grading(G.algebra, [1, 0, -1]), e)


def test_sl11_case_negative_centralizer(sl11):
    G, e = sl11.G, sl11.e
    assert is_admissible_grading(G, e, 3)
    neg = G.ge_range(e, "<", 0)
    assert neg == sl11.span(tuple(x + y for x, y in zip(sl11.E(7, 10), sl11.E(8, 11))))
    assert not is_b_optimal(G, e, F(3, 2))
    assert not is_b_optimal(G, e, 1)


def test_sl11_case_centralizer_dimension_is_24(sl11):
    G, e = sl11.G, sl11.e
    assert sum(G.ge_piece(e, j).dim for j in G.degrees) == 24
    assert sl11.A.centralizer(e).dim == 24


def test_errors(sl4):
    with pytest.raises(GradingError):
        Grading(sl4.A, [1, 2, 3])
    with pytest.raises(GradingError):
        Grading(sl4.A, [1, 1, 1, 1])  # trace is not zero
    with pytest.raises(GradingError):
        check_degree(sl4.G, sl4.e, 3)
    with pytest.raises(GradingError):
        Grading(build_algebra("SO(5)"), [1, 0, 0, 0, 0])


def test_is_graded(sl4):
    ok, parts = is_graded(sl4.G, sl4.span(sl4.E(2, 1), sl4.E(3, 2)))
    assert ok and list(parts) == [-1]
    mixed = tuple(x + y for x, y in zip(sl4.E(2, 1), sl4.E(3, 1)))
    assert is_graded(sl4.G, sl4.span(mixed))[0] is False


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-6, 6), min_size=3, max_size=3))
def test_degrees_add_under_bracket(xs):
    A = build_algebra("SL(4)")
    diag = [F(x, 2) for x in xs] + [F(-sum(xs), 2)]
    G = Grading(A, diag)
    for k1 in range(A.dim):
        for k2 in range(0, A.dim, 3):
            z = A.bracket_sparse({k1: F(1)}, {k2: F(1)})
            if z:
                assert G.homogeneous_degree(z) == G.degree_of[k1] + G.degree_of[k2]


def test_scaling_preserves_admissibility(sl4):
    G2 = scale_grading(sl4.G, 3)
    assert is_admissible_grading(G2, sl4.e, 6)
