from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from trapcount.errors import DomainError, ResourceError
from trapcount.multipoly import MultiPoly, parse_poly
from trapcount.pfaffian import TriArray, det, pf_elimination, pf_laplace, pf_matchings, pf_squared_is_det


@st.composite
def arrays(draw, max_half=4):
    n = 2 * draw(st.integers(0, max_half))
    vals = {(i, j): Fraction(draw(st.integers(-3, 3))) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return TriArray(n, vals, Fraction(0))


def gauss_det(m):
    """Plain Fraction elimination, kept separate from the library's det."""
    m = [[Fraction(v) for v in row] for row in m]
    n, d = len(m), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            d = -d
        d *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return d


def test_order_four_closed_form():
    a = TriArray(4, {(1, 2): 2, (1, 3): 3, (1, 4): 5, (2, 3): 7, (2, 4): 11, (3, 4): 13})
    want = 2 * 13 - 3 * 11 + 5 * 7
    assert pf_matchings(a) == pf_laplace(a) == want


@settings(max_examples=60)
@given(arrays())
def test_engines_agree(a):
    m = pf_matchings(a)
    assert pf_laplace(a) == m
    assert pf_elimination(a) == m
    assert m * m == gauss_det(a.square())


@settings(max_examples=20)
@given(arrays(max_half=3), st.data())
def test_expansion_index_is_irrelevant(a, data):
    if a.order == 0:
        return
    p = data.draw(st.integers(1, a.order))
    assert pf_laplace(a, expand_index=p) == pf_laplace(a)


@settings(max_examples=20)
@given(arrays(max_half=3))
def test_det_matches_oracle(a):
    assert det(a.square()) == gauss_det(a.square())
    assert pf_squared_is_det(a)


def test_polynomial_entries():
    a = TriArray(4, lambda i, j: parse_poly("x%d - x%d" % (j, i)), MultiPoly.zero())
    got = pf_laplace(a)
    want = parse_poly("(x2-x1)(x4-x3) - (x3-x1)(x4-x2) + (x4-x1)(x3-x2)")
    assert got == want
    assert got * got == det(a.square())


def test_nested_row_input():
    # rows shrink: row i lists A[i][i+1..]
    a = TriArray(4, [[1, 2, 3], [4, 5], [6], []])
    assert a.get(1, 4) == 3 and a.get(3, 4) == 6 and a.get(4, 1) == -3


def test_empty_is_one_and_odd_is_error():
    assert pf_laplace(TriArray(0, {})) == 1
    assert pf_matchings(TriArray(0, {})) == 1
    with pytest.raises(DomainError):
        pf_laplace(TriArray(3, {}))


def test_matching_cap():
    a = TriArray(14, lambda i, j: 1)
    with pytest.raises(ResourceError):
        pf_matchings(a)
    assert pf_laplace(a) == 1


def test_entries_outside_triangle():
    with pytest.raises(DomainError):
        TriArray(4, {(3, 2): 1})
