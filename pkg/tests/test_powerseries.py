import pytest
from hypothesis import given, settings, strategies as st

from trapcount.errors import ConfigError, DomainError
from trapcount.field import ONE, FieldElem
from trapcount.multipoly import MultiPoly
from trapcount.powerseries import (
    FACTORS,
    P_CHOICES,
    BiSeries,
    UniSeries,
    build_hidden_series,
    catalogue_p,
    catalogue_q,
    check_equation,
    fourfold,
    fourfold_target,
    identity_series,
    iota_series,
    p_residue,
    p_target,
    poly_series,
    q_target,
    sqrt_series,
    substitute_diagonal,
    swap_vars,
)

ORDER = 6

small = st.integers(-4, 4)
bipolys = st.lists(st.tuples(st.integers(0, 3), st.integers(0, 3), small), max_size=6).map(
    lambda ts: MultiPoly(("x", "y"), {(i, j): c for i, j, c in ts})
)


def truncated(p: MultiPoly, o: int) -> MultiPoly:
    p = p.with_vars(("x", "y"))
    return MultiPoly(p.vars, {e: c for e, c in p.terms.items() if e[0] <= o and e[1] <= o})


@given(bipolys, bipolys)
def test_product_matches_polynomial_product(a, b):
    got = poly_series(a, ORDER, ORDER) * poly_series(b, ORDER, ORDER)
    assert got.to_poly() == truncated(a * b, ORDER)


@settings(max_examples=30)
@given(bipolys, st.integers(1, 4))
def test_inverse(a, c):
    s = poly_series(a.with_vars(("x", "y")), ORDER, ORDER)
    # force a unit constant term
    s = s + BiSeries.constant(FieldElem(c) - s.constant_term, ORDER, ORDER)
    assert s * s.inverse() == BiSeries.constant(1, ORDER, ORDER)


def test_iota_is_an_involution():
    io = iota_series(8)
    assert io.compose(io) == identity_series(8)
    assert io.coeffs[:4] == [0, -1, 1, -1]


def test_uni_inverse_and_zero_constant():
    s = UniSeries([1, 2, 3], 5)
    assert s * s.inverse() == UniSeries([1], 5)
    with pytest.raises(DomainError):
        UniSeries([0, 1], 3).inverse()


def test_sqrt_series_squares_back():
    s = poly_series("(1 + x + 2 x y)^2 * 4", ORDER, ORDER)
    r = sqrt_series(s)
    assert r * r == s
    assert r.constant_term == 2


def test_sqrt_needs_square_constant():
    with pytest.raises(DomainError):
        sqrt_series(poly_series("2 + x", 3, 3))


def test_swap_vars():
    s = poly_series("x + 2 y^2", 3, 3)
    assert swap_vars(s) == poly_series("y + 2 x^2", 3, 3)


@pytest.mark.parametrize("choice", ["p0a", "p0b", "sqrt_a", "sqrt_b"])
def test_p_residue(choice):
    P = catalogue_p(choice, ORDER, ORDER)
    assert p_residue(P) == p_target(ORDER)


@pytest.mark.parametrize("choice", ["q_a", "q_b"])
def test_q_residue(choice):
    from trapcount.powerseries import _residue

    Q = catalogue_q(choice, ORDER, ORDER)
    assert _residue(Q) == q_target(ORDER)
    # P = (1 + x + xy) Q has the P residue as well
    assert p_residue(catalogue_p(choice, ORDER, ORDER)) == p_target(ORDER)


@pytest.mark.parametrize("choice", P_CHOICES)
@pytest.mark.parametrize("factor", FACTORS)
def test_hidden_series_basics(choice, factor):
    A = build_hidden_series(choice, factor, ORDER)
    assert A.constant_term == ONE
    assert A == swap_vars(A)
    # only the square-root variants avoid rho
    assert A.is_rational() == choice.startswith("sqrt")
    diag = substitute_diagonal(A, identity_series(ORDER), iota_series(ORDER))
    assert diag == UniSeries([1], ORDER)


def test_check_equation_accepts_catalogue_and_rejects_one():
    A = build_hidden_series("p0a", order=ORDER)
    rep = check_equation(A, P=catalogue_p("p0a", ORDER, ORDER))
    assert rep["passed"] and rep["fourfold"] and rep["diagonal"] and rep["p_residue"]
    bad = check_equation(BiSeries.constant(1, ORDER, ORDER))
    assert not bad["passed"]
    assert bad["diagonal"] and not bad["fourfold"]
    assert bad["fourfold_witness"] is not None


def test_fourfold_of_factor_only_series():
    # A = 1 + x + y alone already matches the target in the x y-free part
    A = poly_series("1 + x + y", ORDER, ORDER)
    assert fourfold(A)[1, 0] == fourfold_target(ORDER)[1, 0]


def test_unknown_choices():
    with pytest.raises(ConfigError):
        build_hidden_series("nope")
    with pytest.raises(ConfigError):
        build_hidden_series("p0a", factor="nope")
