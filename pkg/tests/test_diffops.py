from hypothesis import given, settings, strategies as st

import pytest

from trapcount.diffops import (
    PairOperator,
    apply,
    apply_delta_poly,
    apply_product,
    elementary_sym_op,
    st_multiset,
    strict_multiset,
)
from trapcount.errors import ConfigError, DomainError
from trapcount.multipoly import MultiPoly, delta, parse_poly, shift
from trapcount.powerseries import poly_series
from trapcount.verify import check_numerator_form

VARS = ("x", "y", "z")

polys = st.lists(
    st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2), st.integers(-4, 4)), max_size=5
).map(lambda ts: MultiPoly(VARS, {(a, b, c): k for a, b, c, k in ts}))


def st_oracle(p):
    # E_x^{-1} (id + Delta_x + Delta_x Delta_y)
    q = p + delta(p, "x") + delta(delta(p, "y"), "x")
    return shift(q, "x", -1)


def test_w_on_xy():
    assert apply(PairOperator("W", "x", "y"), parse_poly("x y")) == parse_poly("x y + y + 1")


@given(polys)
def test_st_matches_shift_oracle(p):
    assert apply(PairOperator("st", "x", "y"), p) == st_oracle(p)


@given(polys)
def test_st_inverse(p):
    q = apply(PairOperator("st", "x", "y"), p)
    assert apply(PairOperator("st_inv", "x", "y"), q) == p
    w = apply(PairOperator("W", "y", "z"), p)
    assert apply(PairOperator("W_inv", "y", "z"), w) == p


@settings(max_examples=30)
@given(polys)
def test_operator_order_is_irrelevant(p):
    ops = [PairOperator("st_inv", "x", "y"), PairOperator("W", "y", "z"), PairOperator("st", "x", "z")]
    assert apply_product(ops, p) == apply_product(ops[::-1], p)


def test_series_operator_equals_kind():
    s = poly_series("1 + x + x y", 6, 6)
    p = parse_poly("x^3 y^2 - 2 x y^3 + x")
    assert apply(PairOperator("series", "x", "y", s), p) == apply(PairOperator("W", "x", "y"), p)


def test_series_at_zero_drops_y():
    # only the y-free part of 1 + x + xy survives
    s = poly_series("1 + x + x y", 4, 4)
    p = parse_poly("x^2 y")
    assert apply(PairOperator("series_at_zero", "x", "y", s), p) == p + delta(p, "x")


def test_elementary_symmetric():
    assert elementary_sym_op(parse_poly("x + y"), ["x", "y"], 1) == MultiPoly.const(2)
    p = parse_poly("x^2 y + z^3")
    assert elementary_sym_op(p, ["x", "y", "z"], 2) == delta(delta(p, "x"), "y") + delta(delta(p, "x"), "z") + delta(
        delta(p, "y"), "z"
    )
    assert elementary_sym_op(p, ["x"], 0) == p
    with pytest.raises(DomainError):
        elementary_sym_op(p, ["x"], 2)


@given(polys)
def test_backward_differences(p):
    R = parse_poly("X Y + 2 X")
    got = apply_delta_poly(R, {"X": "x", "Y": "y"}, p, "backward")
    want = delta(delta(p, "x", "backward"), "y", "backward") + 2 * delta(p, "x", "backward")
    assert got == want


def test_missing_target_variable():
    with pytest.raises(DomainError):
        apply_delta_poly(parse_poly("X Y"), {"X": "x"}, parse_poly("x"))


def test_unknown_kind():
    with pytest.raises(ConfigError):
        PairOperator("nope", "x", "y")
    with pytest.raises(ConfigError):
        PairOperator("series", "x", "y")


@pytest.mark.parametrize("a,k,b", [(a, k, b) for a in range(0, 4) for k in range(a, 6) for b in range(k, 7)])
def test_st_reads_as_strict_multiset(a, k, b):
    assert st_multiset(a, k, b) == strict_multiset(a, k, b)


@pytest.mark.parametrize("q", ["q_a", "q_b"])
def test_numerator_form(q):
    assert check_numerator_form(q, h=1, n=4).passed
