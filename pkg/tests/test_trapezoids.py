import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from trapcount.errors import DomainError, ResourceError
from trapcount.trapezoids import (
    SignMatrix,
    Trapezoid,
    enumerate_gt,
    from_sign_matrix,
    iter_trapezoids,
    to_sign_matrix,
)

EXAMPLE_ROWS = (
    (8, 12, 15, 18),
    (7, 10, 15, 17, 19),
    (6, 8, 14, 15, 17, 19),
    (3, 8, 12, 15, 16, 18, 20),
)


def oracle_count(h, bottom, monotone):
    """Fill every entry independently from [k_1, k_n] and filter."""
    lo, hi = bottom[0], bottom[-1]
    n = len(bottom)
    sizes = [n - h + t for t in range(h)]
    total = 0
    for flat in product(range(lo, hi + 1), repeat=sum(sizes)):
        rows, pos = [], 0
        for s in sizes:
            rows.append(flat[pos:pos + s])
            pos += s
        rows.append(tuple(bottom))
        ok = all(
            rows[t + 1][i] <= rows[t][i] <= rows[t + 1][i + 1]
            for t in range(h)
            for i in range(len(rows[t]))
        )
        if ok and monotone:
            ok = all(r[i] < r[i + 1] for r in rows for i in range(len(r) - 1))
        total += ok
    return total


rows_small = st.integers(1, 4).flatmap(
    lambda n: st.lists(st.integers(0, 4), min_size=n, max_size=n).map(
        lambda gaps: [sum(gaps[: i + 1]) + i for i in range(n)]
    )
)


@settings(max_examples=40, deadline=None)
@given(rows_small, st.integers(0, 3), st.booleans())
def test_enumeration_matches_oracle(bottom, h, monotone):
    h = min(h, len(bottom), 2)
    assert enumerate_gt(h, bottom, monotone) == oracle_count(h, bottom, monotone)


def test_example_trapezoid_is_gt_and_monotone():
    t = Trapezoid(3, 7, EXAMPLE_ROWS)
    assert t.is_monotone()
    assert t.bottom == EXAMPLE_ROWS[-1]


def test_trapezoid_validation():
    with pytest.raises(DomainError):
        Trapezoid(1, 2, ((5,), (1, 3)))
    with pytest.raises(DomainError):
        Trapezoid(1, 2, ((1, 2), (1, 3)))


def test_asm_and_weyl_values():
    assert [enumerate_gt(n - 1, range(1, n + 1), monotone=True) for n in range(1, 6)] == [1, 2, 7, 42, 429]
    # Weyl dimension of the staircase
    assert [enumerate_gt(n - 1, range(1, n + 1)) for n in range(1, 6)] == [2 ** (n * (n - 1) // 2) for n in range(1, 6)]


def test_iterator_agrees_with_count():
    bottom = (1, 3, 4, 7)
    for h in range(4):
        ts = list(iter_trapezoids(h, bottom, monotone=True))
        assert len(ts) == enumerate_gt(h, bottom, monotone=True)
        assert len(set(ts)) == len(ts)


def test_bad_bottom_rows():
    with pytest.raises(DomainError):
        enumerate_gt(1, (3, 1))
    with pytest.raises(DomainError):
        enumerate_gt(3, (1, 2))


def test_count_cap():
    with pytest.raises(ResourceError):
        enumerate_gt(2, (1, 10, 20, 30), cap=10)


def random_monotone(rng, h, n):
    bottom = sorted(rng.sample(range(1, n + 6), n))
    choices = list(iter_trapezoids(h, bottom, monotone=True))
    return rng.choice(choices)


def test_sign_matrix_round_trip():
    rng = random.Random(7)
    for _ in range(60):
        n = rng.randint(1, 5)
        h = rng.randint(0, min(n, 3))
        t = random_monotone(rng, h, n)
        m = to_sign_matrix(t)
        assert m.is_valid(), m.violations()
        assert from_sign_matrix(m) == t


def test_sign_matrix_invariants_detect_damage():
    m = to_sign_matrix(Trapezoid(3, 7, EXAMPLE_ROWS))
    rows = [list(r) for r in m.entries]
    rows[0][0] = 1
    bad = SignMatrix(m.h, m.width, rows, m.positions)
    assert not bad.is_valid()
    with pytest.raises(DomainError):
        from_sign_matrix(bad)


def test_bijection_rejects_non_monotone():
    t = Trapezoid(1, 3, ((2, 2), (1, 2, 3)))
    with pytest.raises(DomainError):
        to_sign_matrix(t)
