"""Acceptance criteria 1-8.  Every comparison is exact; each criterion prints one line."""

import random
from math import comb
from pathlib import Path

import pytest

from trapcount.field import ONE
from trapcount.formulas import gt_count, mt_count, mt_poly
from trapcount.multipoly import parse_poly
from trapcount.powerseries import (
    P_CHOICES,
    UniSeries,
    build_hidden_series,
    identity_series,
    iota_series,
    substitute_diagonal,
)
from trapcount.trapezoids import (
    SignMatrix,
    Trapezoid,
    enumerate_gt,
    from_sign_matrix,
    iter_trapezoids,
    to_sign_matrix,
)
from trapcount.verify import (
    check_annihilating,
    check_decomposition,
    check_eat,
    check_first3,
    check_fund,
    check_ideal_generators,
    check_one,
    check_pfaffian_engines,
    check_urbanrenewal,
    check_w12,
)

FIXTURES = Path(__file__).parent / "fixtures"

EXAMPLE_ROWS = (
    (8, 12, 15, 18),
    (7, 10, 15, 17, 19),
    (6, 8, 14, 15, 17, 19),
    (3, 8, 12, 15, 16, 18, 20),
)
PRINTED_MATRIX = (
    (0, 0, 0, 0, 0, 0, 1, -1, 0, 1, 0, -1, 0, 0, 0, 0, 1, -1, 1, 0),
    (0, 0, 0, 0, 0, 1, -1, 1, 0, -1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0),
    (0, 0, 0, 1, 0, -1, 0, 0, 0, 0, 0, 1, 0, -1, 0, 1, -1, 1, -1, 1),
)


def grid_rows(n, count=25, spread=7, seed=0):
    """Distinct strictly increasing rows with k_n - k_1 <= spread."""
    if n == 0:
        return [[]]
    rng = random.Random(seed * 31 + n)
    seen = set()
    while len(seen) < count:
        width = rng.randint(n - 1, spread)
        inner = sorted(rng.sample(range(1, width), n - 2)) if n >= 2 else []
        shape = [0] + inner + ([width] if n >= 2 else [])
        start = rng.randint(-12, 12)
        seen.add(tuple(start + v for v in shape))
    return [list(r) for r in sorted(seen)]


def test_criterion_1_golden_polynomials(criterion):
    legs = []
    for name, h, n in (("mt1_k4", 1, 4), ("mt1_k5", 1, 5), ("mt2_k4", 2, 4)):
        printed = parse_poly((FIXTURES / (name + ".txt")).read_text())
        got = mt_count(h, n, "p0a", symbolic=True).value
        legs.append((name, got == printed, "%d terms" % len(got)))
    big = mt_count(2, 5, "p0a", symbolic=True).value
    legs.append(("mt2_k5_terms", len(big) == 315, "%d terms" % len(big)))
    criterion(1, "golden polynomials", legs)


def test_criterion_2_oracle_grid(criterion):
    cells = [(h, n) for n in range(0, 7) for h in range(0, min(n, 3) + 1)]
    mt_bad, gt_bad, checked = [], [], 0
    for h, n in cells:
        for k in grid_rows(n, seed=h):
            checked += 1
            if mt_count(h, n, bottom=k).value != enumerate_gt(h, k, monotone=True):
                mt_bad.append((h, k))
            if gt_count(h, n, bottom=k).value != enumerate_gt(h, k):
                gt_bad.append((h, k))
    note = "%d cells, %d rows" % (len(cells), checked)
    criterion(
        2,
        "oracle equivalence grid",
        [("mt_vs_brute", not mt_bad, note if not mt_bad else str(mt_bad[:3])), ("gt_vs_brute", not gt_bad, str(gt_bad[:3]) if gt_bad else "")],
    )


def test_criterion_3_asm_numbers(criterion):
    asm = [1, 2, 7, 42]
    formula = [mt_count(n - 1, n, bottom=list(range(1, n + 1))).value for n in range(1, 5)]
    brute = [enumerate_gt(n - 1, list(range(1, n + 1)), monotone=True) for n in range(1, 5)]
    weyl = [gt_count(n - 1, n, bottom=list(range(1, n + 1))).value for n in range(1, 6)]
    want = [2 ** comb(n, 2) for n in range(1, 6)]
    criterion(
        3,
        "ASM numbers",
        [
            ("formula", formula == asm, str(formula)),
            ("enumeration", brute == asm, str(brute)),
            ("weyl", weyl == want, str(weyl)),
        ],
    )


def test_criterion_4_hidden_series(criterion):
    legs = []
    for choice in P_CHOICES:
        A = build_hidden_series(choice, order=8)
        r = check_annihilating(A, h_max=3, h_pair_max=2, label=choice)
        diag = substitute_diagonal(A, identity_series(8), iota_series(8))
        ok = r.passed and A.constant_term == ONE and diag == UniSeries([1], 8)
        legs.append((choice, ok, ""))
    criterion(4, "hidden series validation", legs)


def test_criterion_5_identity_suite(criterion):
    legs = []

    def leg(name, reports):
        reports = list(reports)
        bad = [r.params for r in reports if not r.passed]
        legs.append((name, not bad, "%d/%d" % (len(reports) - len(bad), len(reports))))

    leg("w12_parts_1_2", (check_w12(p, h=h) for p in (1, 2) for h in range(0, 4)))
    leg("w12_part_3", (check_w12(3, h1=a, h2=b) for a in range(0, 4) for b in range(0, 4)))
    fund = []
    for n in range(1, 6):
        for h in range(0, min(n, 3) + 1):
            fund += [check_fund(h, n, [r]) for r in range(0, n + 1)]
            if n >= 2:
                fund.append(check_fund(h, n, [2, 1]))
    leg("fund", fund)
    leg("one", (check_one(h, n, c) for n in range(1, 5) for h in range(0, min(n, 2) + 1) for c in ("p0a", "sqrt_a")))
    leg("eat", (check_eat(i, j, n, seed=s) for n in range(1, 5) for i in range(0, n) for j in range(i + 2, n + 2) for s in (0, 1)))
    ur1 = []
    for n in range(2, 5):
        for p in range(0, n + 1):
            ur1.append(check_urbanrenewal(p, n, part=1, h=2))
            ur1.append(check_urbanrenewal(p, n, part=1, a_kind="random", seed=p))
    leg("urbanrenewal_part_1", ur1)
    leg("urbanrenewal_part_2", (check_urbanrenewal(p, n, part=2, seed=s) for n in range(2, 6) for p in range(0, n + 1) for s in (0, 1)))
    dec = []
    for n in range(1, 5):
        for h in range(0, min(n, 2) + 1):
            dec += [check_decomposition(h, n, "%d/2" % q2) for q2 in range(3, 2 * n, 2)]
    leg("decomposition", dec)
    leg("pfaffian_engines", [check_pfaffian_engines(max_order=10, trials=30, det_max=8)])
    criterion(5, "identity suite", legs)


def _a_less_equals(h, n):
    return mt_poly(h, n, "none") == mt_poly(h, n, "p0a")


@pytest.mark.slow
def test_criterion_6_negative_control(criterion):
    legs = []
    for h in (1, 2):
        same = [n for n in range(0, 6) if n >= h and _a_less_equals(h, n)]
        differ = [n for n in range(0, 6) if n >= h and n not in same]
        legs.append(("h%d_n_le_5" % h, not differ, "differs at n=%s" % differ if differ else ""))
    witness = None
    for k in grid_rows(6, count=40, seed=6):
        if mt_count(2, 6, "none", bottom=k).value != enumerate_gt(2, k, monotone=True):
            witness = k
            break
    legs.append(("h2_n6_differs", witness is not None, "row %s" % witness))
    criterion(6, "negative control", legs)


def test_criterion_7_bijection(criterion):
    t = Trapezoid(3, 7, EXAMPLE_ROWS)
    m = to_sign_matrix(t)
    diff = [(r + 1, c + 1) for r in range(3) for c in range(20) if m.entries[r][c] != PRINTED_MATRIX[r][c]]
    legs = [("example_matrix", not diff, "entries differ at %s" % diff if diff else "")]
    rng = random.Random(2024)
    bad = 0
    for _ in range(200):
        n = rng.randint(1, 5)
        h = rng.randint(0, min(n, 3))
        bottom = sorted(rng.sample(range(1, n + 5), n))
        tz = rng.choice(list(iter_trapezoids(h, bottom, monotone=True)))
        sm = to_sign_matrix(tz)
        if not sm.is_valid() or from_sign_matrix(sm) != tz:
            bad += 1
    legs.append(("round_trips", bad == 0, "%d/200" % (200 - bad)))
    criterion(7, "bijection round-trip", legs)


def test_criterion_8_ideal_experiments(criterion):
    ideal = [check_ideal_generators(h, n) for n in range(0, 6) for h in range(0, min(n, 3) + 1)]
    first3 = [check_first3(h, n, i) for n in range(1, 6) for h in range(0, min(n, 2) + 1) for i in range(1, n + 1)]
    constants = sorted({str(r.constant) for r in first3 if r.passed})
    criterion(
        8,
        "annihilator ideal experiments",
        [
            ("ideal_generators", all(r.passed for r in ideal), "%d cells" % len(ideal)),
            ("first3_proportional", all(r.passed for r in first3), "constants seen: %s" % ",".join(constants)),
        ],
    )


# ---------------------------------------------------------------------------
# companions to the literal criteria that fail, stating what does hold


def test_printed_matrix_matches_shifted_bottom():
    m = SignMatrix(3, 20, PRINTED_MATRIX, (4, 8, 12, 15, 16, 18, 20))
    assert m.is_valid()
    assert from_sign_matrix(m).rows[:3] == EXAMPLE_ROWS[:3]
    ours = to_sign_matrix(Trapezoid(3, 7, EXAMPLE_ROWS)).entries
    assert ours[:2] == PRINTED_MATRIX[:2]


def test_a_less_formula_as_printed_in_the_examples():
    assert _a_less_equals(1, 4)
    assert not _a_less_equals(1, 5)
    assert _a_less_equals(2, 4) and _a_less_equals(2, 5)
    assert not _a_less_equals(2, 6)


def test_signed_multiset_identity():
    reports = [check_urbanrenewal(p, n, part=2, seed=s, signed=True) for n in range(2, 6) for p in range(0, n + 1) for s in (0, 1)]
    assert all(r.passed for r in reports)


def test_first3_constants_logged():
    seen = {(h, n, i): check_first3(h, n, i).constant for n in range(1, 6) for h in range(0, min(n, 3) + 1) for i in range(1, n + 1)}
    print("first3 constants:", {k: str(v) for k, v in seen.items() if v != 1})
    assert all(v is not None for v in seen.values())
