"""Executable identity checks.

Every check returns a :class:`CheckReport`.  A failing report carries a
witness, usually the leading term of the difference between the two sides.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from .diffops import (
    PairOperator,
    apply,
    apply_delta_poly,
    apply_product,
    numerator_form_mt_op,
    pair_series,
    st_multiset,
    strict_multiset,
)
from .errors import ConfigError, DomainError
from .field import FieldElem
from .formulas import (
    gt_poly,
    kvars,
    overline_gt_poly,
    overline_gt_poly_extended,
    sgt_kernel,
)
from .multipoly import MultiPoly, definite_sum, shift
from .pfaffian import TriArray, det, pf_laplace, pf_matchings
from .powerseries import BiSeries, build_hidden_series, check_equation, swap_vars

__all__ = [
    "CheckReport",
    "poly_witness",
    "check_annihilating",
    "check_bsym",
    "check_w12",
    "check_fund",
    "check_one",
    "check_eat",
    "check_urbanrenewal",
    "urbanrenewal_sides",
    "check_decomposition",
    "decomposition_summand",
    "factor_formula",
    "check_first3",
    "check_ideal_generators",
    "check_st_multiset",
    "check_numerator_form",
    "check_pfaffian_engines",
    "CHECKS",
    "SUITES",
    "run_suite",
]

V = MultiPoly.var


@dataclass
class CheckReport:
    check_id: str
    params: Dict[str, object]
    witness: Optional[object] = None
    constant: Optional[FieldElem] = None
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.witness is None

    def to_json(self) -> dict:
        out = {
            "check_id": self.check_id,
            "params": _jsonable(self.params),
            "passed": self.passed,
            "witness": _jsonable(self.witness),
        }
        if self.constant is not None:
            out["constant"] = str(self.constant)
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str, float)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, MultiPoly):
        return obj.to_text()
    return str(obj)


def poly_witness(lhs: MultiPoly, rhs: MultiPoly) -> Optional[dict]:
    """Leading term of lhs - rhs, or None when they agree."""
    diff = lhs - rhs
    if diff.is_zero():
        return None
    exps, coef = diff.sorted_terms()[0]
    mono = {v: e for v, e in zip(diff.vars, exps) if e}
    return {"monomial": mono, "coefficient": str(coef), "terms": len(diff)}


def _first(*witnesses):
    for w in witnesses:
        if w is not None:
            return w
    return None


def _sgt(h: int, a: str, b: str) -> MultiPoly:
    return sgt_kernel(h).substitute({"x": V(a), "y": V(b)})


def _random_poly(vars: Sequence[str], rng: random.Random, degree: int = 3) -> MultiPoly:
    """Dense random polynomial, coefficients in -3..3."""
    vars = list(vars)
    p = MultiPoly.zero()
    for exps in product(range(degree + 1), repeat=len(vars)):
        if sum(exps) > degree:
            continue
        c = rng.randint(-3, 3)
        if not c:
            continue
        term = MultiPoly.const(c)
        for v, e in zip(vars, exps):
            if e:
                term = term * V(v) ** e
        p = p + term
    return p


def _strict_sum(a: MultiPoly, lnames: Sequence[str], kpolys: Sequence[MultiPoly]) -> MultiPoly:
    """sum over l_t in [k_t, k_{t+1} - 1] for every t."""
    for t, l in enumerate(lnames):
        a = definite_sum(a, l, kpolys[t], kpolys[t + 1] - 1)
    return a


def _shift_many(p: MultiPoly, vars: Sequence[str], amount: int = 1) -> MultiPoly:
    for v in vars:
        p = shift(p, v, amount)
    return p


def _elem_sym(xs: Sequence[MultiPoly], r: int) -> MultiPoly:
    total = MultiPoly.zero()
    for sub in combinations(xs, r):
        term = MultiPoly.one()
        for x in sub:
            term = term * x
        total = total + term
    return total


def _xvars(n: int, offset: int = 0) -> List[MultiPoly]:
    return [V("X%d" % (i + 1 + offset)) for i in range(n)]


# ---------------------------------------------------------------------------
# hidden series


def check_annihilating(A: BiSeries, h_max: int = 3, h_pair_max: int = 2, label: str = "A") -> CheckReport:
    """Both operator conditions plus the series-level criteria."""
    params = {"A": label, "h_max": h_max, "h_pair_max": h_pair_max}
    details: Dict[str, object] = {}
    witness = None
    if A != swap_vars(A):
        witness = {"condition": "symmetry", "difference": A.first_difference(swap_vars(A))}
    need = max(2 * h_max, 2 * h_pair_max)
    if A.order_x < need or A.order_y < need:
        raise DomainError("series must be truncated at order >= %d" % need)

    cond1 = True
    for h in range(h_max + 1):
        s = _sgt(h, "x", "y")
        got = apply(PairOperator("series", "x", "y", A), s)
        w = poly_witness(got, s)
        if w is not None:
            cond1 = False
            witness = witness or {"condition": 1, "h": h, **w}
            break
    details["condition_1"] = cond1

    cond2 = True
    o = 2 * h_pair_max
    U = pair_series("W_inv", o, o) * A.truncate(o, o)
    pairs = [("x1", "x2"), ("y1", "x2"), ("x1", "y2"), ("y1", "y2")]
    ops = [PairOperator("series", a, b, U) for a, b in pairs]
    for h1 in range(h_pair_max + 1):
        for h2 in range(h_pair_max + 1):
            base = _sgt(h1, "x1", "y1") * _sgt(h2, "x2", "y2")
            w = poly_witness(apply_product(ops, base), base)
            if w is not None and cond2:
                cond2 = False
                witness = witness or {"condition": 2, "h1": h1, "h2": h2, **w}
    details["condition_2"] = cond2

    series = check_equation(A)
    details["diagonal"] = series["diagonal"]
    details["fourfold"] = series["fourfold"]
    if not series["diagonal"] or not series["fourfold"]:
        witness = witness or {"condition": "series", "report": {k: v for k, v in series.items() if k != "passed"}}
    # operator-level and series-level verdicts must agree
    details["routes_agree"] = (cond1 == series["diagonal"]) and (cond2 == series["fourfold"])
    if not details["routes_agree"]:
        witness = witness or {"condition": "route agreement"}
    return CheckReport("annihilating", params, witness, details=details)


def check_bsym(h: int) -> CheckReport:
    """Delta_x Delta_y sgt_h = sgt_{h-1} and (Delta_x + Delta_y) sgt_h = -sgt_{h-1}."""
    s = _sgt(h, "x", "y")
    lower = _sgt(h - 1, "x", "y")
    dx = lambda p: shift(p, "x", 1) - p
    dy = lambda p: shift(p, "y", 1) - p
    w1 = poly_witness(dy(dx(s)), lower)
    w2 = poly_witness(dx(s) + dy(s), -lower)
    return CheckReport("bsym", {"h": h}, _first(w1 and {"identity": 1, **w1}, w2 and {"identity": 2, **w2}))


def _g(z: str, degree: int, seed: int) -> MultiPoly:
    rng = random.Random(seed)
    p = MultiPoly.zero()
    for e in range(degree + 1):
        p = p + MultiPoly.const(rng.randint(-3, 3) or 1) * V(z) ** e
    return p


def check_w12(part: int, h: int = 2, h1: int = 1, h2: int = 1, z_degree: int = 4, seed: int = 0) -> CheckReport:
    """The three W^{-1} identities, each side expanded as a polynomial.

    Parts 1 and 2 act on sgt_h(x,y) g(z) for a random g of degree
    ``z_degree``; E_h^{-1} lowers the index of sgt.
    """
    if part not in (1, 2, 3):
        raise ConfigError("part must be 1, 2 or 3")
    if part in (1, 2):
        params = {"part": part, "h": h, "z_degree": z_degree, "seed": seed}
        g = _g("z", z_degree, seed)
        base = _sgt(h, "x", "y") * g
        if part == 1:
            ops = [PairOperator("W_inv", "x", "z"), PairOperator("W_inv", "y", "z")]
        else:
            ops = [PairOperator("W_inv", "z", "x"), PairOperator("W_inv", "z", "y")]
        lhs = apply_product(ops, base)
        rhs = MultiPoly.zero()
        Z = V("Z")
        for m in range(0, max(h, 0) + 1):
            if part == 1:
                gz = apply_delta_poly((Z * (1 + Z)) ** m, {"Z": "z"}, g) if m else g
                term = gz.scale((-1) ** m)
            else:
                gz = shift(g, "z", -(2 * m + 2))
                term = apply_delta_poly(Z ** m, {"Z": "z"}, gz) if m else gz
            rhs = rhs + _sgt(h - m, "x", "y") * term
        return CheckReport("w12", params, poly_witness(lhs, rhs))

    params = {"part": 3, "h1": h1, "h2": h2}
    base = _sgt(h1, "x1", "y1") * _sgt(h2, "x2", "y2")
    ops = [PairOperator("W_inv", a, b) for a, b in (("x1", "x2"), ("y1", "x2"), ("x1", "y2"), ("y1", "y2"))]
    lhs = apply_product(ops, base)
    H1, H2 = V("H1"), V("H2")
    T = 3 * H1 * H2 - H1 * H2 ** 2 - H1 ** 2 * H2
    geo = MultiPoly.zero()
    power = MultiPoly.one()
    for _ in range(min(max(h1, 0), max(h2, 0)) + 1):
        geo = geo + power
        power = _cap(power * T, h1, h2)
    rhs = MultiPoly.zero()
    geo = geo.with_vars(("H1", "H2"))
    for (a, b), c in geo.terms.items():
        rhs = rhs + (_sgt(h1 - a, "x1", "y1") * _sgt(h2 - b, "x2", "y2")).scale(c)
    return CheckReport("w12", params, poly_witness(lhs, rhs))


def _cap(p: MultiPoly, c1: int, c2: int) -> MultiPoly:
    p = p.with_vars(("H1", "H2"))
    return MultiPoly(("H1", "H2"), {e: c for e, c in p.terms.items() if e[0] <= c1 and e[1] <= c2})


# ---------------------------------------------------------------------------
# overline GT identities


def check_fund(h: int, n: int, S: Sequence[int] = (1,)) -> CheckReport:
    """S(Delta) overline GT_h = S(delta) overline GT_h for S = prod e_{S_j}."""
    params = {"h": h, "n": n, "S": ["e%d" % r for r in S]}
    xs = _xvars(n)
    poly = MultiPoly.one()
    for r in S:
        if not 0 <= r <= n:
            raise DomainError("e_%d needs 0 <= r <= n" % r)
        poly = poly * _elem_sym(xs, r)
    target = overline_gt_poly(h, n)
    mapping = {"X%d" % (i + 1): v for i, v in enumerate(kvars(n))}
    fwd = apply_delta_poly(poly, mapping, target, "forward")
    bwd = apply_delta_poly(poly, mapping, target, "backward")
    return CheckReport("fund", params, poly_witness(fwd, bwd), details={"zero": fwd.is_zero()})


def check_one(h: int, n: int, A_choice: str = "p0a", factor: str = "one_plus_x_plus_y") -> CheckReport:
    """prod_i A^{-1}(Delta_{k_i}, 0) overline GT_h = overline GT_h."""
    params = {"h": h, "n": n, "A": A_choice, "factor": factor}
    target = overline_gt_poly(h, n)
    order = max(2 * h, 1)
    inv = build_hidden_series(A_choice, factor, order).inverse()
    ops = [PairOperator("series_at_zero", v, v, inv) for v in kvars(n)]
    return CheckReport("one", params, poly_witness(apply_product(ops, target), target))


def check_eat(i: int, j: int, n: int, a: Optional[MultiPoly] = None, seed: int = 0) -> CheckReport:
    """(-1)^i Delta_{k_1..k_i} Delta_{k_j..k_n} of a strict sum trims it.

    ``a`` is a polynomial in l1..l{n-1}; by default a random one.
    """
    if not (0 <= i and i + 2 <= j <= n + 1):
        raise DomainError("need 0 <= i and i + 2 <= j <= n + 1")
    lnames = ["l%d" % t for t in range(1, n)]
    if a is None:
        a = _random_poly(lnames, random.Random(seed))
    params = {"i": i, "j": j, "n": n, "seed": seed, "a": a.to_text()}
    ks = [V(v) for v in kvars(n)]
    lhs = _strict_sum(a, lnames, ks)
    for t in list(range(1, i + 1)) + list(range(j, n + 1)):
        lhs = shift(lhs, "k%d" % t, 1) - lhs
    lhs = lhs.scale((-1) ** i)
    # a(k_1..k_i, l_{i+1..j-2}, k_j..k_n)
    sub = {}
    for t in range(1, n):
        if t <= i:
            sub["l%d" % t] = V("k%d" % t)
        elif t >= j - 1:
            sub["l%d" % t] = V("k%d" % (t + 1))
    rhs = a.substitute(sub)
    for t in range(i + 1, j - 1):
        rhs = definite_sum(rhs, "l%d" % t, ks[t - 1], ks[t] - 1)
    return CheckReport("eat", params, poly_witness(lhs, rhs))


def check_urbanrenewal(
    p: int,
    n: int,
    part: int = 1,
    a_kind: str = "overline",
    h: int = 2,
    seed: int = 0,
    k: Optional[Sequence[int]] = None,
    signed: bool = False,
) -> CheckReport:
    """Commuting e_p(E) past a strict sum (part 1) and the multiset form (part 2).

    Part 2 compares the multisets literally; ``signed=True`` gives the
    blocks with non-empty I the sign (-1)^|I|.
    """
    if not 0 <= p <= n or n < 2:
        raise DomainError("need n >= 2 and 0 <= p <= n")
    if part == 2:
        return _urbanrenewal_multiset(p, n, k, seed, signed)
    if part != 1:
        raise ConfigError("part must be 1 or 2")
    lnames = ["l%d" % t for t in range(1, n)]
    if a_kind == "overline":
        if not 1 <= h - 1 <= n - 1:
            raise DomainError("a = overline GT_{h-1} needs 1 <= h - 1 <= n - 1")
        a = overline_gt_poly(h - 1, n - 1).rename({"k%d" % t: "l%d" % t for t in range(1, n)})
    elif a_kind == "random":
        # vanishes on equal neighbours
        a = _random_poly(lnames, random.Random(seed), 2)
        for t in range(1, n - 1):
            a = a * (V("l%d" % (t + 1)) - V("l%d" % t))
    else:
        raise ConfigError("a_kind must be 'overline' or 'random'")
    params = {"p": p, "n": n, "part": 1, "a": a_kind, "h": h if a_kind == "overline" else None, "seed": seed}
    ks = [V(v) for v in kvars(n)]
    summed = _strict_sum(a, lnames, ks)
    lhs = MultiPoly.zero()
    for T in combinations(kvars(n), p):
        lhs = lhs + _shift_many(summed, T)
    inner = MultiPoly.zero()
    for r in (p, p - 1):
        if 0 <= r <= n - 1:
            for T in combinations(lnames, r):
                inner = inner + _shift_many(a, T)
    rhs = _strict_sum(inner, lnames, ks)
    return CheckReport("urbanrenewal", params, poly_witness(lhs, rhs))


def _box(bounds: Sequence[Tuple[int, int]]) -> Counter:
    return Counter(product(*[range(lo, hi + 1) for lo, hi in bounds]))


def urbanrenewal_sides(p: int, k: Sequence[int], signed: bool = False) -> Tuple[Counter, Counter]:
    """Both multisets of the cartesian-product identity for an integer row.

    With ``signed`` the blocks indexed by a non-empty I enter with sign
    (-1)^|I|; multiplicities may then be negative.
    """
    n = len(k)
    lhs: Counter = Counter()
    for T in combinations(range(n), p):
        kk = [k[t] + (1 if t in T else 0) for t in range(n)]
        lhs.update(_box([(kk[t], kk[t + 1] - 1) for t in range(n - 1)]))
    rhs: Counter = Counter()
    middle = list(range(2, n))  # [2, n-1], 1-based
    for size in range(0, len(middle) + 1):
        for I in combinations(middle, size):
            Iset = set(I)
            if any(t - 1 in Iset for t in Iset) or p < len(I):
                continue
            blocked = Iset | {t - 1 for t in Iset}
            free = [t for t in range(1, n + 1) if t not in blocked]
            sign = (-1) ** len(I) if signed else 1
            for e in combinations(free, p - len(I)):
                eset = set(e)
                bounds = []
                for t in range(1, n):
                    if t in Iset:
                        bounds.append((k[t - 1], k[t - 1]))
                    elif t + 1 in Iset:
                        bounds.append((k[t], k[t]))
                    elif t in eset:
                        bounds.append((k[t - 1] + 1, k[t]))
                    else:
                        bounds.append((k[t - 1], k[t] - 1))
                for elem, mult in _box(bounds).items():
                    rhs[elem] += sign * mult
    return _nonzero(lhs), _nonzero(rhs)


def _nonzero(c: Counter) -> Counter:
    return Counter({key: v for key, v in c.items() if v})


def _urbanrenewal_multiset(p: int, n: int, k: Optional[Sequence[int]], seed: int, signed: bool) -> CheckReport:
    rows = [list(k)] if k is not None else _random_rows(n, 5, 4, seed)
    witness = None
    for row in rows:
        if len(row) != n:
            raise DomainError("row must have %d entries" % n)
        lhs, rhs = urbanrenewal_sides(p, row, signed)
        if lhs != rhs:
            elem = next(e for e in sorted(set(lhs) | set(rhs)) if lhs[e] != rhs[e])
            witness = {
                "k": row,
                "element": list(elem),
                "left_multiplicity": lhs[elem],
                "right_multiplicity": rhs[elem],
                "left_size": sum(lhs.values()),
                "right_size": sum(rhs.values()),
            }
            break
    params = {"p": p, "n": n, "part": 2, "signed": signed, "rows": rows}
    return CheckReport("urbanrenewal", params, witness)


def _random_rows(n: int, count: int, spread: int, seed: int) -> List[List[int]]:
    rng = random.Random(seed)
    rows = []
    for _ in range(count):
        vals = sorted(rng.sample(range(0, n + spread), n))
        rows.append(vals)
    return rows


# ---------------------------------------------------------------------------
# additive decomposition along a half-integer


def _twice(q) -> int:
    q2 = Fraction(q) * 2
    if q2.denominator != 1 or q2.numerator % 2 == 0:
        raise DomainError("q must be a half-integer")
    return int(q2)


def decomposition_summand(h: int, q, b: Sequence[int], ks: Sequence[MultiPoly]) -> MultiPoly:
    """The summand for the 0/1 sequence b = (b_1, ..., b_h), built level by level.

    At each level the entry between k_i and k_{i+1} (i = floor(q)) is
    split at m_h.  When i falls outside 1..n-1 there is no such entry; the
    summand survives only for the side the whole row lies on.
    """
    q2 = _twice(q)
    counter = [0]

    def rec(level: int, q2: int, ks: Sequence[MultiPoly]) -> MultiPoly:
        n = len(ks)
        if level == 0:
            return MultiPoly.one()
        i = q2 // 2
        bh = b[level - 1]
        if i < 1 and bh == 1 or i > n - 1 and bh == 0:
            return MultiPoly.zero()
        names = []
        for _ in range(n - 1):
            counter[0] += 1
            names.append("l%d" % counter[0])
        inner = rec(level - 1, q2 if bh == 0 else q2 - 2, [V(x) for x in names])
        m = V("m%d" % level)
        for t in range(1, n):
            lo, hi = ks[t - 1], ks[t] - 1
            if t == i:
                if bh == 0:
                    hi = m - 1
                else:
                    lo = m
            inner = definite_sum(inner, names[t - 1], lo, hi)
        return inner

    if len(b) != h:
        raise DomainError("b must have length h")
    return rec(h, q2, list(ks))


def _gbar(h: int, args: Sequence[MultiPoly]) -> MultiPoly:
    n = len(args)
    return overline_gt_poly_extended(h, n).substitute({v: a for v, a in zip(kvars(n), args)})


def factor_formula(h: int, q, b: Sequence[int], ks: Sequence[MultiPoly]) -> MultiPoly:
    """Product form of a summand: one factor in k_1..k_i, one in k_{i+1}..k_n."""
    i = _twice(q) // 2
    X = sorted((l for l in range(1, h + 1) if b[l - 1] == 0), reverse=True)
    Y = sorted(l for l in range(1, h + 1) if b[l - 1] == 1)
    left = _gbar(h, list(ks[:i]) + [V("m%d" % x) for x in X])
    for x in X:
        for _ in range(h - x):
            left = shift(left, "m%d" % x, 1) - left
    right = _gbar(h, [V("m%d" % y) for y in Y] + list(ks[i:]))
    for y in Y:
        for _ in range(h - y):
            right = right - shift(right, "m%d" % y, 1)
    return left * right


def check_decomposition(h: int, n: int, q, factor: bool = True) -> CheckReport:
    """Sum over all b equals overline GT_h; each summand matches its product form."""
    q2 = _twice(q)
    if not 1 <= Fraction(q2, 2) <= n or h > n:
        raise DomainError("need h <= n and 1 <= q <= n")
    params = {"h": h, "n": n, "q": "%d/2" % q2}
    ks = [V(v) for v in kvars(n)]
    total = MultiPoly.zero()
    witness = None
    nonzero = 0
    for b in product((0, 1), repeat=h):
        s = decomposition_summand(h, Fraction(q2, 2), b, ks)
        nonzero += not s.is_zero()
        total = total + s
        if factor and witness is None:
            w = poly_witness(s, factor_formula(h, Fraction(q2, 2), b, ks))
            if w is not None:
                witness = {"b": list(b), "product_form": w}
    witness = _first(poly_witness(total, overline_gt_poly(h, n)), witness)
    return CheckReport("decomposition", params, witness, details={"summands": 2 ** h, "nonzero": nonzero})


# ---------------------------------------------------------------------------
# annihilator ideal experiments


def _c2(m: int) -> int:
    return comb(m, 2) if m >= 2 else 0


def first3_exponent(h: int, n: int, i: int) -> int:
    return _c2(h + 1) - _c2(h - i + 1) - _c2(h + i - n + 1)


def check_first3(h: int, n: int, i: int) -> CheckReport:
    """(E_{k_{i+1..n}} - id)^e overline GT_h against the split product; reports the ratio."""
    if not (0 <= h <= n and 1 <= i <= n):
        raise DomainError("need h <= n and 1 <= i <= n")
    e = first3_exponent(h, n, i)
    params = {"h": h, "n": n, "i": i, "exponent": e}
    names = kvars(n)
    lhs = overline_gt_poly(h, n)
    right_vars = names[i:]
    for _ in range(e):
        lhs = _shift_many(lhs, right_vars) - lhs
    left = overline_gt_poly(min(h, i), i)
    tail = overline_gt_poly(min(h, n - i), n - i).rename({"k%d" % t: "k%d" % (t + i) for t in range(1, n - i + 1)})
    rhs = left * tail
    if rhs.is_zero():
        return CheckReport("first3", params, {"degenerate": "right side is zero"})
    exps, c_r = rhs.with_vars(_union(lhs, rhs)).sorted_terms()[0]
    lhs_al = lhs.with_vars(_union(lhs, rhs))
    c_l = lhs_al.terms.get(exps)
    if c_l is None:
        return CheckReport("first3", params, {"reason": "leading term of the right side is missing on the left"})
    ratio = c_l / c_r
    w = poly_witness(lhs, rhs.scale(ratio))
    return CheckReport("first3", params, w, constant=ratio)


def _union(a: MultiPoly, b: MultiPoly):
    from .multipoly import _sorted_vars

    return _sorted_vars(a.vars + b.vars)


def _in_ideal(R: MultiPoly, h: int, n: int) -> bool:
    mapping = {"X%d" % (t + 1): "k%d" % (t + 1) for t in range(n)}
    R = R.trim()
    if R.is_zero():
        return True
    return apply_delta_poly(R, mapping, gt_poly(h, n)).is_zero()


def _rename_x(R: MultiPoly, mapping: Dict[int, int]) -> MultiPoly:
    return R.rename({"X%d" % a: "X%d" % b for a, b in mapping.items()})


def ideal_list(h: int, n: int) -> List[Tuple[str, MultiPoly]]:
    """The explicit elements of I_{h,n} plus the seeds for h in {0, n-1, n}."""
    xs = _xvars(n)
    out: List[Tuple[str, MultiPoly]] = []
    shifted = [x + 1 for x in xs]
    for r in range(n + 1):
        R = _elem_sym(shifted, r) - _elem_sym(shifted, n - r)
        if not R.is_zero():
            out.append(("e%d(X+1)-e%d(X+1)" % (r, n - r), R))
    if n >= 1:
        alt = sum((_elem_sym(shifted, r).scale((-1) ** r) for r in range(n + 1)), MultiPoly.zero())
        out.append(("sum (-1)^i e_i(X+1)", alt))
        out.append(("X1^%d" % (h + 1), xs[0] ** (h + 1)))
        if n >= 2:
            out.append(("X%d^%d" % (n, h + 1), xs[-1] ** (h + 1)))
        for t in range(1, n - 1):
            out.append(("X%d^%d" % (t + 1, 2 * h + 1), xs[t] ** (2 * h + 1)))
    if h == 0:
        out.extend(("X%d" % (t + 1), x) for t, x in enumerate(xs))
    if h >= n - 1:
        out.extend(("e%d(X)" % r, _elem_sym(xs, r)) for r in range(1, n + 1))
    return out


def closure_candidates(h: int, n: int) -> List[Tuple[str, MultiPoly]]:
    """One round of the three closure constructions applied to the seed lists."""
    out: List[Tuple[str, MultiPoly]] = []
    xs = _xvars(n)
    # first: prod_{j != i} X_j * R(X^i) for R in I_{h-1,n-1}
    if h >= 1 and n >= 1 and h - 1 <= n - 1:
        for name, R in ideal_list(h - 1, n - 1):
            for i in range(1, n + 1):
                idx = [t for t in range(1, n + 1) if t != i]
                mono = MultiPoly.one()
                for t in idx:
                    mono = mono * xs[t - 1]
                moved = _rename_x(R, {a + 1: b for a, b in enumerate(idx)})
                out.append(("first[i=%d](%s)" % (i, name), mono * moved))
    # second: R X_n^h and X_1^h R(X_2..X_n) for R in I_{h,n-1}
    if n >= 1 and h <= n - 1:
        for name, R in ideal_list(h, n - 1):
            out.append(("second[right](%s)" % name, R * xs[-1] ** h))
            moved = _rename_x(R, {t: t + 1 for t in range(1, n)})
            out.append(("second[left](%s)" % name, xs[0] ** h * moved))
    # third: (prod_{j>i} (1+X_j) - 1)^e R1(X_1..X_i) or R2(X_{i+1}..X_n)
    for i in range(1, n):
        e = first3_exponent(h, n, i)
        base = MultiPoly.one()
        for t in range(i, n):
            base = base * (1 + xs[t])
        pre = (base - 1) ** e
        for name, R in ideal_list(min(h, i), i):
            out.append(("third[i=%d,R1](%s)" % (i, name), pre * R))
        for name, R in ideal_list(min(h, n - i), n - i):
            moved = _rename_x(R, {t: t + i for t in range(1, n - i + 1)})
            out.append(("third[i=%d,R2](%s)" % (i, name), pre * moved))
    return out


def check_ideal_generators(h: int, n: int, closure: bool = True) -> CheckReport:
    """Every listed polynomial, applied in the differences, kills GT_h."""
    if not 0 <= h <= n:
        raise DomainError("need 0 <= h <= n")
    items = ideal_list(h, n) + (closure_candidates(h, n) if closure else [])
    witness = None
    for name, R in items:
        if not _in_ideal(R, h, n):
            witness = {"polynomial": name, "R": R.to_text()}
            break
    return CheckReport("ideal_generators", {"h": h, "n": n, "closure": closure}, witness, details={"checked": len(items)})


# ---------------------------------------------------------------------------
# operator sanity checks


def check_st_multiset(max_value: int = 6) -> CheckReport:
    """Multiset reading of st against strict pairs, for a <= k <= b <= max_value."""
    for a in range(0, max_value + 1):
        for k in range(a, max_value + 1):
            for b in range(k, max_value + 1):
                if st_multiset(a, k, b) != strict_multiset(a, k, b):
                    return CheckReport("st_multiset", {"max_value": max_value}, {"a": a, "k": k, "b": b})
    return CheckReport("st_multiset", {"max_value": max_value})


def check_numerator_form(q_choice: str = "q_a", h: int = 1, n: int = 4) -> CheckReport:
    """Numerator form of st^{-1} A against the plain product, on GT_h(k_n)."""
    p = gt_poly(h, n)
    order = max(2 * h, 1)
    A = build_hidden_series(q_choice, "one_minus_xy", order)
    names = kvars(n)
    plain, numer = [], []
    for i in range(n):
        for j in range(i + 1, n):
            plain.append(PairOperator("series", names[i], names[j], pair_series("st_inv", order, order) * A))
            numer.append(numerator_form_mt_op(names[i], names[j], q_choice, order))
    w = poly_witness(apply_product(numer, p), apply_product(plain, p))
    return CheckReport("numerator_form", {"Q": q_choice, "h": h, "n": n}, w)


def _random_array(order: int, rng: random.Random) -> TriArray:
    return TriArray(order, lambda i, j: rng.randint(-5, 5))


def check_pfaffian_engines(max_order: int = 10, trials: int = 30, det_max: int = 8, seed: int = 0) -> CheckReport:
    """Matching expansion against Laplace expansion, and pf^2 = det."""
    rng = random.Random(seed)
    params = {"max_order": max_order, "trials": trials, "det_max": det_max, "seed": seed}
    orders = [o for o in range(0, max_order + 1, 2)]
    for t in range(trials):
        order = orders[t % len(orders)]
        a = _random_array(order, rng)
        pm, pl = pf_matchings(a, cap=max_order), pf_laplace(a)
        if pm != pl:
            return CheckReport("pfaffian", params, {"trial": t, "order": order, "matchings": pm, "laplace": pl})
        if order <= det_max and pl * pl != det(a.square()):
            return CheckReport("pfaffian", params, {"trial": t, "order": order, "pf": pl})
    return CheckReport("pfaffian", params)


# ---------------------------------------------------------------------------
# suites


def _annihilating_for(choice: str, factor: str = "one_plus_x_plus_y", h_max: int = 3, h_pair_max: int = 2) -> CheckReport:
    A = build_hidden_series(choice, factor, 8)
    r = check_annihilating(A, h_max, h_pair_max, label=choice)
    r.params["factor"] = factor
    return r


CHECKS: Dict[str, Callable[..., CheckReport]] = {
    "annihilating": _annihilating_for,
    "bsym": check_bsym,
    "w12": check_w12,
    "fund": check_fund,
    "one": check_one,
    "eat": check_eat,
    "urbanrenewal": check_urbanrenewal,
    "decomposition": check_decomposition,
    "first3": check_first3,
    "ideal_generators": check_ideal_generators,
    "st_multiset": check_st_multiset,
    "numerator_form": check_numerator_form,
    "pfaffian": check_pfaffian_engines,
}


def _fast_jobs():
    jobs = [("annihilating", {"choice": c, "h_max": 2, "h_pair_max": 1}) for c in ("p0a", "q_a")]
    jobs += [("bsym", {"h": h}) for h in range(1, 5)]
    jobs += [("w12", {"part": 1, "h": 2}), ("w12", {"part": 2, "h": 2}), ("w12", {"part": 3, "h1": 1, "h2": 1})]
    jobs += [("fund", {"h": 1, "n": 3, "S": [1]}), ("fund", {"h": 2, "n": 4, "S": [2, 1]})]
    jobs += [("one", {"h": 1, "n": 3, "A_choice": "p0a"})]
    jobs += [("eat", {"i": 1, "j": 3, "n": 3})]
    jobs += [("urbanrenewal", {"p": 1, "n": 3, "part": 2, "k": [0, 2, 4], "signed": True}), ("urbanrenewal", {"p": 2, "n": 4, "h": 2})]
    jobs += [("decomposition", {"h": 1, "n": 2, "q": "3/2"}), ("decomposition", {"h": 2, "n": 4, "q": "5/2"})]
    jobs += [("first3", {"h": 1, "n": 3, "i": 1})]
    jobs += [("ideal_generators", {"h": 1, "n": 3})]
    jobs += [("st_multiset", {"max_value": 5}), ("numerator_form", {}), ("pfaffian", {"max_order": 8, "trials": 10})]
    return jobs


def _full_jobs():
    from .powerseries import P_CHOICES

    jobs = [("annihilating", {"choice": c}) for c in P_CHOICES]
    jobs += [("bsym", {"h": h}) for h in range(1, 5)]
    jobs += [("w12", {"part": part, "h": h}) for part in (1, 2) for h in range(0, 4)]
    jobs += [("w12", {"part": 3, "h1": a, "h2": b}) for a in range(0, 4) for b in range(0, 4)]
    for n in range(1, 6):
        for h in range(0, min(n, 3) + 1):
            jobs += [("fund", {"h": h, "n": n, "S": [r]}) for r in range(1, n + 1)]
            if n >= 2:
                jobs.append(("fund", {"h": h, "n": n, "S": [2, 1]}))
    for n in range(1, 5):
        for h in range(0, min(n, 2) + 1):
            jobs += [("one", {"h": h, "n": n, "A_choice": c}) for c in ("p0a", "sqrt_a")]
    for n in range(1, 5):
        for i in range(0, n):
            for j in range(i + 2, n + 2):
                jobs.append(("eat", {"i": i, "j": j, "n": n}))
    for n in range(2, 6):
        for p in range(0, n + 1):
            jobs.append(("urbanrenewal", {"p": p, "n": n, "part": 2}))
            jobs.append(("urbanrenewal", {"p": p, "n": n, "part": 2, "signed": True}))
            if n <= 4:
                jobs.append(("urbanrenewal", {"p": p, "n": n, "part": 1, "a_kind": "random"}))
                jobs.append(("urbanrenewal", {"p": p, "n": n, "part": 1, "h": 2}))
    for n in range(1, 5):
        for h in range(0, min(n, 2) + 1):
            jobs += [("decomposition", {"h": h, "n": n, "q": "%d/2" % q2}) for q2 in range(3, 2 * n, 2)]
    for n in range(1, 6):
        for h in range(0, min(n, 2) + 1):
            jobs += [("first3", {"h": h, "n": n, "i": i}) for i in range(1, n + 1)]
    for n in range(0, 6):
        for h in range(0, min(n, 3) + 1):
            jobs.append(("ideal_generators", {"h": h, "n": n}))
    jobs += [("st_multiset", {}), ("numerator_form", {"Q": "q_a"}), ("numerator_form", {"Q": "q_b"}), ("pfaffian", {})]
    return jobs


SUITES = {"fast": _fast_jobs, "full": _full_jobs}


def run_check(check_id: str, params: Dict[str, object]) -> CheckReport:
    if check_id not in CHECKS:
        raise ConfigError("unknown check %r" % check_id)
    params = dict(params)
    if check_id == "numerator_form" and "Q" in params:
        params["q_choice"] = params.pop("Q")
    try:
        return CHECKS[check_id](**params)
    except TypeError as exc:
        raise ConfigError("bad parameters for %s: %s" % (check_id, exc))


def run_suite(name: str = "fast") -> List[CheckReport]:
    if name not in SUITES:
        raise ConfigError("unknown suite %r" % name)
    return [run_check(cid, params) for cid, params in SUITES[name]()]
