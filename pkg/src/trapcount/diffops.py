"""Operators built from shifts and differences, applied to polynomials.

Every operator here is a power series in the forward differences.  A
polynomial is expanded in the binomial basis prod_i C(k_i, e_i), where
Delta_{k_i} simply lowers e_i by one.  Applying S(Delta) is therefore a
correlation of coefficient tables, and it never raises degrees, so the
truncation at the current per-variable degree is exact.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import ConfigError, DomainError
from .field import ONE, ZERO, FieldElem
from .multipoly import MultiPoly, _sorted_vars, from_binomial_basis, to_binomial_basis
from .powerseries import (
    BiSeries,
    catalogue_q,
    iota_series,
    poly_series,
    substitute,
    swap_vars,
)

__all__ = [
    "PairOperator",
    "pair_series",
    "apply",
    "apply_product",
    "apply_delta_poly",
    "elementary_sym_op",
    "numerator_form_series",
    "numerator_form_mt_op",
    "st_multiset",
    "strict_multiset",
    "BinomialForm",
]

KINDS = ("st", "st_inv", "W", "W_inv", "series", "series_at_zero")


def pair_series(kind: str, order_x: int, order_y: int, series: Optional[BiSeries] = None) -> BiSeries:
    """The operator as a series in X = Delta_x, Y = Delta_y."""
    w = poly_series("1 + x + x y", order_x, order_y)
    ex = poly_series("1 + x", order_x, order_y)
    if kind == "st":
        return w / ex
    if kind == "st_inv":
        return ex / w
    if kind == "W":
        return w
    if kind == "W_inv":
        return w.inverse()
    if kind == "series":
        if series is None:
            raise ConfigError("series operator needs a series")
        return _pad(series, order_x, order_y)
    if kind == "series_at_zero":
        if series is None:
            raise ConfigError("series operator needs a series")
        s = _pad(series, order_x, 0)
        return BiSeries({(i, 0): s.coeffs[i][0] for i in range(order_x + 1)}, order_x, order_y)
    raise ConfigError("unknown operator kind %r" % kind)


def _pad(s: BiSeries, ox: int, oy: int) -> BiSeries:
    if s.order_x < ox or s.order_y < oy:
        raise DomainError(
            "series truncated at (%d,%d) but (%d,%d) is needed" % (s.order_x, s.order_y, ox, oy)
        )
    return s.truncate(ox, oy)


@dataclass(frozen=True)
class PairOperator:
    """S(Delta_x, Delta_y) for one of the built-in kinds or a given series."""

    kind: str
    var_x: str
    var_y: str
    series: Optional[BiSeries] = field(default=None, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ConfigError("unknown operator kind %r" % self.kind)
        if self.kind in ("series", "series_at_zero") and self.series is None:
            raise ConfigError("kind %r needs a series" % self.kind)

    def table(self, dx: int, dy: int) -> BiSeries:
        return pair_series(self.kind, dx, dy, self.series)


class BinomialForm:
    """A polynomial held as binomial-basis coefficients, for repeated operator application."""

    __slots__ = ("vars", "coeffs")

    def __init__(self, p: MultiPoly, extra_vars: Iterable[str] = ()):
        p = p.with_vars(_sorted_vars(p.vars + tuple(extra_vars)))
        self.vars = p.vars
        self.coeffs: Dict[tuple, FieldElem] = to_binomial_basis(p)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0
        i = self.vars.index(var)
        return max((e[i] for e in self.coeffs), default=0)

    def apply_pair(self, s: BiSeries, vx: str, vy: Optional[str]):
        ix = self.vars.index(vx)
        iy = self.vars.index(vy) if vy is not None else None
        table = [(u, v, c) for (u, v), c in s.items()]
        out: Dict[tuple, FieldElem] = {}
        for e, c in self.coeffs.items():
            ex = e[ix]
            ey = e[iy] if iy is not None else 0
            for u, v, sc in table:
                if u > ex or v > ey:
                    continue
                if u or v:
                    ne = list(e)
                    ne[ix] -= u
                    if iy is not None:
                        ne[iy] -= v
                    ne = tuple(ne)
                else:
                    ne = e
                val = sc * c
                if ne in out:
                    out[ne] = out[ne] + val
                else:
                    out[ne] = val
        self.coeffs = {e: c for e, c in out.items() if c}

    def apply_multi(self, terms: Mapping[tuple, FieldElem], vars: Sequence[str]):
        """Apply sum_u c_u prod Delta_{vars_i}^{u_i}."""
        idx = [self.vars.index(v) for v in vars]
        out: Dict[tuple, FieldElem] = {}
        items = list(terms.items())
        for e, c in self.coeffs.items():
            for u, sc in items:
                if any(u[k] > e[i] for k, i in enumerate(idx)):
                    continue
                ne = list(e)
                for k, i in enumerate(idx):
                    ne[i] -= u[k]
                ne = tuple(ne)
                val = sc * c
                if ne in out:
                    out[ne] = out[ne] + val
                else:
                    out[ne] = val
        self.coeffs = {e: c for e, c in out.items() if c}

    def to_poly(self) -> MultiPoly:
        return from_binomial_basis(self.vars, self.coeffs)


def _apply_op(form: BinomialForm, op: PairOperator):
    dx = form.degree(op.var_x)
    if op.kind == "series_at_zero":
        form.apply_pair(op.table(dx, 0), op.var_x, None)
        return
    dy = form.degree(op.var_y)
    form.apply_pair(op.table(dx, dy), op.var_x, op.var_y)


def _op_vars(op: PairOperator) -> Tuple[str, ...]:
    return (op.var_x,) if op.kind == "series_at_zero" else (op.var_x, op.var_y)


def apply(op: PairOperator, p: MultiPoly) -> MultiPoly:
    """Apply one pair operator exactly."""
    form = BinomialForm(p, _op_vars(op))
    _apply_op(form, op)
    return form.to_poly()


def apply_product(ops: Sequence[PairOperator], p: MultiPoly) -> MultiPoly:
    """Apply the operators in list order (the result does not depend on it)."""
    if not ops:
        return p
    form = BinomialForm(p, [v for op in ops for v in _op_vars(op)])
    for op in ops:
        _apply_op(form, op)
    return form.to_poly()


def apply_delta_poly(R: MultiPoly, mapping: Mapping[str, str], p: MultiPoly, direction: str = "forward") -> MultiPoly:
    """R(D_{k}) p where each variable X of R is replaced by the difference in mapping[X].

    ``direction='backward'`` substitutes delta = iota(Delta) for every Delta.
    """
    R = R.trim()
    for v in R.vars:
        if v not in mapping:
            raise DomainError("no target variable for %s" % v)
    targets = [mapping[v] for v in R.vars]
    form = BinomialForm(p, targets)
    if direction == "forward":
        form.apply_multi(R.terms, targets)
        return form.to_poly()
    if direction != "backward":
        raise DomainError("direction must be 'forward' or 'backward'")
    # delta_k = -Delta_k / (1 + Delta_k); expand R in those, truncated by degree
    degs = [form.degree(t) for t in targets]
    expanded = _backward_expand(R, degs)
    form.apply_multi(expanded, targets)
    return form.to_poly()


def _backward_expand(R: MultiPoly, degs: Sequence[int]) -> Dict[tuple, FieldElem]:
    out: Dict[tuple, FieldElem] = {}
    for e, c in R.terms.items():
        # iota(X)^m = (-1)^m X^m (1+X)^{-m} = (-1)^m sum_t C(-m, t) X^{m+t}
        parts: List[List[Tuple[int, int]]] = []
        for m, d in zip(e, degs):
            if m == 0:
                parts.append([(0, 1)])
                continue
            row = []
            for t in range(0, max(d - m, -1) + 1):
                row.append((m + t, (-1) ** m * _binom_neg(m, t)))
            parts.append(row)
        _accumulate(out, parts, c)
    return {e: c for e, c in out.items() if c}


def _binom_neg(m: int, t: int) -> int:
    # C(-m, t) = (-1)^t C(m+t-1, t)
    from math import comb

    return (-1) ** t * comb(m + t - 1, t)


def _accumulate(out, parts, c):
    def rec(k, exp, coef):
        if k == len(parts):
            e = tuple(exp)
            out[e] = out[e] + c * coef if e in out else c * coef
            return
        for u, w in parts[k]:
            rec(k + 1, exp + [u], coef * w)

    rec(0, [], 1)


def elementary_sym_op(p: MultiPoly, vars: Sequence[str], r: int, direction: str = "forward") -> MultiPoly:
    """e_r of the forward (or backward) differences in ``vars`` applied to p."""
    vars = list(vars)
    if r < 0 or r > len(vars):
        raise DomainError("degree %d outside 0..%d" % (r, len(vars)))
    names = ["X%d" % i for i in range(len(vars))]
    R = MultiPoly.zero()
    for sub in combinations(range(len(vars)), r):
        term = MultiPoly.one()
        for i in sub:
            term = term * MultiPoly.var(names[i])
        R = R + term
    if r == 0:
        return p
    return apply_delta_poly(R, dict(zip(names, vars)), p, direction)


# ---------------------------------------------------------------------------
# numerator form of st^{-1} A for the Q-variants with factor 1 - xy


def numerator_form_series(q_choice: str, order_x: int, order_y: int) -> BiSeries:
    """E_x E_y st_{y,x} / (1 + delta_x + delta_y) * Q(X,Y)Q(Y,X) / (Q(dx,Y) Q(dy,X)).

    Here X, Y are the forward differences and dx = iota(X), dy = iota(Y)
    the backward ones.
    """
    n = max(order_x, order_y, 1)
    io = iota_series(n)
    shifts = poly_series("(1 + x)(1 + y)", n, n)
    st_yx = poly_series("1 + y + x y", n, n) / poly_series("1 + y", n, n)
    dsum = 1 + substitute(poly_series("x", n, n), "first", io) + substitute(poly_series("y", n, n), "second", io)
    Q = catalogue_q(q_choice, n, n)
    Qs = swap_vars(Q)
    num = Q * Qs
    den = substitute(Q, "first", io) * substitute(Qs, "second", io)
    return (shifts * st_yx / dsum * num / den).truncate(order_x, order_y)


def numerator_form_mt_op(var_x: str, var_y: str, q_choice: str, order: int) -> PairOperator:
    return PairOperator("series", var_x, var_y, numerator_form_series(q_choice, order, order))


# ---------------------------------------------------------------------------
# multiset reading of st


def _box(a: int, kl: int, kr: int, b: int) -> Counter:
    return Counter((l1, l2) for l1 in range(a, kl + 1) for l2 in range(kr, b + 1))


def st_multiset(a: int, k: int, b: int) -> Counter:
    """st_{kL,kR} applied to [a,kL] x [kR,b], then kL = kR = k, as a multiset."""
    total = Counter()
    total.update(_box(a, k - 1, k, b))  # E_{kL}^{-1}
    total.update(_box(a, k, k + 1, b))  # E_{kR}
    total.subtract(_box(a, k - 1, k + 1, b))  # E_{kL}^{-1} E_{kR}
    return +total if all(v >= 0 for v in total.values()) else total


def strict_multiset(a: int, k: int, b: int) -> Counter:
    return Counter((l1, l2) for l1 in range(a, k + 1) for l2 in range(k, b + 1) if l1 < l2)
