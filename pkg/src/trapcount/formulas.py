"""Closed formulas for GT_h and MT_h.

Polynomials use the variables k1, ..., kn.  Symbolic results are cached
per parameter set; the returned MultiPoly values are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import comb, factorial
from typing import Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import DomainError
from .field import FieldElem
from .multipoly import MultiPoly, binom_int, binom_poly, definite_sum, shift
from .pfaffian import TriArray, pf_elimination, pf_laplace
from .powerseries import build_hidden_series
from .diffops import BinomialForm, pair_series
from .trapezoids import enumerate_gt

__all__ = [
    "CountResult",
    "kvars",
    "gt_kernel",
    "sgt_kernel",
    "gt_array",
    "gt_count",
    "gt_poly",
    "gt_poly_extended",
    "gt_weyl",
    "weyl_poly",
    "mt_count",
    "mt_poly",
    "overline_gt",
    "overline_gt_poly",
    "overline_gt_poly_extended",
    "gt_recursion_poly",
    "PROVENANCES",
]

PROVENANCES = ("pfaffian_even", "odd_reduction", "weyl", "operator_formula", "brute_force")


@dataclass
class CountResult:
    value: Union[int, MultiPoly]
    provenance: str
    params: Dict[str, object] = field(default_factory=dict)

    @property
    def is_symbolic(self) -> bool:
        return isinstance(self.value, MultiPoly)

    def to_json(self) -> dict:
        out: Dict[str, object] = {"provenance": self.provenance, "params": self.params}
        if self.is_symbolic:
            out["polynomial"] = self.value.to_text()
            out["terms"] = len(self.value)
        else:
            out["value"] = self.value
        return out


def kvars(n: int, name: str = "k") -> List[str]:
    return ["%s%d" % (name, i) for i in range(1, n + 1)]


# ---------------------------------------------------------------------------
# kernels


@lru_cache(maxsize=None)
def gt_kernel(h: int) -> MultiPoly:
    """gt_h(x, y); built by the substitution p' = x - p and a definite sum."""
    if h < 0:
        raise DomainError("h must be non-negative")
    if h == 0:
        return MultiPoly.one()
    x, y, q = MultiPoly.var("x"), MultiPoly.var("y"), MultiPoly.var("q")
    # with p = x - q the summand reads C(q+h-1,h) C(y-x+q+h-2,h) - C(q+h-2,h) C(y-x+q+h-1,h)
    summand = binom_poly(q, h, h - 1) * binom_poly(y - x + q, h, h - 2) - binom_poly(q, h, h - 2) * binom_poly(
        y - x + q, h, h - 1
    )
    return definite_sum(summand, "q", MultiPoly.one(), x - h).trim()


@lru_cache(maxsize=None)
def sgt_kernel(h: int) -> MultiPoly:
    """(-1)^h / (2h)! (x-y-h+1)_{2h-1} (x-y); 1 for h = 0 and 0 for h < 0."""
    if h < 0:
        return MultiPoly.zero()
    if h == 0:
        return MultiPoly.one()
    d = MultiPoly.var("x") - MultiPoly.var("y")
    poch = MultiPoly.one()
    for i in range(2 * h - 1):
        poch = poch * (d - h + 1 + i)
    return (poch * d).scale(mpq((-1) ** h, factorial(2 * h)))


def _rename_xy(p: MultiPoly, a: MultiPoly, b: MultiPoly) -> MultiPoly:
    return p.substitute({"x": a, "y": b})


# ---------------------------------------------------------------------------
# GT_h


def gt_array(h: int, n: int, values: Optional[Sequence] = None) -> TriArray:
    """The block array [TGT_h(k+) | RGT_{h,h}(k+); 0] of order n + h.

    With ``values`` the entries are exact rationals, otherwise polynomials
    in k1..kn.
    """
    if (h + n) % 2:
        raise DomainError("the Pfaffian form needs h + n even")
    kernel = gt_kernel(h)
    size = n + h
    if values is not None:
        up = [int(values[i]) + i + 1 for i in range(n)]

        def entry(i, j):
            if j <= n:
                return mpq(kernel.eval({"x": up[i - 1], "y": up[j - 1]}).a)
            if i <= n:
                return mpq(binom_int(up[i - 1], h - (j - n)))
            return mpq(0)

        return TriArray(size, entry, mpq(0))
    ks = [MultiPoly.var(v) + (i + 1) for i, v in enumerate(kvars(n))]
    tgt_cache: Dict[Tuple[int, int], MultiPoly] = {}

    def sym_entry(i, j):
        if j <= n:
            return _rename_xy(kernel, ks[i - 1], ks[j - 1])
        if i <= n:
            return binom_poly(ks[i - 1], h - (j - n))
        return MultiPoly.zero()

    return TriArray(size, sym_entry, MultiPoly.zero())


def _check_hn(h: int, n: int):
    if h < 0 or n < 0:
        raise DomainError("h and n must be non-negative")
    if h > n:
        raise DomainError("need h <= n (got h=%d, n=%d)" % (h, n))


@lru_cache(maxsize=None)
def gt_poly(h: int, n: int) -> MultiPoly:
    """GT_h(k_n) as a polynomial through the Pfaffian formula."""
    _check_hn(h, n)
    return _gt_formula(h, n)


def gt_poly_extended(h: int, n: int) -> MultiPoly:
    """The same formula without the restriction h <= n.

    For 1 <= n < h this is not a trapezoid count; the formula gives 0 there.
    """
    if h < 0 or n < 0:
        raise DomainError("h and n must be non-negative")
    return _gt_formula(h, n)


@lru_cache(maxsize=None)
def _gt_formula(h: int, n: int) -> MultiPoly:
    if h == 0:
        return MultiPoly.one()
    if (h + n) % 2 == 0:
        return pf_laplace(gt_array(h, n)).with_vars(kvars(n))
    # odd parity: difference h times in an extra variable of the even case
    big = _gt_formula(h, n + 1)
    extra = "k%d" % (n + 1)
    for _ in range(h):
        big = shift(big, extra, 1) - big
    if not big.is_zero() and big.degree(extra) > 0:
        raise AssertionError("odd reduction still depends on %s" % extra)
    return big.partial_eval({extra: 0}).with_vars(kvars(n))


def _gt_value_even(h: int, k: Sequence[int]) -> int:
    v = pf_elimination(gt_array(h, len(k), k))
    if v.denominator != 1:
        raise AssertionError("non-integral Pfaffian value")
    return int(v)


def _gt_value(h: int, k: Sequence[int]) -> int:
    n = len(k)
    if h == 0:
        return 1
    if (h + n) % 2 == 0:
        return _gt_value_even(h, k)
    # Delta^h f(0) = sum_j (-1)^{h-j} C(h,j) f(j) in the extra variable
    return sum((-1) ** (h - j) * comb(h, j) * _gt_value_even(h, list(k) + [j]) for j in range(h + 1))


def gt_count(
    h: int,
    n: Optional[int] = None,
    symbolic: bool = False,
    bottom: Optional[Sequence[int]] = None,
    method: str = "pfaffian",
) -> CountResult:
    """GT_h(k_n) by the Pfaffian formula, the Weyl product or enumeration."""
    if n is None:
        if bottom is None:
            raise DomainError("need n or a bottom row")
        n = len(bottom)
    _check_hn(h, n)
    if bottom is not None and len(bottom) != n:
        raise DomainError("bottom row has %d entries, expected %d" % (len(bottom), n))
    params = {"h": h, "n": n}
    if bottom is not None:
        params["bottom"] = list(bottom)
    prov = "pfaffian_even" if (h + n) % 2 == 0 else "odd_reduction"
    if method == "weyl":
        if h not in (n - 1, n) and not (h == 0 and n <= 1):
            raise DomainError("the Weyl product counts GT_h only for h in {n-1, n}")
        return gt_weyl(n, bottom=None if symbolic else bottom, params=params)
    if method == "brute":
        if bottom is None or symbolic:
            raise DomainError("enumeration needs a concrete bottom row")
        return CountResult(enumerate_gt(h, bottom), "brute_force", params)
    if method != "pfaffian":
        raise DomainError("unknown method %r" % method)
    if symbolic or bottom is None:
        p = gt_poly(h, n)
        if bottom is not None:
            return CountResult(_int_value(p, bottom), prov, params)
        return CountResult(p, prov, params)
    return CountResult(_gt_value(h, bottom), prov, params)


def _int_value(p: MultiPoly, bottom: Sequence[int]) -> int:
    v = p.eval({"k%d" % (i + 1): int(b) for i, b in enumerate(bottom)})
    if v.b or v.a.denominator != 1:
        raise AssertionError("count evaluates to a non-integer %s" % v)
    return int(v.a)


@lru_cache(maxsize=None)
def weyl_poly(n: int) -> MultiPoly:
    ks = [MultiPoly.var(v) for v in kvars(n)]
    p = MultiPoly.one()
    for i in range(n):
        for j in range(i + 1, n):
            p = p * (ks[j] - ks[i] + (j - i)).scale(mpq(1, j - i))
    return p.with_vars(kvars(n))


def gt_weyl(n: int, bottom: Optional[Sequence[int]] = None, params=None) -> CountResult:
    """prod_{i<j} (k_j - k_i + j - i) / (j - i)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    params = params or {"n": n}
    if bottom is None:
        return CountResult(weyl_poly(n), "weyl", params)
    num, den = 1, 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= bottom[j] - bottom[i] + j - i
            den *= j - i
    return CountResult(num // den, "weyl", params)


@lru_cache(maxsize=None)
def gt_recursion_poly(h: int, n: int) -> MultiPoly:
    """GT_h(k_n) by summing GT_{h-1} over all interlacing rows (independent oracle)."""
    _check_hn(h, n)
    if h == 0:
        return MultiPoly.one()
    inner = gt_recursion_poly(h - 1, n - 1).rename({"k%d" % i: "l%d" % i for i in range(1, n)})
    ks = [MultiPoly.var(v) for v in kvars(n)]
    for i in range(1, n):
        inner = definite_sum(inner, "l%d" % i, ks[i - 1], ks[i])
    return inner.with_vars(kvars(n))


# ---------------------------------------------------------------------------
# overline GT


@lru_cache(maxsize=None)
def overline_gt_poly(h: int, n: int) -> MultiPoly:
    """GT_h(k_n - (1,...,n))."""
    return _overline(gt_poly(h, n), n)


@lru_cache(maxsize=None)
def overline_gt_poly_extended(h: int, n: int) -> MultiPoly:
    """overline GT_h through the formula, also for n < h (see gt_poly_extended)."""
    if h <= n:
        return overline_gt_poly(h, n)
    return _overline(gt_poly_extended(h, n), n)


def _overline(p: MultiPoly, n: int) -> MultiPoly:
    return p.substitute({v: MultiPoly.var(v) - (i + 1) for i, v in enumerate(kvars(n))}).with_vars(kvars(n))


def overline_gt(h: int, n: int, symbolic: bool = True, bottom: Optional[Sequence[int]] = None) -> CountResult:
    _check_hn(h, n)
    p = overline_gt_poly(h, n)
    params = {"h": h, "n": n}
    prov = "pfaffian_even" if (h + n) % 2 == 0 else "odd_reduction"
    if bottom is not None and not symbolic:
        params["bottom"] = list(bottom)
        return CountResult(_int_value(p, bottom), prov, params)
    return CountResult(p, prov, params)


# ---------------------------------------------------------------------------
# MT_h


def _hidden(choice: str, factor: str, order: int):
    return _hidden_cached(choice, factor, max(order, 1))


@lru_cache(maxsize=None)
def _hidden_cached(choice: str, factor: str, order: int):
    return build_hidden_series(choice, factor, order)


@lru_cache(maxsize=None)
def mt_poly(h: int, n: int, A_choice: str = "p0a", factor: str = "one_plus_x_plus_y", margin: int = 0) -> MultiPoly:
    """prod_{i<j} st^{-1}_{k_i,k_j} A_{k_i,k_j} GT_h(k_n), applied symbolically.

    ``A_choice='none'`` drops the hidden series.  ``margin`` builds the
    series that many orders past the top degree; the result does not change.
    """
    _check_hn(h, n)
    gt = gt_poly(h, n)
    if n < 2 or h == 0:
        return gt
    form = BinomialForm(gt, kvars(n))
    top = max(form.degree(v) for v in kvars(n))
    A = None if A_choice == "none" else _hidden(A_choice, factor, top + margin)
    names = kvars(n)
    for i in range(n):
        for j in range(i + 1, n):
            dx, dy = form.degree(names[i]), form.degree(names[j])
            s = pair_series("st_inv", dx, dy)
            if A is not None:
                s = s * A.truncate(dx, dy)
            form.apply_pair(s, names[i], names[j])
    result = form.to_poly()
    if not result.is_rational():
        raise AssertionError("rho-part survived the operator formula")
    return result


def mt_count(
    h: int,
    n: Optional[int] = None,
    A_choice: str = "p0a",
    symbolic: bool = False,
    bottom: Optional[Sequence[int]] = None,
    factor: str = "one_plus_x_plus_y",
    margin: int = 0,
) -> CountResult:
    """MT_h(k_n) through the operator formula; integers are plugged in last."""
    if n is None:
        if bottom is None:
            raise DomainError("need n or a bottom row")
        n = len(bottom)
    _check_hn(h, n)
    params: Dict[str, object] = {"h": h, "n": n, "A": A_choice}
    if A_choice != "none":
        params["factor"] = factor
    if bottom is not None:
        if len(bottom) != n:
            raise DomainError("bottom row has %d entries, expected %d" % (len(bottom), n))
        if any(bottom[i] >= bottom[i + 1] for i in range(n - 1)):
            raise DomainError("bottom row must be strictly increasing")
        params["bottom"] = list(bottom)
    p = mt_poly(h, n, A_choice, factor, margin)
    if bottom is not None and not symbolic:
        return CountResult(_int_value(p, bottom), "operator_formula", params)
    return CountResult(p, "operator_formula", params)
