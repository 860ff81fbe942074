"""Truncated formal power series in one and two variables over Q(rho).

The hidden series ``A(x, y)`` and everything it is built from (the P and Q
catalogue, the involution iota(x) = -x/(1+x)) live here.
"""

from __future__ import annotations

from typing import Callable, Dict, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import ConfigError, DomainError
from .field import ONE, RHO, ZERO, FieldElem, as_field
from .multipoly import MultiPoly, parse_poly

__all__ = [
    "UniSeries",
    "BiSeries",
    "iota_series",
    "identity_series",
    "substitute",
    "substitute_diagonal",
    "sqrt_series",
    "swap_vars",
    "poly_series",
    "catalogue_p",
    "build_hidden_series",
    "check_equation",
    "P_CHOICES",
    "FACTORS",
    "catalogue_q",
    "hidden_from_p",
    "p_residue",
    "p_target",
    "q_target",
    "fourfold",
    "fourfold_target",
    "dump_rows",
]


class UniSeries:
    """c_0 + c_1 x + ... + c_order x^order."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs: Sequence, order: Optional[int] = None):
        cs = [as_field(c) for c in coeffs]
        if order is None:
            order = len(cs) - 1
        if order < 0:
            raise DomainError("series order must be non-negative")
        cs = (cs + [ZERO] * (order + 1))[: order + 1]
        self.order = order
        self.coeffs = cs

    @property
    def composable(self) -> bool:
        return not self.coeffs[0]

    def __getitem__(self, i):
        return self.coeffs[i]

    def __add__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.order, other.order)
        return UniSeries([self.coeffs[i] + other.coeffs[i] for i in range(n + 1)], n)

    def __sub__(self, other: "UniSeries") -> "UniSeries":
        n = min(self.order, other.order)
        return UniSeries([self.coeffs[i] - other.coeffs[i] for i in range(n + 1)], n)

    def __mul__(self, other):
        if not isinstance(other, UniSeries):
            c = as_field(other)
            return UniSeries([a * c for a in self.coeffs], self.order)
        n = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = []
        for k in range(n + 1):
            s = ZERO
            for i in range(k + 1):
                if a[i] and b[k - i]:
                    s = s + a[i] * b[k - i]
            out.append(s)
        return UniSeries(out, n)

    __rmul__ = __mul__

    def inverse(self) -> "UniSeries":
        a = self.coeffs
        if not a[0]:
            raise DomainError("series without constant term is not invertible")
        inv0 = a[0].inverse()
        out = [inv0]
        for k in range(1, self.order + 1):
            s = ZERO
            for i in range(1, k + 1):
                if a[i]:
                    s = s + a[i] * out[k - i]
            out.append(-s * inv0)
        return UniSeries(out, self.order)

    def __truediv__(self, other: "UniSeries") -> "UniSeries":
        return self * other.inverse()

    def compose(self, g: "UniSeries") -> "UniSeries":
        """self(g(x)), g without constant term."""
        if not g.composable:
            raise DomainError("inner series must have zero constant term")
        n = min(self.order, g.order)
        result = UniSeries([self.coeffs[0]], n)
        power = UniSeries([ONE], n)
        for i in range(1, n + 1):
            power = power * g
            if self.coeffs[i]:
                result = result + power * self.coeffs[i]
        return result

    def truncate(self, order: int) -> "UniSeries":
        return UniSeries(self.coeffs, min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, UniSeries):
            return NotImplemented
        n = min(self.order, other.order)
        return self.coeffs[: n + 1] == other.coeffs[: n + 1]

    def __repr__(self):
        return "UniSeries(%s; O(x^%d))" % (", ".join(str(c) for c in self.coeffs), self.order + 1)


def iota_series(order: int) -> UniSeries:
    """iota(x) = -x/(1+x) = -x + x^2 - x^3 + ..."""
    if order < 1:
        raise DomainError("iota needs order >= 1")
    return UniSeries([0] + [(-1) ** i for i in range(1, order + 1)], order)


def identity_series(order: int) -> UniSeries:
    return UniSeries([0, 1], order)


class BiSeries:
    """Dense table c[i][j], 0 <= i <= order_x, 0 <= j <= order_y."""

    __slots__ = ("order_x", "order_y", "coeffs")

    def __init__(self, coeffs, order_x: int, order_y: int):
        if order_x < 0 or order_y < 0:
            raise DomainError("series orders must be non-negative")
        table = [[ZERO] * (order_y + 1) for _ in range(order_x + 1)]
        if isinstance(coeffs, dict):
            for (i, j), c in coeffs.items():
                if i <= order_x and j <= order_y:
                    table[i][j] = as_field(c)
        else:
            for i, row in enumerate(coeffs):
                if i > order_x:
                    break
                for j, c in enumerate(row):
                    if j > order_y:
                        break
                    table[i][j] = as_field(c)
        self.order_x = order_x
        self.order_y = order_y
        self.coeffs = table

    @classmethod
    def _raw(cls, table, ox, oy) -> "BiSeries":
        s = object.__new__(cls)
        s.order_x, s.order_y, s.coeffs = ox, oy, table
        return s

    @classmethod
    def constant(cls, c, order_x: int, order_y: int) -> "BiSeries":
        return cls({(0, 0): c}, order_x, order_y)

    @property
    def constant_term(self) -> FieldElem:
        return self.coeffs[0][0]

    def is_unit(self) -> bool:
        return bool(self.coeffs[0][0])

    def __getitem__(self, ij):
        i, j = ij
        if i > self.order_x or j > self.order_y:
            raise IndexError("coefficient beyond truncation")
        return self.coeffs[i][j]

    def items(self):
        for i, row in enumerate(self.coeffs):
            for j, c in enumerate(row):
                if c:
                    yield (i, j), c

    def truncate(self, order_x: int, order_y: int) -> "BiSeries":
        ox, oy = min(order_x, self.order_x), min(order_y, self.order_y)
        return BiSeries._raw([row[: oy + 1] for row in self.coeffs[: ox + 1]], ox, oy)

    def _orders(self, other: "BiSeries"):
        return min(self.order_x, other.order_x), min(self.order_y, other.order_y)

    def __add__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.constant(other, self.order_x, self.order_y)
        ox, oy = self._orders(other)
        return BiSeries._raw(
            [[self.coeffs[i][j] + other.coeffs[i][j] for j in range(oy + 1)] for i in range(ox + 1)], ox, oy
        )

    __radd__ = __add__

    def __neg__(self):
        return BiSeries._raw([[-c for c in row] for row in self.coeffs], self.order_x, self.order_y)

    def __sub__(self, other):
        if not isinstance(other, BiSeries):
            other = BiSeries.constant(other, self.order_x, self.order_y)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, BiSeries):
            c = as_field(other)
            return BiSeries._raw([[a * c for a in row] for row in self.coeffs], self.order_x, self.order_y)
        ox, oy = self._orders(other)
        out = [[ZERO] * (oy + 1) for _ in range(ox + 1)]
        b = other.coeffs
        for i1 in range(ox + 1):
            for j1 in range(oy + 1):
                c1 = self.coeffs[i1][j1]
                if not c1:
                    continue
                for i2 in range(ox - i1 + 1):
                    row = b[i2]
                    orow = out[i1 + i2]
                    for j2 in range(oy - j1 + 1):
                        c2 = row[j2]
                        if c2:
                            orow[j1 + j2] = orow[j1 + j2] + c1 * c2
        return BiSeries._raw(out, ox, oy)

    __rmul__ = __mul__

    def inverse(self) -> "BiSeries":
        s = self.coeffs
        if not s[0][0]:
            raise DomainError("series with zero constant term is not a unit")
        ox, oy = self.order_x, self.order_y
        inv0 = s[0][0].inverse()
        out = [[ZERO] * (oy + 1) for _ in range(ox + 1)]
        nz = [(a, b, c) for (a, b), c in self.items() if (a, b) != (0, 0)]
        for i in range(ox + 1):
            for j in range(oy + 1):
                acc = ONE if (i, j) == (0, 0) else ZERO
                for a, b, c in nz:
                    if a <= i and b <= j:
                        v = out[i - a][j - b]
                        if v:
                            acc = acc - c * v
                out[i][j] = acc * inv0
        return BiSeries._raw(out, ox, oy)

    def __truediv__(self, other):
        if not isinstance(other, BiSeries):
            return self * as_field(other).inverse()
        if not other.is_unit():
            raise DomainError("division by a non-unit series")
        ox, oy = self._orders(other)
        return self.truncate(ox, oy) * other.truncate(ox, oy).inverse()

    def __rtruediv__(self, other):
        return BiSeries.constant(other, self.order_x, self.order_y) / self

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = BiSeries.constant(1, self.order_x, self.order_y)
        for _ in range(k):
            result = result * self
        return result

    def map_coeffs(self, f: Callable[[FieldElem], FieldElem]) -> "BiSeries":
        return BiSeries._raw([[f(c) for c in row] for row in self.coeffs], self.order_x, self.order_y)

    def conjugate(self) -> "BiSeries":
        """Apply rho -> rho^5 = 1 - rho to every coefficient."""
        return self.map_coeffs(lambda c: c.conjugate())

    def is_rational(self) -> bool:
        return all(c.is_rational() for row in self.coeffs for c in row)

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        ox, oy = self._orders(other)
        return all(self.coeffs[i][j] == other.coeffs[i][j] for i in range(ox + 1) for j in range(oy + 1))

    def equals_up_to(self, other: "BiSeries", order_x: int, order_y: int) -> bool:
        return self.truncate(order_x, order_y) == other.truncate(order_x, order_y)

    def first_difference(self, other: "BiSeries"):
        ox, oy = self._orders(other)
        for d in range(ox + oy + 1):
            for i in range(max(0, d - oy), min(ox, d) + 1):
                j = d - i
                if self.coeffs[i][j] != other.coeffs[i][j]:
                    return (i, j), self.coeffs[i][j], other.coeffs[i][j]
        return None

    def to_poly(self, xvar: str = "x", yvar: str = "y") -> MultiPoly:
        return MultiPoly((xvar, yvar), {(i, j): c for (i, j), c in self.items()})

    def to_json(self) -> dict:
        return {
            "order_x": self.order_x,
            "order_y": self.order_y,
            "rows": [[c.to_json() for c in row] for row in self.coeffs],
        }

    def __repr__(self):
        terms = ["(%s)x^%dy^%d" % (c, i, j) for (i, j), c in self.items()]
        return "BiSeries(%s; orders %d,%d)" % (" + ".join(terms) or "0", self.order_x, self.order_y)


def poly_series(p: Union[MultiPoly, str], order_x: int, order_y: int, xvar: str = "x", yvar: str = "y") -> BiSeries:
    """Read a polynomial in (xvar, yvar) as a truncated series."""
    if isinstance(p, str):
        p = parse_poly(p)
    extra = set(p.used_vars()) - {xvar, yvar}
    if extra:
        raise DomainError("unexpected variables %s" % sorted(extra))
    p = p.with_vars((xvar, yvar))
    ix, iy = p.vars.index(xvar), p.vars.index(yvar)
    return BiSeries({(e[ix], e[iy]): c for e, c in p.terms.items()}, order_x, order_y)


def swap_vars(s: BiSeries) -> BiSeries:
    return BiSeries._raw(
        [[s.coeffs[i][j] for i in range(s.order_x + 1)] for j in range(s.order_y + 1)], s.order_y, s.order_x
    )


def _uni_powers(g: UniSeries, n: int, order: int) -> List[UniSeries]:
    g = g.truncate(order) if g.order > order else UniSeries(g.coeffs, order)
    out = [UniSeries([ONE], order)]
    for _ in range(n):
        out.append(out[-1] * g)
    return out


def substitute(s: BiSeries, which: str, g: UniSeries) -> BiSeries:
    """Replace x (which='first') or y (which='second') by g."""
    if not g.composable:
        raise DomainError("substituted series must have zero constant term")
    if which == "second":
        return swap_vars(substitute(swap_vars(s), "first", g))
    if which != "first":
        raise DomainError("which must be 'first' or 'second'")
    ox, oy = s.order_x, s.order_y
    powers = _uni_powers(g, ox, ox)
    out = [[ZERO] * (oy + 1) for _ in range(ox + 1)]
    for i in range(ox + 1):
        pw = powers[i].coeffs
        for j in range(oy + 1):
            c = s.coeffs[i][j]
            if not c:
                continue
            for k in range(i, ox + 1):
                if pw[k]:
                    out[k][j] = out[k][j] + c * pw[k]
    return BiSeries._raw(out, ox, oy)


def substitute_diagonal(s: BiSeries, gx: UniSeries, gy: UniSeries) -> UniSeries:
    """Univariate series s(gx(t), gy(t)) truncated at min(order_x, order_y)."""
    if not gx.composable or not gy.composable:
        raise DomainError("substituted series must have zero constant term")
    n = min(s.order_x, s.order_y)
    px = _uni_powers(gx, n, n)
    py = _uni_powers(gy, n, n)
    total = UniSeries([ZERO], n)
    for i in range(n + 1):
        for j in range(n + 1 - i):
            c = s.coeffs[i][j]
            if c:
                total = total + (px[i] * py[j]) * c
    return total


def sqrt_series(s: BiSeries) -> BiSeries:
    """Square root via sqrt(c) * sum_i C(1/2, i) q^i with s = c (1 + q)."""
    c = s.constant_term
    root = c.sqrt()  # raises DomainError when c is not a square
    q = s * c.inverse() - 1
    ox, oy = s.order_x, s.order_y
    result = BiSeries.constant(1, ox, oy)
    power = BiSeries.constant(1, ox, oy)
    coef = mpq(1)
    for i in range(1, ox + oy + 1):
        coef = coef * (mpq(1, 2) - (i - 1)) / i
        power = power * q
        result = result + power * coef
    return result * root


# ---------------------------------------------------------------------------
# catalogue

_P_TEXT = {
    "p0a": "1-(x+1)(y+1)-rho(x+2)",
    "p0b": "1-(x+1)(y+1)+rho(x+1)(x+2)",
}
_Q_TEXT = {
    "q_a": "x y + rho x + (1-rho) y - 2",
    # 1 + rho^-1/2 = 1 + (1-rho)/2
    "q_b": "x y + (1 + rho/2) x + (1 + (1-rho)/2) y + 1",
}

P_CHOICES = ("p0a", "p0b", "sqrt_a", "sqrt_b", "q_a", "q_b")
FACTORS = ("one_plus_x_plus_y", "one_minus_xy")


def catalogue_q(choice: str, order_x: int, order_y: int) -> BiSeries:
    if choice not in _Q_TEXT:
        raise ConfigError("no Q component for %r" % choice)
    return poly_series(_Q_TEXT[choice], order_x, order_y)


def catalogue_p(choice: str, order_x: int, order_y: int) -> BiSeries:
    """The series P(x, y) for a catalogue id."""
    if choice in _P_TEXT:
        return poly_series(_P_TEXT[choice], order_x, order_y)
    if choice in ("sqrt_a", "sqrt_b"):
        base = poly_series(_P_TEXT["p0" + choice[-1]], order_x, order_y)
        # multiply the conjugate factors first so the radicand is rational
        radicand = base * base.conjugate()
        return sqrt_series(radicand)
    if choice in _Q_TEXT:
        return poly_series("1 + x + x y", order_x, order_y) * catalogue_q(choice, order_x, order_y)
    raise ConfigError("unknown P choice %r (expected one of %s)" % (choice, ", ".join(P_CHOICES)))


def _factor_series(factor: str, ox: int, oy: int) -> BiSeries:
    if factor == "one_plus_x_plus_y":
        return poly_series("1 + x + y", ox, oy)
    if factor == "one_minus_xy":
        return poly_series("1 - x y", ox, oy)
    raise ConfigError("unknown factor %r (expected one of %s)" % (factor, ", ".join(FACTORS)))


def hidden_from_p(P: BiSeries, factor: str = "one_plus_x_plus_y") -> BiSeries:
    """factor * P(x,y) P(y,x) / (P(iota x, y) P(iota y, x))."""
    ox = oy = min(P.order_x, P.order_y)
    P = P.truncate(ox, oy)
    io = iota_series(max(ox, 1))
    Pswap = swap_vars(P)
    num = P * Pswap
    den = substitute(P, "first", io) * substitute(Pswap, "second", io)
    return _factor_series(factor, ox, oy) * num / den


def build_hidden_series(choice: Union[str, BiSeries], factor: str = "one_plus_x_plus_y", order: int = 8) -> BiSeries:
    """The hidden series A(x, y) for a catalogue id (or a user supplied P)."""
    if order < 0:
        raise DomainError("order must be non-negative")
    if isinstance(choice, BiSeries):
        P = choice.truncate(order, order)
        if P.order_x < order or P.order_y < order:
            raise DomainError("supplied P is truncated below the requested order")
    else:
        P = catalogue_p(choice, order, order)
    if not P.is_unit():
        raise DomainError("P needs a non-vanishing constant term")
    return hidden_from_p(P, factor)


# ---------------------------------------------------------------------------
# series-level checks


def _residue(P: BiSeries) -> UniSeries:
    n = min(P.order_x, P.order_y)
    x = identity_series(n)
    io = iota_series(max(n, 1))
    num = substitute_diagonal(P, x, io) * substitute_diagonal(P, io, x)
    den = substitute_diagonal(P, x, x) * substitute_diagonal(P, io, io)
    return num / den


def p_residue(P: BiSeries) -> UniSeries:
    """P(x,iota x) P(iota x,x) / (P(x,x) P(iota x,iota x))."""
    return _residue(P)


def _rational_uni(text: str, n: int) -> UniSeries:
    """Expand a polynomial ratio 'num | den' in x."""
    num_t, den_t = text.split("|")
    num = parse_poly(num_t).with_vars(("x",))
    den = parse_poly(den_t).with_vars(("x",))
    a = UniSeries([num.terms.get((i,), ZERO) for i in range(n + 1)], n)
    b = UniSeries([den.terms.get((i,), ZERO) for i in range(n + 1)], n)
    return a / b


def p_target(order: int) -> UniSeries:
    return _rational_uni("1 + x | 1 + x + x^2", order)


def q_target(order: int) -> UniSeries:
    return _rational_uni("1 + x + x^2 | (1 - x)(1 + 2 x)", order)


def fourfold(A: BiSeries) -> BiSeries:
    """A(x1,x2) A(x1,iota x2) A(iota x1,x2) A(iota x1,iota x2)."""
    n = min(A.order_x, A.order_y)
    A = A.truncate(n, n)
    io = iota_series(max(n, 1))
    a1 = substitute(A, "second", io)
    a2 = substitute(A, "first", io)
    a3 = substitute(a1, "first", io)
    return A * a1 * a2 * a3


def fourfold_target(order: int) -> BiSeries:
    num = poly_series("(1+x+y)(1-x y)(1+x+x y)(1+y+x y)", order, order)
    den = poly_series("(1+x)^2 (1+y)^2", order, order)
    return num / den


def check_equation(A: BiSeries, Q: Optional[BiSeries] = None, P: Optional[BiSeries] = None) -> Dict[str, object]:
    """Series-level criteria for a candidate hidden series.

    ``fourfold``: the four-substitution product identity; ``diagonal``:
    A(x, iota x) = 1.  When Q or P is given its residue equation is checked
    as well.  ``passed`` is the conjunction.
    """
    n = min(A.order_x, A.order_y)
    report: Dict[str, object] = {"order": n}
    lhs = fourfold(A)
    rhs = fourfold_target(n)
    report["fourfold"] = lhs == rhs
    if not report["fourfold"]:
        report["fourfold_witness"] = _fmt_diff(lhs.first_difference(rhs))
    diag = substitute_diagonal(A, identity_series(n), iota_series(max(n, 1)))
    report["diagonal"] = diag == UniSeries([ONE], n)
    if Q is not None:
        report["q_residue"] = _residue(Q) == q_target(min(Q.order_x, Q.order_y))
    if P is not None:
        report["p_residue"] = _residue(P) == p_target(min(P.order_x, P.order_y))
    report["passed"] = all(v for k, v in report.items() if k in ("fourfold", "diagonal", "q_residue", "p_residue"))
    return report


def _fmt_diff(d) -> Optional[dict]:
    if d is None:
        return None
    (i, j), a, b = d
    return {"index": [i, j], "lhs": str(a), "rhs": str(b)}


def dump_rows(s: BiSeries) -> List[dict]:
    """Records for the CLI dump: one header, then one record per row i."""
    out: List[dict] = [{"order_x": s.order_x, "order_y": s.order_y}]
    for i, row in enumerate(s.coeffs):
        out.append({"i": i, "coeffs": [c.to_json() for c in row]})
    return out
