"""Sparse multivariate polynomials over Q(rho) with difference calculus.

A :class:`MultiPoly` maps exponent tuples (aligned with ``vars``) to nonzero
:class:`FieldElem` coefficients.  Values are treated as immutable.

Besides the usual ring operations the module provides shift and difference
operators, definite summation and a conversion to the *binomial basis*
``prod_i C(v_i, e_i)`` in which forward differences just lower exponents.
"""

from __future__ import annotations

import re
from functools import lru_cache
from math import factorial
from typing import Dict, Iterable, Mapping, Sequence, Tuple, Union

from gmpy2 import mpq

from .errors import DomainError
from .field import ONE, ZERO, FieldElem, as_field

__all__ = [
    "MultiPoly",
    "var_key",
    "binom_poly",
    "shift",
    "delta",
    "definite_sum",
    "parse_poly",
    "to_binomial_basis",
    "from_binomial_basis",
]

Exp = Tuple[int, ...]
Scalar = Union[int, mpq, FieldElem]

_NAME = re.compile(r"([A-Za-z_]*)(\d*)(.*)")


def var_key(name: str):
    """Sort key: lexical on the alphabetic prefix, numeric on a trailing index."""
    m = _NAME.match(name)
    prefix, digits, rest = m.groups()
    return (prefix, int(digits) if digits else -1, rest)


def _sorted_vars(names: Iterable[str]) -> Tuple[str, ...]:
    return tuple(sorted(set(names), key=var_key))


class MultiPoly:
    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str] = (), terms: Mapping[Exp, Scalar] | None = None):
        vs = tuple(vars)
        order = _sorted_vars(vs)
        if len(order) != len(vs):
            raise DomainError("duplicate variable names in %r" % (vs,))
        clean: Dict[Exp, FieldElem] = {}
        if terms:
            if order != vs:
                perm = [vs.index(v) for v in order]
                items = ((tuple(e[i] for i in perm), c) for e, c in terms.items())
            else:
                items = terms.items()
            for e, c in items:
                if len(e) != len(order):
                    raise DomainError("exponent %r does not match vars %r" % (e, order))
                c = as_field(c)
                if c:
                    if e in clean:
                        c = clean[e] + c
                        if not c:
                            del clean[e]
                            continue
                    clean[e] = c
        self.vars = order
        self.terms = clean

    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exp, FieldElem]) -> "MultiPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        return p

    # constructors ------------------------------------------------------------
    @classmethod
    def const(cls, c: Scalar) -> "MultiPoly":
        c = as_field(c)
        return cls._raw((), {(): c} if c else {})

    @classmethod
    def var(cls, name: str) -> "MultiPoly":
        return cls._raw((name,), {(1,): ONE})

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls._raw((), {})

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls._raw((), {(): ONE})

    # variable bookkeeping ----------------------------------------------------
    def with_vars(self, vars: Sequence[str]) -> "MultiPoly":
        """Re-express over a (sorted) superset of the used variables."""
        target = _sorted_vars(vars)
        if target == self.vars:
            return self
        idx = {v: i for i, v in enumerate(target)}
        pos = []
        for i, v in enumerate(self.vars):
            if v not in idx:
                if any(e[i] for e in self.terms):
                    raise DomainError("variable %s is used but missing from %r" % (v, target))
                continue
            pos.append((i, idx[v]))
        n = len(target)
        out = {}
        for e, c in self.terms.items():
            ne = [0] * n
            for i, j in pos:
                ne[j] = e[i]
            out[tuple(ne)] = c
        return MultiPoly._raw(target, out)

    def used_vars(self) -> Tuple[str, ...]:
        return tuple(v for i, v in enumerate(self.vars) if any(e[i] for e in self.terms))

    def trim(self) -> "MultiPoly":
        """Drop variables that do not occur."""
        return self.with_vars(self.used_vars())

    def _align(self, other: "MultiPoly"):
        if self.vars == other.vars:
            return self, other
        vs = _sorted_vars(self.vars + other.vars)
        return self.with_vars(vs), other.with_vars(vs)

    # queries -----------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree(self, var: str) -> int:
        if var not in self.vars:
            return 0 if self.terms else -1
        i = self.vars.index(var)
        return max((e[i] for e in self.terms), default=-1)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self) -> FieldElem:
        for e, c in self.terms.items():
            if not any(e):
                return c
        return ZERO

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def coefficient(self, exps: Mapping[str, int]) -> FieldElem:
        e = tuple(exps.get(v, 0) for v in self.vars)
        return self.terms.get(e, ZERO)

    # ring operations ---------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        a, b = self._align(other)
        out = dict(a.terms)
        for e, c in b.terms.items():
            if e in out:
                s = out[e] + c
                if s:
                    out[e] = s
                else:
                    del out[e]
            else:
                out[e] = c
        return MultiPoly._raw(a.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, MultiPoly):
            other = MultiPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Scalar) -> "MultiPoly":
        c = as_field(c)
        if not c:
            return MultiPoly._raw(self.vars, {})
        return MultiPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        a, b = self._align(other)
        if len(a.terms) < len(b.terms):
            a, b = b, a
        out: Dict[Exp, FieldElem] = {}
        bt = list(b.terms.items())
        n = len(a.vars)
        for e1, c1 in a.terms.items():
            for e2, c2 in bt:
                e = tuple([e1[i] + e2[i] for i in range(n)]) if n else ()
                v = c1 * c2
                if e in out:
                    out[e] = out[e] + v
                else:
                    out[e] = v
        return MultiPoly._raw(a.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative polynomial power")
        result = MultiPoly.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __truediv__(self, c):
        if isinstance(c, MultiPoly):
            if not c.is_constant() or c.is_zero():
                raise DomainError("polynomial division only by nonzero constants")
            c = c.constant_value()
        return self.scale(as_field(c).inverse())

    def __eq__(self, other):
        if not isinstance(other, MultiPoly):
            try:
                other = MultiPoly.const(other)
            except TypeError:
                return NotImplemented
        a, b = self._align(other)
        return a.terms == b.terms

    def __hash__(self):
        p = self.trim()
        return hash((p.vars, frozenset(p.terms.items())))

    # substitution and evaluation ---------------------------------------------
    def eval(self, assignment: Mapping[str, Scalar]) -> FieldElem:
        missing = [v for v in self.used_vars() if v not in assignment]
        if missing:
            raise DomainError("missing values for %s" % ", ".join(missing))
        vals = [as_field(assignment.get(v, 0)) for v in self.vars]
        rational = all(v.is_rational() for v in vals)
        if rational:
            rv = [v.a for v in vals]
            pw = [dict() for _ in rv]
            tot_a = mpq(0)
            tot_b = mpq(0)
            for e, c in self.terms.items():
                m = mpq(1)
                for i, k in enumerate(e):
                    if k:
                        cache = pw[i]
                        if k not in cache:
                            cache[k] = rv[i] ** k
                        m *= cache[k]
                tot_a += c.a * m
                tot_b += c.b * m
            return FieldElem(tot_a, tot_b)
        total = ZERO
        for e, c in self.terms.items():
            m = c
            for i, k in enumerate(e):
                if k:
                    m = m * vals[i] ** k
            total = total + m
        return total

    def partial_eval(self, assignment: Mapping[str, Scalar]) -> "MultiPoly":
        """Substitute numbers for some variables; the others stay symbolic."""
        idx = [(i, as_field(assignment[v])) for i, v in enumerate(self.vars) if v in assignment]
        if not idx:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in assignment]
        nv = tuple(self.vars[i] for i in keep)
        out: Dict[Exp, FieldElem] = {}
        for e, c in self.terms.items():
            for i, val in idx:
                if e[i]:
                    c = c * val ** e[i]
            if not c:
                continue
            ne = tuple(e[i] for i in keep)
            if ne in out:
                out[ne] = out[ne] + c
            else:
                out[ne] = c
        return MultiPoly._raw(nv, {e: c for e, c in out.items() if c})

    def substitute(self, mapping: Mapping[str, "MultiPoly"]) -> "MultiPoly":
        """Simultaneous substitution of polynomials for variables."""
        mapping = {v: (q if isinstance(q, MultiPoly) else MultiPoly.const(q)) for v, q in mapping.items() if v in self.vars}
        if not mapping:
            return self
        keep = [i for i, v in enumerate(self.vars) if v not in mapping]
        subs = [(i, mapping[v]) for i, v in enumerate(self.vars) if v in mapping]
        kept_vars = tuple(self.vars[i] for i in keep)
        all_vars = _sorted_vars(kept_vars + tuple(x for _, q in subs for x in q.vars))
        powers = [dict() for _ in subs]
        # group terms by their kept part, then expand the substituted part
        grouped: Dict[Exp, Dict[Exp, FieldElem]] = {}
        for e, c in self.terms.items():
            ke = tuple(e[i] for i in keep)
            se = tuple(e[i] for i, _ in subs)
            grouped.setdefault(se, {})[ke] = c
        result = MultiPoly._raw(all_vars, {})
        for se, rest in grouped.items():
            factor = MultiPoly.one()
            for j, k in enumerate(se):
                if k:
                    cache = powers[j]
                    if k not in cache:
                        cache[k] = subs[j][1] ** k
                    factor = factor * cache[k]
            result = result + factor * MultiPoly._raw(kept_vars, rest)
        return result.with_vars(_sorted_vars(result.vars + kept_vars))

    def rename(self, mapping: Mapping[str, str]) -> "MultiPoly":
        new = tuple(mapping.get(v, v) for v in self.vars)
        if len(set(new)) != len(new):
            raise DomainError("renaming merges variables; use substitute instead")
        return MultiPoly(new, self.terms)

    # difference calculus -----------------------------------------------------
    def shift(self, var: str, amount: int = 1) -> "MultiPoly":
        return shift(self, var, amount)

    def delta(self, var: str, direction: str = "forward") -> "MultiPoly":
        return delta(self, var, direction)

    # formatting ----------------------------------------------------------------
    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: (-sum(t[0]), tuple(-x for x in t[0])))

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                v if k == 1 else "%s^%d" % (v, k) for v, k in zip(self.vars, e) if k
            )
            cs = str(c)
            if c.b:
                cs = "(" + cs + ")"
            if not mono:
                body = cs
            elif c == ONE:
                body = mono
            elif c == -ONE:
                body = "-" + mono
            else:
                body = cs + "*" + mono
            if parts and not body.startswith("-"):
                body = "+" + body
            parts.append(body)
        return "".join(parts)

    __str__ = to_text

    def __repr__(self):
        return "MultiPoly(%s)" % self.to_text()

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [{"exp": list(e), "coeff": c.to_json()} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, obj) -> "MultiPoly":
        return cls(obj["vars"], {tuple(t["exp"]): FieldElem.from_json(t["coeff"]) for t in obj["terms"]})

    @classmethod
    def parse(cls, text: str) -> "MultiPoly":
        return parse_poly(text)


def _lift(p) -> MultiPoly:
    return p if isinstance(p, MultiPoly) else MultiPoly.const(p)


# ---------------------------------------------------------------------------
# binomial coefficients and difference operators


def binom_poly(var: Union[str, MultiPoly], m: int, shift: Union[MultiPoly, Scalar, None] = None) -> MultiPoly:
    """C(var + shift, m) as a polynomial, valid for every integer argument."""
    if m < 0:
        return MultiPoly.zero()
    base = MultiPoly.var(var) if isinstance(var, str) else var
    if shift is not None:
        base = base + _lift(shift)
    if base.is_constant():
        return MultiPoly.const(_binom_value(base.constant_value(), m))
    result = MultiPoly.one()
    for i in range(m):
        result = result * (base - i)
    return result / factorial(m)


def _binom_value(x: FieldElem, m: int) -> FieldElem:
    r = ONE
    for i in range(m):
        r = r * (x - i)
    return r * mpq(1, factorial(m))


def binom_int(x: int, m: int) -> int:
    """C(x, m) for any integer x under the falling-factorial convention."""
    if m < 0:
        return 0
    num = 1
    for i in range(m):
        num *= x - i
    return num // factorial(m)


def shift(p: MultiPoly, var: str, amount: int = 1) -> MultiPoly:
    """E_var^amount: substitute var -> var + amount."""
    if amount == 0 or var not in p.vars:
        return p
    i = p.vars.index(var)
    a = mpq(amount)
    out: Dict[Exp, FieldElem] = {}
    for e, c in p.terms.items():
        m = e[i]
        if not m:
            if e in out:
                out[e] = out[e] + c
            else:
                out[e] = c
            continue
        for t in range(m + 1):
            coef = c * (_binom_table(m)[t] * a ** (m - t))
            ne = e[:i] + (t,) + e[i + 1:]
            if ne in out:
                out[ne] = out[ne] + coef
            else:
                out[ne] = coef
    return MultiPoly._raw(p.vars, {e: c for e, c in out.items() if c})


@lru_cache(maxsize=None)
def _binom_table(m: int) -> Tuple[int, ...]:
    row = [1]
    for _ in range(m):
        row = [1] + [row[i] + row[i + 1] for i in range(len(row) - 1)] + [1]
    return tuple(row)


def delta(p: MultiPoly, var: str, direction: str = "forward") -> MultiPoly:
    """Forward (E - id) or backward (E^-1 - id) difference in ``var``."""
    if direction not in ("forward", "backward"):
        raise DomainError("direction must be 'forward' or 'backward'")
    return shift(p, var, 1 if direction == "forward" else -1) - p


def definite_sum(p: MultiPoly, var: str, lower, upper) -> MultiPoly:
    """Sum of p over var = lower..upper as a polynomial in the bounds.

    Uses sum_{x=a}^{b} C(x, e) = C(b+1, e+1) - C(a, e+1), which also gives
    the usual extension: 0 for b = a - 1 and negated sums for b < a - 1.
    """
    lower, upper = _lift(lower), _lift(upper)
    if var in lower.used_vars() or var in upper.used_vars():
        raise DomainError("summation bounds must not involve the summation variable")
    if var not in p.vars:
        return p.trim() * (upper - lower + 1)
    i = p.vars.index(var)
    # binomial basis in var only
    by_e: Dict[int, Dict[Exp, FieldElem]] = {}
    rest_vars = p.vars[:i] + p.vars[i + 1:]
    for e, c in p.terms.items():
        rest = e[:i] + e[i + 1:]
        m = e[i]
        for j, s in enumerate(_power_to_binom(m)):
            if s:
                d = by_e.setdefault(j, {})
                v = c * s
                d[rest] = d[rest] + v if rest in d else v
    result = MultiPoly.zero()
    top = upper + 1
    for j, coeffs in sorted(by_e.items()):
        cpoly = MultiPoly._raw(rest_vars, {e: c for e, c in coeffs.items() if c})
        if cpoly.is_zero():
            continue
        result = result + cpoly * (binom_poly(top, j + 1) - binom_poly(lower, j + 1))
    return result


# ---------------------------------------------------------------------------
# binomial basis


@lru_cache(maxsize=None)
def _power_to_binom(m: int) -> Tuple[int, ...]:
    """x^m = sum_j S2(m, j) j! C(x, j)."""
    s2 = _stirling2_row(m)
    return tuple(s2[j] * factorial(j) for j in range(m + 1))


@lru_cache(maxsize=None)
def _binom_to_power(j: int) -> Tuple[mpq, ...]:
    """C(x, j) = (1/j!) sum_m s(j, m) x^m with signed Stirling numbers s."""
    row = [1]  # coefficients of the falling factorial x(x-1)...(x-j+1)
    for i in range(j):
        nxt = [0] * (len(row) + 1)
        for k, c in enumerate(row):
            nxt[k + 1] += c
            nxt[k] -= i * c
        row = nxt
    f = factorial(j)
    return tuple(mpq(c, f) for c in row)


@lru_cache(maxsize=None)
def _stirling2_row(m: int) -> Tuple[int, ...]:
    row = [1]
    for n in range(1, m + 1):
        nxt = [0] * (n + 1)
        for k in range(1, n + 1):
            nxt[k] = k * (row[k] if k < len(row) else 0) + row[k - 1]
        row = nxt
    return tuple(row)


def _transform(vars, terms, table):
    for i in range(len(vars)):
        out: Dict[Exp, FieldElem] = {}
        for e, c in terms.items():
            m = e[i]
            if not m:
                if e in out:
                    out[e] = out[e] + c
                else:
                    out[e] = c
                continue
            for j, s in enumerate(table(m)):
                if s:
                    ne = e[:i] + (j,) + e[i + 1:]
                    v = c * s
                    if ne in out:
                        out[ne] = out[ne] + v
                    else:
                        out[ne] = v
        terms = {e: c for e, c in out.items() if c}
    return terms


def to_binomial_basis(p: MultiPoly) -> Dict[Exp, FieldElem]:
    """Coefficients c_e with p = sum_e c_e prod_i C(vars_i, e_i)."""
    return _transform(p.vars, p.terms, _power_to_binom)


def from_binomial_basis(vars: Sequence[str], coeffs: Mapping[Exp, FieldElem]) -> MultiPoly:
    vs = tuple(vars)
    if _sorted_vars(vs) != vs:
        raise DomainError("binomial-basis variables must be in canonical order")
    return MultiPoly._raw(vs, _transform(vs, dict(coeffs), _binom_to_power))


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def parse_poly(text: str) -> MultiPoly:
    """Parse an expression with + - * / ^ (or **), parentheses and implicit products.

    The name ``rho`` denotes the sixth root of unity; division is only by
    constants.
    """
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise DomainError("cannot parse polynomial near %r" % text[pos:pos + 10])
        num, name, op = m.groups()
        if num is not None:
            tokens.append(("num", int(num)))
        elif name is not None:
            tokens.append(("name", name))
        else:
            tokens.append(("op", "^" if op == "**" else op))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    parser = _Parser(tokens)
    result = parser.expr()
    if parser.i != len(tokens):
        raise DomainError("trailing input in polynomial %r" % text)
    return result


class _Parser:
    def __init__(self, tokens):
        self.t = tokens
        self.i = 0

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self):
        tok = self.t[self.i]
        self.i += 1
        return tok

    def expr(self):
        sign = 1
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        result = self.term()
        if sign < 0:
            result = -result
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                result = result + rhs if val == "+" else result - rhs
            else:
                return result

    def term(self):
        result = self.power()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                result = result * self.power()
            elif kind == "op" and val == "/":
                self.take()
                den = self.power()
                result = result / den
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                result = result * self.power()
            else:
                return result

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            k, v = self.take()
            neg = False
            if k == "op" and v == "-":
                neg = True
                k, v = self.take()
            if k != "num":
                raise DomainError("exponent must be an integer literal")
            if neg:
                if not base.is_constant():
                    raise DomainError("negative exponent on a non-constant")
                return MultiPoly.const(base.constant_value() ** (-v))
            return base ** v
        return base

    def atom(self):
        kind, val = self.take() if self.i < len(self.t) else (None, None)
        if kind == "num":
            return MultiPoly.const(val)
        if kind == "name":
            if val == "rho":
                return MultiPoly.const(FieldElem(0, 1))
            return MultiPoly.var(val)
        if kind == "op" and val == "(":
            inner = self.expr()
            k, v = self.take() if self.i < len(self.t) else (None, None)
            if v != ")":
                raise DomainError("unbalanced parentheses")
            return inner
        if kind == "op" and val == "-":
            return -self.power()
        raise DomainError("unexpected token %r" % (val,))
