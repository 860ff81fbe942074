"""Exact arithmetic in Q(rho), rho a primitive sixth root of unity.

Elements are stored as ``a + b*rho`` with ``a, b`` arbitrary-precision
rationals and reduced through ``rho**2 = rho - 1``.
"""

from __future__ import annotations

from gmpy2 import mpq, is_square, isqrt

from .errors import DomainError

__all__ = ["FieldElem", "RHO", "ZERO", "ONE", "as_field", "parse_rational", "format_rational"]


def _q(x) -> mpq:
    if isinstance(x, str):
        return parse_rational(x)
    return mpq(x)


def parse_rational(text: str) -> mpq:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) == 0:
            raise DomainError("zero denominator in %r" % text)
        return mpq(int(num), int(den))
    return mpq(int(text))


def format_rational(q: mpq) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


class FieldElem:
    __slots__ = ("a", "b")

    def __init__(self, a=0, b=0):
        self.a = a if type(a) is type(_MPQ0) else _q(a)
        self.b = b if type(b) is type(_MPQ0) else _q(b)

    # construction helpers -------------------------------------------------
    @staticmethod
    def _raw(a: mpq, b: mpq) -> "FieldElem":
        e = object.__new__(FieldElem)
        e.a = a
        e.b = b
        return e

    @property
    def rat_part(self) -> mpq:
        return self.a

    @property
    def rho_part(self) -> mpq:
        return self.b

    def is_rational(self) -> bool:
        return not self.b

    def is_zero(self) -> bool:
        return not self.a and not self.b

    def __bool__(self) -> bool:
        return bool(self.a) or bool(self.b)

    # arithmetic ------------------------------------------------------------
    def __add__(self, other):
        if type(other) is not FieldElem:
            other = as_field(other)
        return FieldElem._raw(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        if type(other) is not FieldElem:
            other = as_field(other)
        return FieldElem._raw(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return as_field(other) - self

    def __neg__(self):
        return FieldElem._raw(-self.a, -self.b)

    def __mul__(self, other):
        if type(other) is not FieldElem:
            if isinstance(other, (int, type(_MPQ0))):
                return FieldElem._raw(self.a * other, self.b * other)
            other = as_field(other)
        a, b, c, d = self.a, self.b, other.a, other.b
        if not b and not d:
            return FieldElem._raw(a * c, _MPQ0)
        bd = b * d
        return FieldElem._raw(a * c - bd, a * d + b * c + bd)

    __rmul__ = __mul__

    def conjugate(self) -> "FieldElem":
        """Image under rho -> rho**5 = 1 - rho."""
        return FieldElem._raw(self.a + self.b, -self.b)

    def norm(self) -> mpq:
        a, b = self.a, self.b
        return a * a + a * b + b * b

    def inverse(self) -> "FieldElem":
        n = self.norm()
        if not n:
            raise DomainError("division by zero in Q(rho)")
        c = self.conjugate()
        return FieldElem._raw(c.a / n, c.b / n)

    def __truediv__(self, other):
        if type(other) is not FieldElem:
            other = as_field(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return as_field(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if type(other) is not FieldElem:
            try:
                other = as_field(other)
            except TypeError:
                return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b))

    def sqrt(self) -> "FieldElem":
        """Square root in Q(rho); rational squares get the non-negative root."""
        a, b = self.a, self.b
        if not a and not b:
            return ZERO
        if not b:
            if a > 0 and _is_rational_square(a):
                return FieldElem._raw(_rational_sqrt(a), _MPQ0)
            # sqrt(-3) = 2*rho - 1
            t = -4 * a / 3
            if t > 0 and _is_rational_square(t):
                s = _rational_sqrt(t)
                return FieldElem._raw(-s / 2, s)
            raise DomainError("%s is not a square in Q(rho)" % self)
        # general case through norm and trace of the root
        nrm = self.norm()
        if not _is_rational_square(nrm):
            raise DomainError("%s is not a square in Q(rho)" % self)
        n = _rational_sqrt(nrm)
        tr = 2 * a + b
        t2 = tr + 2 * n
        b2 = (2 * n - tr) / 3
        if t2 < 0 or b2 < 0 or not _is_rational_square(t2) or not _is_rational_square(b2):
            raise DomainError("%s is not a square in Q(rho)" % self)
        t, bb = _rational_sqrt(t2), _rational_sqrt(b2)
        for sb in (bb, -bb):
            w = FieldElem._raw((t - sb) / 2, sb)
            if w * w == self:
                return w if (w.a > 0 or (not w.a and w.b > 0)) else -w
        raise DomainError("%s is not a square in Q(rho)" % self)

    # formatting ------------------------------------------------------------
    def __str__(self):
        if not self.b:
            return format_rational(self.a)
        rb = format_rational(self.b)
        if not self.a:
            return rb + "*rho"
        sign = "" if self.b < 0 else "+"
        return "%s%s%s*rho" % (format_rational(self.a), sign, rb)

    def __repr__(self):
        return "FieldElem(%s)" % self

    def to_json(self) -> dict:
        return {"rat": format_rational(self.a), "rho": format_rational(self.b)}

    @classmethod
    def from_json(cls, obj) -> "FieldElem":
        if isinstance(obj, dict):
            return cls(parse_rational(str(obj.get("rat", "0"))), parse_rational(str(obj.get("rho", "0"))))
        return as_field(obj)

    @classmethod
    def parse(cls, text: str) -> "FieldElem":
        """Parse the canonical text form ``p/q`` or ``p/q+r/s*rho``."""
        text = text.replace(" ", "")
        if not text.endswith("*rho"):
            return cls(parse_rational(text), 0)
        body = text[: -len("*rho")]
        cut = max(body.rfind("+"), body.rfind("-"))
        if cut <= 0:
            return cls(0, parse_rational(body))
        return cls(parse_rational(body[:cut]), parse_rational(body[cut:]))


_MPQ0 = mpq(0)


def _is_rational_square(q: mpq) -> bool:
    return q >= 0 and is_square(q.numerator) and is_square(q.denominator)


def _rational_sqrt(q: mpq) -> mpq:
    return mpq(isqrt(q.numerator), isqrt(q.denominator))


def as_field(x) -> FieldElem:
    if type(x) is FieldElem:
        return x
    if isinstance(x, (int, type(_MPQ0))):
        return FieldElem._raw(mpq(x), _MPQ0)
    if isinstance(x, str):
        return FieldElem.parse(x)
    try:
        from fractions import Fraction

        if isinstance(x, Fraction):
            return FieldElem._raw(mpq(x.numerator, x.denominator), _MPQ0)
    except ImportError:  # pragma: no cover
        pass
    raise TypeError("cannot convert %r to FieldElem" % (x,))


ZERO = FieldElem._raw(mpq(0), mpq(0))
ONE = FieldElem._raw(mpq(1), mpq(0))
RHO = FieldElem._raw(mpq(0), mpq(1))
