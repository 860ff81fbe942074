"""Brute-force enumeration of trapezoids and the sign-matrix bijection."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import DomainError, ResourceError

__all__ = [
    "Trapezoid",
    "SignMatrix",
    "interlacing_rows",
    "enumerate_gt",
    "count_gt",
    "iter_trapezoids",
    "to_sign_matrix",
    "from_sign_matrix",
    "DEFAULT_COUNT_CAP",
]

DEFAULT_COUNT_CAP = 10**9


@dataclass(frozen=True)
class Trapezoid:
    """Rows from top to bottom; row t has n - h + t entries."""

    h: int
    n: int
    rows: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        if len(rows) != self.h + 1:
            raise DomainError("an (h,n)-trapezoid has h+1 rows")
        for t, r in enumerate(rows):
            if len(r) != self.n - self.h + t:
                raise DomainError("row %d should have %d entries" % (t, self.n - self.h + t))
        for t in range(1, len(rows)):
            below, above = rows[t], rows[t - 1]
            for i, v in enumerate(above):
                if not below[i] <= v <= below[i + 1]:
                    raise DomainError("rows %d and %d do not interlace" % (t - 1, t))

    @property
    def bottom(self) -> Tuple[int, ...]:
        return self.rows[-1]

    def is_monotone(self) -> bool:
        return all(r[i] < r[i + 1] for r in self.rows for i in range(len(r) - 1))

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.rows]


@dataclass(frozen=True)
class SignMatrix:
    """h x width matrix of the bijection; ``positions`` is the bottom row."""

    h: int
    width: int
    entries: Tuple[Tuple[int, ...], ...]
    positions: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(r) for r in self.entries))
        object.__setattr__(self, "positions", tuple(self.positions))

    def violations(self) -> List[str]:
        """Broken invariants, empty when the matrix is valid."""
        bad = []
        if len(self.entries) != self.h:
            bad.append("expected %d rows" % self.h)
        for r, row in enumerate(self.entries):
            if len(row) != self.width:
                bad.append("row %d has wrong width" % r)
                continue
            if any(v not in (-1, 0, 1) for v in row):
                bad.append("row %d has entries outside {-1,0,1}" % r)
            if sum(row) != 1:
                bad.append("row %d does not sum to 1" % r)
            if not _alternates(row):
                bad.append("row %d does not alternate" % r)
        if bad:
            return bad
        pos = set(self.positions)
        if any(not 1 <= p <= self.width for p in pos) or (self.positions and max(self.positions) != self.width):
            bad.append("positions must lie in 1..width and end at width")
        for c in range(self.width):
            col = [self.entries[r][c] for r in range(self.h)]
            if not _alternates(col):
                bad.append("column %d does not alternate" % (c + 1))
            nz = [v for v in col if v]
            if nz:
                want = 1 if (c + 1) in pos else -1
                if nz[-1] != want:
                    bad.append("column %d has wrong bottom-most entry" % (c + 1))
        return bad

    def is_valid(self) -> bool:
        return not self.violations()

    def to_json(self) -> List[List[int]]:
        return [list(r) for r in self.entries]


def _alternates(seq: Sequence[int]) -> bool:
    last = 0
    for v in seq:
        if v:
            if v == last:
                return False
            last = v
    return True


def interlacing_rows(row: Sequence[int], monotone: bool) -> Iterator[Tuple[int, ...]]:
    """All rows l with row[i] <= l[i] <= row[i+1] (strictly increasing if monotone)."""
    ranges = [range(row[i], row[i + 1] + 1) for i in range(len(row) - 1)]
    for cand in product(*ranges):
        if monotone and any(cand[i] >= cand[i + 1] for i in range(len(cand) - 1)):
            continue
        yield cand


@lru_cache(maxsize=None)
def _count(h: int, row: Tuple[int, ...], monotone: bool) -> int:
    if h == 0:
        return 1
    return sum(_count(h - 1, nxt, monotone) for nxt in interlacing_rows(row, monotone))


def _validate(h: int, bottom: Sequence[int], monotone: bool):
    n = len(bottom)
    if h < 0 or h > n:
        raise DomainError("need 0 <= h <= n")
    if any(bottom[i] > bottom[i + 1] for i in range(n - 1)):
        raise DomainError("bottom row must be weakly increasing")
    if monotone and any(bottom[i] == bottom[i + 1] for i in range(n - 1)):
        raise DomainError("monotone enumeration needs a strictly increasing bottom row")


def enumerate_gt(h: int, bottom: Sequence[int], monotone: bool = False, cap: int = DEFAULT_COUNT_CAP) -> int:
    """Number of (h, n)-GT (or monotone) trapezoids with the given bottom row."""
    bottom = tuple(int(b) for b in bottom)
    _validate(h, bottom, monotone)
    value = _count(h, bottom, monotone)
    if value > cap:
        raise ResourceError("count %d exceeds the cap %d" % (value, cap))
    return value


count_gt = enumerate_gt


def iter_trapezoids(h: int, bottom: Sequence[int], monotone: bool = False, cap: int = DEFAULT_COUNT_CAP) -> Iterator[Trapezoid]:
    """Stream every trapezoid; raises ResourceError once ``cap`` is passed."""
    bottom = tuple(int(b) for b in bottom)
    _validate(h, bottom, monotone)
    n = len(bottom)
    emitted = 0

    def rec(rows: List[Tuple[int, ...]], level: int):
        nonlocal emitted
        if level == h:
            emitted += 1
            if emitted > cap:
                raise ResourceError("more than %d trapezoids" % cap)
            yield Trapezoid(h, n, tuple(reversed(rows)))
            return
        for nxt in interlacing_rows(rows[-1], monotone):
            if _count(h - level - 1, nxt, monotone):
                yield from rec(rows + [nxt], level + 1)

    yield from rec([bottom], 0)


def to_sign_matrix(t: Trapezoid) -> SignMatrix:
    """Row t of the matrix is ind(row t) - ind(row t-1); the top row is dropped."""
    if not t.is_monotone():
        raise DomainError("the bijection needs a monotone trapezoid")
    if t.bottom and t.bottom[0] < 1:
        raise DomainError("entries must be positive")
    width = t.bottom[-1] if t.bottom else 0
    entries = []
    for r in range(1, t.h + 1):
        row = [0] * width
        for v in t.rows[r]:
            row[v - 1] += 1
        for v in t.rows[r - 1]:
            row[v - 1] -= 1
        entries.append(tuple(row))
    return SignMatrix(t.h, width, tuple(entries), t.bottom)


def from_sign_matrix(m: SignMatrix) -> Trapezoid:
    """Peel rows off upwards starting from the bottom row ``positions``."""
    bad = m.violations()
    if bad:
        raise DomainError("invalid sign matrix: " + "; ".join(bad))
    ind = [0] * m.width
    for p in m.positions:
        ind[p - 1] += 1
    rows = [tuple(m.positions)]
    for r in range(m.h - 1, -1, -1):
        ind = [ind[c] - m.entries[r][c] for c in range(m.width)]
        if any(v not in (0, 1) for v in ind):
            raise DomainError("sign matrix does not come from a monotone trapezoid")
        rows.append(tuple(c + 1 for c in range(m.width) if ind[c]))
    n = len(m.positions)
    return Trapezoid(m.h, n, tuple(reversed(rows)))
