"""Pfaffians of upper-triangular arrays.

Entries may be ints, rationals, :class:`FieldElem` or :class:`MultiPoly`;
only ``+``, ``-`` and ``*`` are needed (elimination also needs ``/``).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .errors import DomainError, ResourceError

__all__ = [
    "TriArray",
    "pf_matchings",
    "pf_laplace",
    "pf_elimination",
    "det",
    "pf_squared_is_det",
    "DEFAULT_MATCHING_CAP",
]

DEFAULT_MATCHING_CAP = 12


def _is_zero(x) -> bool:
    if hasattr(x, "is_zero"):
        return x.is_zero()
    return x == 0


class TriArray:
    """Upper-triangular array A[i][j], 1 <= i < j <= order (1-based API)."""

    __slots__ = ("order", "_rows", "zero")

    def __init__(self, order: int, entries, zero=0):
        if order < 0:
            raise DomainError("order must be non-negative")
        self.order = order
        self.zero = zero
        rows: List[List] = [[zero] * order for _ in range(order)]
        if callable(entries):
            for i in range(1, order + 1):
                for j in range(i + 1, order + 1):
                    rows[i - 1][j - 1] = entries(i, j)
        elif isinstance(entries, dict):
            for (i, j), v in entries.items():
                if not 1 <= i < j <= order:
                    raise DomainError("entry (%d,%d) outside the upper triangle" % (i, j))
                rows[i - 1][j - 1] = v
        else:
            # nested rows: entries[i][k] is A[i+1][i+k+2] (rows shrink), or a full square matrix
            entries = list(entries)
            for i, row in enumerate(entries):
                row = list(row)
                if len(row) == order:
                    for j in range(i + 1, order):
                        rows[i][j] = row[j]
                else:
                    for k, v in enumerate(row):
                        rows[i][i + 1 + k] = v
        self._rows = rows

    def get(self, i: int, j: int):
        """Skew-symmetric extension, 1-based."""
        if i == j:
            return self.zero
        if i < j:
            return self._rows[i - 1][j - 1]
        return -self._rows[j - 1][i - 1]

    def with_vector(self, p: int, values: Sequence) -> "TriArray":
        """Replace row/column p by ``values`` (indexed 1..order, entry p ignored)."""
        new = TriArray(self.order, {}, self.zero)
        new._rows = [list(r) for r in self._rows]
        for q in range(1, self.order + 1):
            if q == p:
                continue
            v = values[q - 1]
            if p < q:
                new._rows[p - 1][q - 1] = v
            else:
                new._rows[q - 1][p - 1] = -v
        return new

    def vector(self, p: int) -> List:
        return [self.get(p, q) for q in range(1, self.order + 1)]

    def square(self) -> List[List]:
        return [[self.get(i, j) for j in range(1, self.order + 1)] for i in range(1, self.order + 1)]

    def map(self, f: Callable) -> "TriArray":
        new = TriArray(self.order, {}, f(self.zero))
        new._rows = [[f(v) for v in r] for r in self._rows]
        return new

    def to_json(self, fmt: Callable = str) -> List[List[str]]:
        return [[fmt(self._rows[i][j]) for j in range(i + 1, self.order)] for i in range(self.order)]


def _check_even(a: TriArray):
    if a.order % 2:
        raise DomainError("Pfaffian needs even order, got %d" % a.order)


def pf_matchings(a: TriArray, cap: int = DEFAULT_MATCHING_CAP):
    """Signed sum over perfect matchings, straight from the definition."""
    _check_even(a)
    if a.order > cap:
        raise ResourceError("matching expansion capped at order %d (got %d)" % (cap, a.order))
    if a.order == 0:
        return _one_like(a.zero)
    total = a.zero

    def rec(remaining: Tuple[int, ...], sign: int, acc):
        nonlocal total
        if not remaining:
            total = total + acc if sign > 0 else total - acc
            return
        i = remaining[0]
        for pos in range(1, len(remaining)):
            j = remaining[pos]
            v = a.get(i, j)
            if _is_zero(v):
                continue
            rest = remaining[1:pos] + remaining[pos + 1:]
            # moving j next to i passes pos-1 indices
            rec(rest, sign * (-1 if (pos - 1) % 2 else 1), v if acc is None else acc * v)

    rec(tuple(range(1, a.order + 1)), 1, None)
    return total


def _one_like(zero):
    try:
        return zero + 1
    except TypeError:  # pragma: no cover
        return 1


def pf_laplace(a: TriArray, expand_index: Optional[int] = None):
    """Laplace expansion along row/column ``expand_index`` (default: the last).

    Minors are memoized on their index sets and always expanded along their
    last index.
    """
    _check_even(a)
    n = a.order
    if n == 0:
        return _one_like(a.zero)
    if expand_index is None:
        expand_index = n
    if not 1 <= expand_index <= n:
        raise DomainError("expand_index must lie in 1..%d" % n)
    memo: Dict[int, object] = {0: _one_like(a.zero)}

    def pf_set(mask: int):
        if mask in memo:
            return memo[mask]
        idx = [i for i in range(1, n + 1) if mask >> (i - 1) & 1]
        memo[mask] = _expand(idx, len(idx) - 1, mask)
        return memo[mask]

    def _expand(idx: List[int], ppos: int, mask: int):
        p = idx[ppos]
        total = a.zero
        for qpos, q in enumerate(idx):
            if q == p:
                continue
            v = a.get(p, q)
            if _is_zero(v):
                continue
            minor = pf_set(mask & ~(1 << (p - 1)) & ~(1 << (q - 1)))
            if _is_zero(minor):
                continue
            # 1-based positions inside the current index set
            sgn = (ppos + qpos + 1) + (1 if ppos > qpos else 0)
            term = v * minor
            total = total - term if sgn % 2 else total + term
        return total

    full = (1 << n) - 1
    return _expand(list(range(1, n + 1)), expand_index - 1, full)


def pf_elimination(a: TriArray):
    """Pfaffian by skew-symmetric Gaussian elimination; entries must form a field."""
    _check_even(a)
    n = a.order
    m = a.square()
    result = _one_like(a.zero)
    sign = 1
    for k in range(0, n, 2):
        piv = None
        for j in range(k + 1, n):
            if not _is_zero(m[k][j]):
                piv = j
                break
        if piv is None:
            return a.zero
        if piv != k + 1:
            # swap indices piv and k+1 (rows and columns) flips the sign
            m[piv], m[k + 1] = m[k + 1], m[piv]
            for row in m:
                row[piv], row[k + 1] = row[k + 1], row[piv]
            sign = -sign
        pv = m[k][k + 1]
        result = result * pv
        u, v = m[k], m[k + 1]
        for i in range(k + 2, n):
            ui, vi = u[i], v[i]
            if _is_zero(ui) and _is_zero(vi):
                continue
            row = m[i]
            for j in range(k + 2, n):
                row[j] = row[j] + (vi * u[j] - ui * v[j]) / pv
    return result if sign > 0 else -result


def det(matrix: Sequence[Sequence]):
    """Determinant by cofactor expansion memoized on column subsets."""
    n = len(matrix)
    if n == 0:
        return 1
    zero = matrix[0][0] - matrix[0][0]
    memo: Dict[Tuple[int, int], object] = {}

    def rec(row: int, cols: int):
        if row == n:
            return zero + 1
        key = (row, cols)
        if key in memo:
            return memo[key]
        total = zero
        k = 0
        for c in range(n):
            if cols >> c & 1:
                v = matrix[row][c]
                if not _is_zero(v):
                    sub = rec(row + 1, cols & ~(1 << c))
                    total = total + v * sub if k % 2 == 0 else total - v * sub
                k += 1
        memo[key] = total
        return total

    return rec(0, (1 << n) - 1)


def pf_squared_is_det(a: TriArray) -> bool:
    pf = pf_laplace(a)
    return pf * pf == det(a.square())
