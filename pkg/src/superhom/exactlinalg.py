"""Exact sparse linear algebra over Q.

Rank uses fraction-free integer elimination.  Rows are first cleared of
denominators (row scaling does not change rank), the matrix is split into
connected blocks of its row/column incidence graph, and each block is reduced
with a Markowitz-style pivot: shortest remaining row, then the column with the
fewest entries, then the smallest absolute value.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Tuple

Number = object  # int or Fraction


def _normalize(v):
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v.numerator)
    if isinstance(v, (int, Fraction)):
        return v
    return Fraction(v)


class SparseRationalMatrix:
    """Immutable sparse matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int, entries: Optional[Dict[Tuple[int, int], Number]] = None):
        if rows < 0 or cols < 0:
            raise ValueError("shape must be non-negative")
        clean = {}
        for (r, c), v in (entries or {}).items():
            if not (0 <= r < rows and 0 <= c < cols):
                raise IndexError(f"entry ({r}, {c}) outside {rows}x{cols}")
            v = _normalize(v)
            if v:
                clean[(r, c)] = v
        self.rows = rows
        self.cols = cols
        self._entries = clean

    @classmethod
    def from_triplets(cls, rows: int, cols: int, triplets: Iterable[Tuple[int, int, Number]]):
        entries = {}
        for r, c, v in triplets:
            if (r, c) in entries:
                raise ValueError(f"duplicate entry at ({r}, {c})")
            entries[(r, c)] = v
        return cls(rows, cols, entries)

    @classmethod
    def identity(cls, k: int) -> "SparseRationalMatrix":
        return cls(k, k, {(i, i): 1 for i in range(k)})

    @classmethod
    def zero(cls, rows: int, cols: int) -> "SparseRationalMatrix":
        return cls(rows, cols)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    @property
    def nnz(self) -> int:
        return len(self._entries)

    def entries(self) -> Dict[Tuple[int, int], Number]:
        return dict(self._entries)

    def triplets(self) -> List[Tuple[int, int, Number]]:
        return [(r, c, v) for (r, c), v in sorted(self._entries.items())]

    def __getitem__(self, rc: Tuple[int, int]):
        return self._entries.get(rc, 0)

    def transpose(self) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._entries.items()})

    def is_zero(self) -> bool:
        return not self._entries

    def to_dense(self) -> List[List[Number]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._entries.items():
            out[r][c] = v
        return out

    def __matmul__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, Number]]] = {}
        for (k, c), v in other._entries.items():
            by_row.setdefault(k, []).append((c, v))
        out: Dict[Tuple[int, int], Number] = {}
        for (r, k), a in self._entries.items():
            for c, b in by_row.get(k, ()):
                out[(r, c)] = out.get((r, c), 0) + a * b
        return SparseRationalMatrix(self.rows, other.cols, out)

    def __add__(self, other: "SparseRationalMatrix") -> "SparseRationalMatrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} + {other.shape}")
        out = dict(self._entries)
        for k, v in other._entries.items():
            out[k] = out.get(k, 0) + v
        return SparseRationalMatrix(self.rows, self.cols, out)

    def scale(self, c) -> "SparseRationalMatrix":
        return SparseRationalMatrix(self.rows, self.cols, {k: c * v for k, v in self._entries.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, SparseRationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __repr__(self) -> str:
        return f"SparseRationalMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    # dump format: "rows cols nnz" then one "r c value" line per entry
    def dumps(self) -> str:
        lines = [f"{self.rows} {self.cols} {self.nnz}"]
        lines += [f"{r} {c} {v}" for r, c, v in self.triplets()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "SparseRationalMatrix":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty matrix dump")
        rows, cols, nnz = (int(x) for x in lines[0].split())
        body = lines[1:]
        if len(body) != nnz:
            raise ValueError(f"header says {nnz} entries, found {len(body)}")
        trip = []
        for ln in body:
            r, c, v = ln.split()
            trip.append((int(r), int(c), Fraction(v)))
        return cls.from_triplets(rows, cols, trip)


# ---------------------------------------------------------------------------
# rank

def _integer_rows(M: SparseRationalMatrix) -> List[Dict[int, int]]:
    rows: Dict[int, Dict[int, Number]] = {}
    for (r, c), v in M._entries.items():
        rows.setdefault(r, {})[c] = v
    out = []
    for row in rows.values():
        dens = [v.denominator for v in row.values() if isinstance(v, Fraction)]
        if dens:
            L = lcm(*dens)
            row = {c: int(v * L) for c, v in row.items()}
        out.append(row)
    return out


def _components(rows: List[Dict[int, int]]) -> List[List[Dict[int, int]]]:
    """Group rows into blocks that share no columns with other blocks."""
    parent: Dict[int, int] = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for row in rows:
        cols = iter(row)
        first = next(cols)
        parent.setdefault(first, first)
        ra = find(first)
        for c in cols:
            parent.setdefault(c, c)
            rb = find(c)
            if rb != ra:
                parent[rb] = ra
    groups: Dict[int, List[Dict[int, int]]] = {}
    for row in rows:
        groups.setdefault(find(next(iter(row))), []).append(row)
    return list(groups.values())


def _content(row: Dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _block_rank(rows: List[Dict[int, int]], prime: Optional[int] = None) -> int:
    active: Dict[int, Dict[int, int]] = dict(enumerate(rows))
    col_rows: Dict[int, set] = {}
    for i, row in active.items():
        for c in row:
            col_rows.setdefault(c, set()).add(i)
    rank = 0
    while active:
        pr = min(active, key=lambda i: (len(active[i]), i))
        prow = active.pop(pr)
        for c in prow:
            col_rows[c].discard(pr)
        if not prow:
            continue
        pc = min(prow, key=lambda c: (len(col_rows[c]), abs(prow[c]), c))
        a = prow[pc]
        rank += 1
        for r in list(col_rows[pc]):
            row = active[r]
            b = row[pc]
            if prime is None:
                g = gcd(a, b)
                fa, fb = a // g, b // g
            else:
                fa, fb = a, b
            new: Dict[int, int] = {}
            for c, v in row.items():
                new[c] = fa * v
            for c, v in prow.items():
                new[c] = new.get(c, 0) - fb * v
            if prime is None:
                new = {c: v for c, v in new.items() if v}
                g = _content(new)
                if g > 1:
                    new = {c: v // g for c, v in new.items()}
            else:
                new = {c: v % prime for c, v in new.items() if v % prime}
            for c in row:
                if c not in new:
                    col_rows[c].discard(r)
            for c in new:
                if c not in row:
                    col_rows.setdefault(c, set()).add(r)
            if new:
                active[r] = new
            else:
                del active[r]
    return rank


def rank(M: SparseRationalMatrix, prime: Optional[int] = None) -> int:
    """Exact rank over Q, or over GF(prime) when ``prime`` is given.

    The modular rank never exceeds the rational one.
    """
    if M.is_zero():
        return 0
    rows = _integer_rows(M)
    if prime is not None:
        rows = [{c: v % prime for c, v in row.items() if v % prime} for row in rows]
        rows = [row for row in rows if row]
        if not rows:
            return 0
    return sum(_block_rank(block, prime) for block in _components(rows))


def kernel_dim(M: SparseRationalMatrix) -> int:
    return M.cols - rank(M)


def compose_is_zero(A: SparseRationalMatrix, B: SparseRationalMatrix) -> bool:
    """True iff the exact product A @ B vanishes."""
    if A.cols != B.rows:
        raise ValueError(f"shape mismatch: {A.shape} @ {B.shape}")
    return (A @ B).is_zero()
