"""Young diagrams and a basis-free dimension oracle for weighted chain spaces.

A word of m multivector factors with degrees p_1 >= ... >= p_m is a Young
diagram of area ``w + m`` and length ``m``; the multiplicity vector
``[k_1, k_2, ...]`` counts factors of each degree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

from .polyvector import dim_multivector_space


@dataclass(frozen=True, order=True)
class Partition:
    """Young diagram stored as non-increasing positive parts."""

    parts: Tuple[int, ...]

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(p <= 0 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def area(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> List[int]:
        """[k_1, k_2, ...] with k_i the number of parts equal to i."""
        top = self.parts[0] if self.parts else 0
        k = [0] * top
        for p in self.parts:
            k[p - 1] += 1
        return k

    def tower(self) -> Tuple[int, ...]:
        """Column heights, i.e. the parts of the conjugate."""
        return conjugate(self).parts

    @classmethod
    def from_multiplicities(cls, k: Sequence[int]) -> "Partition":
        parts = []
        for i in range(len(k), 0, -1):
            parts.extend([i] * k[i - 1])
        return cls(tuple(parts))

    @classmethod
    def from_tower(cls, tower: Sequence[int]) -> "Partition":
        return conjugate(cls(tuple(tower)))

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def conjugate(lam: Partition) -> Partition:
    parts = lam.parts
    if not parts:
        return Partition(())
    return Partition(tuple(sum(1 for p in parts if p > i) for i in range(parts[0])))


def enumerate_partitions(area: int, length: int, max_part: Optional[int] = None) -> List[Partition]:
    """Partitions of ``area`` into exactly ``length`` parts, in reverse lex order."""
    return [Partition(p) for p in _partitions(area, length, area if max_part is None else max_part)]


@lru_cache(maxsize=None)
def _partitions(area: int, length: int, cap: int) -> Tuple[Tuple[int, ...], ...]:
    if area < 0 or length < 0:
        return ()
    if length == 0:
        return ((),) if area == 0 else ()
    out = []
    # first part between ceil(area/length) and min(cap, area - (length-1))
    lo = max(1, -(-area // length))
    for first in range(min(cap, area - length + 1), lo - 1, -1):
        for rest in _partitions(area - first, length - 1, first):
            out.append((first,) + rest)
    return tuple(out)


def split_recursive(area: int, length: int) -> Tuple[List[Partition], List[Partition]]:
    """Split diagrams of (area, length) into the B-branch and T-branch.

    B appends a part equal to 1 to each diagram of (area-1, length-1).  T adds
    one box to every part of each diagram of (area-length, length).
    """
    if length < 1 or area < length:
        raise ValueError("need area >= length >= 1")
    b = [Partition(lam.parts + (1,)) for lam in enumerate_partitions(area - 1, length - 1)]
    t = [Partition(tuple(p + 1 for p in lam.parts)) for lam in enumerate_partitions(area - length, length)]
    return b, t


# ---------------------------------------------------------------------------
# dimension oracle

Poly = Dict[int, int]


def _poly_mul(a: Poly, b: Poly, lo: int, hi: int) -> Poly:
    out: Poly = {}
    for i, x in a.items():
        for j, y in b.items():
            if lo <= i + j <= hi:
                out[i + j] = out.get(i + j, 0) + x * y
    return out


@lru_cache(maxsize=None)
def _block_poly(n: int, p: int, k: int, hmax: int) -> Tuple[Tuple[int, int], ...]:
    """Generating polynomial in t^(sum of (h_s - 1)) for k factors of degree p.

    Counts multisets (p even) or sets (p odd) of basis fields of X^p, graded by
    second weight, truncated at ``hmax``.
    """
    symmetric = (p - 1) % 2 == 1
    # table[j] = polynomial for choosing j factors from the levels seen so far
    table: List[Poly] = [{0: 1}] + [{} for _ in range(k)]
    for hh in range(0, hmax + k + 1):
        D = dim_multivector_space(n, p, hh)
        if not D:
            continue
        new = [dict(t) for t in table]
        for j in range(k + 1):
            if not table[j]:
                continue
            for l in range(1, k - j + 1):
                c = comb(D + l - 1, l) if symmetric else comb(D, l)
                if not c:
                    break
                shift = l * (hh - 1)
                for e, v in table[j].items():
                    if e + shift <= hmax:
                        new[j + l][e + shift] = new[j + l].get(e + shift, 0) + c * v
        table = new
    return tuple(sorted(table[k].items()))


def combinatorial_chain_dim(n: int, m: int, w: int, h: int, mode: str = "trivial") -> int:
    """dim of the weighted chain space from Young diagrams and binomials only."""
    if mode == "module":
        return sum(combinatorial_chain_dim(n, m, w, h + 1 - h0) * dim_multivector_space(n, 0, h0)
                   for h0 in range(0, h + m + 2))
    if mode == "extended":
        return _extended_dim(n, m, w, h)
    if mode != "trivial":
        raise ValueError(f"unknown mode {mode!r}")
    if m < 0:
        return 0
    if m == 0:
        return int(w == 0 and h == 0)
    total = 0
    for lam in enumerate_partitions(w + m, m, max_part=n):
        k = lam.multiplicities()
        acc: Poly = {0: 1}
        for p, kp in enumerate(k, start=1):
            if kp:
                acc = _poly_mul(acc, dict(_block_poly(n, p, kp, h + m)), -m, h + m)
        total += acc.get(h, 0)
    return total


def _extended_dim(n: int, m: int, w: int, h: int) -> int:
    # functions carry first weight -1, so the diagram is of area w + m with
    # zero-length rows allowed: split off k_0 function factors
    if m < 0:
        return 0
    total = 0
    for k0 in range(0, m + 1):
        rest = m - k0
        f = dict(_block_poly(n, 0, k0, h + m)) if k0 else {0: 1}
        for lam in enumerate_partitions(w + k0 + rest, rest, max_part=n) if rest else [Partition(())]:
            if not rest and w + k0 != 0:
                continue
            acc = dict(f)
            for p, kp in enumerate(lam.multiplicities(), start=1):
                if kp:
                    acc = _poly_mul(acc, dict(_block_poly(n, p, kp, h + m)), -m, h + m)
            total += acc.get(h, 0)
    return total


def m_upper_bound(n: int, w: int, h: int, mode: str = "trivial") -> int:
    hh = h + 1 if mode == "module" else h
    return max(hh + 2 * w + 2 * n + n * n, 0)


def combinatorial_euler(n: int, w: int, h: int, mode: str = "trivial") -> int:
    """Alternating sum of chain dimensions over the full nonzero range."""
    if mode == "extended":
        raise ValueError("the extended complex is unbounded in m; its Euler number is undefined")
    return sum((-1) ** m * combinatorial_chain_dim(n, m, w, h, mode)
               for m in range(0, m_upper_bound(n, w, h, mode) + 1))


def weight_one_dim(n: int, m: int, h: int) -> int:
    """dim C^{1,h}_m rebuilt from weight zero: one bivector factor split off.

    sum_{h'} dim C^{0,h+1-h'}_{m-1} * dim X^2_{h'}; for m = 1 only the
    h' = h + 1 term survives.
    """
    if m < 1:
        return 0
    return sum(combinatorial_chain_dim(n, m - 1, 0, h + 1 - hp) * dim_multivector_space(n, 2, hp)
               for hp in range(0, h + m + 1))


def weight_two_dim(n: int, m: int, h: int) -> int:
    """dim C^{2,h}_m rebuilt from weight zero.

    Either one 3-vector factor joins a weight-zero word of length m-1, or two
    bivector factors (a symmetric pair) join one of length m-2.
    """
    if m < 1:
        return 0
    total = sum(combinatorial_chain_dim(n, m - 1, 0, h + 1 - hp) * dim_multivector_space(n, 3, hp)
                for hp in range(0, h + m + 1))
    if m >= 2:
        top = h + m + 2
        for a in range(0, top + 1):
            da = dim_multivector_space(n, 2, a)
            if not da:
                continue
            for b in range(a, top + 1):
                pair = comb(da + 1, 2) if a == b else da * dim_multivector_space(n, 2, b)
                if pair:
                    total += combinatorial_chain_dim(n, m - 2, 0, h + 2 - a - b) * pair
    return total
