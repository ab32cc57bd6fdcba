"""Super-wedge words on graded generators and weighted chain bases.

Generators of the Schouten algebra are basis multivector fields, named by
``GeneratorId(p, h, idx)``.  Their super degree is ``y = p - 1``; two adjacent
factors swap with sign ``(-1)^(1 + y y')``.  So factors with even ``p`` are
symmetric and factors with odd ``p`` are skew (and square to zero).
"""
from __future__ import annotations

import json
import os
from bisect import bisect_left
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb
from pathlib import Path
from typing import Callable, Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple

from .polyvector import dim_multivector_space

CACHE_VERSION = 1
CACHE_ENV = "SUPERHOM_CACHE_DIR"
MODES = ("trivial", "module", "extended")


class GeneratorId(NamedTuple):
    p: int
    h: int
    idx: int

    @property
    def y(self) -> int:
        return self.p - 1

    @property
    def weight(self) -> Tuple[int, int]:
        return self.p - 1, self.h - 1


SuperWord = Tuple[GeneratorId, ...]


def swap_sign(p: int, q: int) -> int:
    """Sign for transposing adjacent factors of multivector degrees p and q."""
    return -1 if (1 + (p - 1) * (q - 1)) % 2 else 1


def graded_sort(factors: Sequence, ydeg: Callable[[object], int]):
    """Sort ``factors`` with super-commutation signs.

    ``ydeg`` gives the super degree of a factor.  Returns ``(sign, tuple)`` or
    ``None`` when a factor of even super degree repeats.
    """
    items = list(factors)
    sign = 1
    # insertion sort; every adjacent transposition contributes its own sign
    for i in range(1, len(items)):
        cur = items[i]
        yc = ydeg(cur)
        j = i - 1
        while j >= 0 and items[j] > cur:
            if (1 + ydeg(items[j]) * yc) % 2:
                sign = -sign
            items[j + 1] = items[j]
            j -= 1
        items[j + 1] = cur
    for a, b in zip(items, items[1:]):
        if a == b and ydeg(a) % 2 == 0:
            return None
    return sign, tuple(items)


def _gen_y(g: GeneratorId) -> int:
    return g.p - 1


def canonicalize(factors: Iterable[GeneratorId]) -> Optional[Tuple[int, SuperWord]]:
    """Signed canonical form of a product of generators, or None if it vanishes."""
    return graded_sort(factors, _gen_y)


def insert_sorted(word: Sequence, g, ydeg: Callable[[object], int]):
    """Canonical form of ``g ∆ word`` where ``word`` is already canonical.

    Returns ``(sign, new_word)`` or ``None``.  Cheaper than a full sort.
    """
    pos = bisect_left(word, g)
    yg = ydeg(g)
    if pos < len(word) and word[pos] == g and yg % 2 == 0:
        return None
    # moving g past each of word[:pos]: sign (-1)^(1 + yg*y_s) each
    parity = 0
    for s in word[:pos]:
        parity += 1 + yg * ydeg(s)
    sign = -1 if parity % 2 else 1
    return sign, tuple(word[:pos]) + (g,) + tuple(word[pos:])


# ---------------------------------------------------------------------------
# chain bases

@dataclass(frozen=True)
class ChainBasis:
    """Ordered basis of a weighted chain space.

    In module mode each entry is a pair ``(word, v)`` with ``v`` a
    ``GeneratorId`` of degree ``p = 0`` (a monomial function).
    """

    n: int
    m: int
    w: int
    h: int
    mode: str
    words: tuple
    index: Dict = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.index is None:
            object.__setattr__(self, "index", {wd: i for i, wd in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def __iter__(self):
        return iter(self.words)

    @property
    def key(self) -> Tuple:
        return (self.n, self.m, self.w, self.h, self.mode, CACHE_VERSION)

    def to_json(self) -> str:
        if self.mode == "module":
            words = [[[list(g) for g in wd], list(v)] for wd, v in self.words]
        else:
            words = [[list(g) for g in wd] for wd in self.words]
        return json.dumps({"key": list(self.key), "words": words}, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "ChainBasis":
        data = json.loads(text)
        n, m, w, h, mode, version = data["key"]
        if version != CACHE_VERSION:
            raise ValueError(f"cache version {version} != {CACHE_VERSION}")
        if mode == "module":
            words = tuple((tuple(GeneratorId(*g) for g in wd), GeneratorId(*v)) for wd, v in data["words"])
        else:
            words = tuple(tuple(GeneratorId(*g) for g in wd) for wd in data["words"])
        return cls(n, m, w, h, mode, words)


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {MODES}")


def _types(n: int, m: int, h: int, pmin: int) -> List[Tuple[int, int]]:
    # each factor contributes h_s - 1 >= -1, so h_s <= h + m
    return [(p, hh) for p in range(pmin, n + 1) for hh in range(0, h + m + 1)
            if dim_multivector_space(n, p, hh)]


def _walk(n: int, m: int, w: int, h: int, pmin: int, emit, combine, unit, zero):
    """Depth-first walk over (p, h) blocks in canonical order.

    ``emit(p, hh, D, l)`` gives the value of one block of ``l`` factors drawn
    from ``D`` generators; ``combine`` folds block values along a path.
    """
    types = _types(n, m, h, pmin)

    def rec(t, rem_m, rem_w, rem_h):
        if rem_m == 0:
            return unit if (rem_w == 0 and rem_h == 0) else zero
        if t == len(types):
            return zero
        p = types[t][0]
        if rem_w < rem_m * (p - 1) or rem_w > rem_m * (n - 1) or rem_h < -rem_m:
            return zero
        _, hh = types[t]
        D = dim_multivector_space(n, p, hh)
        sym = (p - 1) % 2 == 1
        out = rec(t + 1, rem_m, rem_w, rem_h)
        top = rem_m if sym else min(rem_m, D)
        for l in range(1, top + 1):
            rest = rec(t + 1, rem_m - l, rem_w - l * (p - 1), rem_h - l * (hh - 1))
            if not rest:
                continue
            out = combine(out, emit(p, hh, D, l), rest)
        return out

    return rec(0, m, w, h)


def _block_count(p, hh, D, l) -> int:
    return comb(D + l - 1, l) if (p - 1) % 2 else comb(D, l)


@lru_cache(maxsize=None)
def _count_from(n: int, p: int, hh: int, rem_m: int, rem_w: int, rem_h: int) -> int:
    """Words the enumerator emits using only blocks at or after (p, hh)."""
    if rem_m == 0:
        return int(rem_w == 0 and rem_h == 0)
    if p > n or rem_h < -rem_m or rem_w < rem_m * (p - 1) or rem_w > rem_m * (n - 1):
        return 0
    if hh > rem_h + rem_m:
        # no factor of this degree fits any more; move on to degree p + 1
        return _count_from(n, p + 1, 0, rem_m, rem_w, rem_h)
    total = _count_from(n, p, hh + 1, rem_m, rem_w, rem_h)
    D = dim_multivector_space(n, p, hh)
    top = rem_m if (p - 1) % 2 else min(rem_m, D)
    for l in range(1, top + 1):
        rest = _count_from(n, p, hh + 1, rem_m - l, rem_w - l * (p - 1), rem_h - l * (hh - 1))
        if rest:
            total += _block_count(p, hh, D, l) * rest
    return total


def _count_words(n: int, m: int, w: int, h: int, pmin: int) -> int:
    if m < 0:
        return 0
    return _count_from(n, pmin, 0, m, w, h)


def _list_words(n: int, m: int, w: int, h: int, pmin: int) -> List[SuperWord]:
    if m < 0:
        return []

    def emit(p, hh, D, l):
        pick = combinations_with_replacement if (p - 1) % 2 else combinations
        return [tuple(GeneratorId(p, hh, i) for i in c) for c in pick(range(D), l)]

    def combine(acc, block, rest):
        return acc + [b + r for b in block for r in rest]

    words = _walk(n, m, w, h, pmin, emit, combine, [()], [])
    return sorted(words)


def function_generators(n: int, h0: int) -> List[GeneratorId]:
    return [GeneratorId(0, h0, i) for i in range(dim_multivector_space(n, 0, h0))]


def _cache_path(cache_dir, key) -> Path:
    n, m, w, h, mode, version = key
    return Path(cache_dir) / f"basis_v{version}_n{n}_m{m}_w{w}_h{h}_{mode}.json"


def enumerate_chain_basis(n: int, m: int, w: int, h: int, mode: str = "trivial",
                          cache_dir: Optional[str] = None) -> ChainBasis:
    """Basis of C^{w,h}_m (trivial), Omega^{w,h}_m (module) or the extended space."""
    _check_mode(mode)
    if n < 1:
        raise ValueError("n must be >= 1")
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    if cache_dir:
        path = _cache_path(cache_dir, (n, m, w, h, mode, CACHE_VERSION))
        if path.exists():
            return ChainBasis.from_json(path.read_text())

    if mode == "trivial":
        words = tuple(_list_words(n, m, w, h, 1))
    elif mode == "extended":
        words = tuple(_list_words(n, m, w, h, 0))
    else:
        out = []
        for h0 in range(0, h + m + 2):
            part = _list_words(n, m, w, h + 1 - h0, 1)
            if part:
                fns = function_generators(n, h0)
                out.extend((wd, v) for wd in part for v in fns)
        words = tuple(sorted(out))
    basis = ChainBasis(n, m, w, h, mode, words)

    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        _cache_path(cache_dir, basis.key).write_text(basis.to_json())
    return basis


def chain_dim(n: int, m: int, w: int, h: int, mode: str = "trivial") -> int:
    """Number of basis words, counted block by block without listing them."""
    _check_mode(mode)
    if mode == "trivial":
        return _count_words(n, m, w, h, 1)
    if mode == "extended":
        return _count_words(n, m, w, h, 0)
    return sum(_count_words(n, m, w, h + 1 - h0, 1) * dim_multivector_space(n, 0, h0)
               for h0 in range(0, h + m + 2))


def m_bounds(n: int, w: int, h: int, mode: str = "trivial") -> Tuple[int, int]:
    """Inclusive range of degrees m that can carry nonzero chains.

    Trivial mode: m <= h + 2w + 2 dim X^1_0 + dim X^1_1.  The coefficient
    function in module mode lowers the chain weight by at least one, so h is
    replaced by h + 1.  The extended complex is infinite; the trivial window is
    returned for it.
    """
    _check_mode(mode)
    hh = h + 1 if mode == "module" else h
    top = hh + 2 * w + 2 * dim_multivector_space(n, 1, 0) + dim_multivector_space(n, 1, 1)
    return 0, max(top, 0)
