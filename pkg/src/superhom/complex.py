"""Weighted chain complexes of the Schouten algebra and their homology.

The boundary of a word ``Y_1 ∆ ... ∆ Y_m ⊗ v`` is

    sum_{i<j} (-1)^(sum_{s<j}(1 + y_j y_s) + sum_{s<i}(1 + y_i y_s)) [Y_j, Y_i] ∆ (Y without i, j) ⊗ v
    + (-1)^(m+1) sum_i (-1)^(sum_{s>i}(1 + y_i y_s)) (Y without i) ⊗ Y_i · v

where ``y`` is the super degree.  The second line only appears in module
mode, where ``V`` is the space of polynomial functions and ``Y · f = Y(f)``
for vector fields (zero for higher multivectors).
"""
from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from . import polyvector as pv
from .exactlinalg import SparseRationalMatrix, compose_is_zero, rank
from .superchain import (CACHE_ENV, CACHE_VERSION, ChainBasis, GeneratorId, chain_dim,
                         enumerate_chain_basis, insert_sorted, m_bounds, _check_mode)

Chain = Dict[object, Fraction]


# ---------------------------------------------------------------------------
# algebras

class SchoutenAlgebra:
    """Basis multivector fields on R^n as generators of a pre Lie superalgebra."""

    def __init__(self, n: int):
        self.n = n
        self.bracket = lru_cache(maxsize=None)(self._bracket)
        self.act = lru_cache(maxsize=None)(self._act)

    @staticmethod
    def ydeg(g: GeneratorId) -> int:
        return g.p - 1

    def field(self, g: GeneratorId) -> pv.PolyVector:
        key = pv.basis_keys(self.n, g.p, g.h)[g.idx]
        return pv.PolyVector(self.n, {key: 1})

    def decompose(self, v: pv.PolyVector) -> List[Tuple[GeneratorId, Fraction]]:
        """Express a multivector field in generators."""
        out = []
        for (alpha, I), c in v.items():
            p, h = len(I), sum(alpha)
            out.append((GeneratorId(p, h, pv.basis_index(self.n, p, h)[(alpha, I)]), c))
        return out

    def _bracket(self, a: GeneratorId, b: GeneratorId):
        res = pv.schouten(self.field(a), self.field(b))
        return tuple((g, _int_or_frac(c)) for g, c in self.decompose(res))

    def _act(self, g: GeneratorId, v: GeneratorId):
        if g.p != 1:
            return ()
        return self._bracket(g, v)

    def euler_generators(self) -> List[Tuple[GeneratorId, int]]:
        return [(g, int(c)) for g, c in self.decompose(pv.euler_field(self.n))]


def _int_or_frac(c):
    return int(c) if c.denominator == 1 else c


# ---------------------------------------------------------------------------
# boundary

def _add(out: Chain, key, c) -> None:
    v = out.get(key, 0) + c
    if v:
        out[key] = v
    else:
        out.pop(key, None)


def word_boundary(alg, word: Sequence, v=None, flip: bool = False) -> Chain:
    """Boundary of a canonical word (tensored with ``v`` in module mode).

    ``flip`` selects the opposite sign for the bracket term.  In module mode
    the action term is negated with it: flipping the bracket term alone
    breaks d∘d = 0, so the flag amounts to the global sign -d and leaves
    every rank unchanged.
    """
    ydeg = alg.ydeg
    m = len(word)
    ys = [ydeg(g) for g in word]
    # pre[i] = sum_{s<i} (1 + y_i y_s)
    pre = [sum(1 + ys[i] * ys[s] for s in range(i)) for i in range(m)]
    out: Chain = {}
    for j in range(1, m):
        for i in range(j):
            br = alg.bracket(word[j], word[i])
            if not br:
                continue
            sign = -1 if (pre[j] + pre[i] + flip) % 2 else 1
            rest = word[:i] + word[i + 1:j] + word[j + 1:]
            for g, c in br:
                res = insert_sorted(rest, g, ydeg)
                if res is None:
                    continue
                key = res[1] if v is None else (res[1], v)
                _add(out, key, sign * res[0] * c)
    if v is not None:
        for i in range(m):
            acted = alg.act(word[i], v)
            if not acted:
                continue
            post = sum(1 + ys[i] * ys[s] for s in range(i + 1, m))
            sign = -1 if (m + 1 + post + flip) % 2 else 1
            rest = word[:i] + word[i + 1:]
            for u, c in acted:
                _add(out, (rest, u), sign * c)
    return out


def chain_boundary(alg, chain: Chain, module: bool = False, flip: bool = False) -> Chain:
    out: Chain = {}
    for key, c in chain.items():
        word, v = key if module else (key, None)
        for k, d in word_boundary(alg, word, v, flip).items():
            _add(out, k, c * d)
    return out


def assemble(alg, src: Sequence, dst_index: Dict, module: bool = False, flip: bool = False) -> SparseRationalMatrix:
    """Matrix of the boundary from ``src`` (columns) to ``dst_index`` (rows)."""
    entries = {}
    for col, key in enumerate(src):
        word, v = key if module else (key, None)
        for k, c in word_boundary(alg, word, v, flip).items():
            try:
                row = dst_index[k]
            except KeyError:
                raise AssertionError(f"boundary left the weighted chain space: {k}") from None
            entries[(row, col)] = c
    return SparseRationalMatrix(len(dst_index), len(src), entries)


@lru_cache(maxsize=16)
def _algebra(n: int) -> SchoutenAlgebra:
    return SchoutenAlgebra(n)


def _basis(n, m, w, h, mode) -> ChainBasis:
    if m < 0:
        return ChainBasis(n, m, w, h, mode, ())
    return enumerate_chain_basis(n, m, w, h, mode)


def _matrix_cache_path(cache_dir, key) -> Path:
    digest = hashlib.sha256(json.dumps(key).encode()).hexdigest()[:24]
    return Path(cache_dir) / f"matrix_{digest}.txt"


def boundary_matrix(n: int, m: int, w: int, h: int, mode: str = "trivial",
                    flip: bool = False, cache_dir: Optional[str] = None) -> SparseRationalMatrix:
    """Matrix of d_m: C_m -> C_{m-1} in the enumerated bases."""
    _check_mode(mode)
    cache_dir = cache_dir or os.environ.get(CACHE_ENV)
    key = ["boundary", n, m, w, h, mode, bool(flip), CACHE_VERSION]
    if cache_dir:
        path = _matrix_cache_path(cache_dir, key)
        if path.exists():
            return SparseRationalMatrix.loads(path.read_text())
    src = _basis(n, m, w, h, mode)
    dst = _basis(n, m - 1, w, h, mode)
    M = assemble(_algebra(n), src.words, dst.index, module=(mode == "module"), flip=flip)
    if cache_dir:
        Path(cache_dir).mkdir(parents=True, exist_ok=True)
        _matrix_cache_path(cache_dir, key).write_text(M.dumps())
    return M


# ---------------------------------------------------------------------------
# homology

@dataclass(frozen=True)
class HomologyRow:
    m: int
    dim_chain: int
    rank_out: int
    rank_in: int

    @property
    def betti(self) -> int:
        return self.dim_chain - self.rank_out - self.rank_in


@dataclass(frozen=True)
class HomologySummary:
    key: Tuple
    rows: Tuple[HomologyRow, ...]
    euler: int
    # False when the m-range is a window of an unbounded or truncated complex
    complete: bool = True

    @property
    def dims(self) -> Dict[int, int]:
        return {r.m: r.dim_chain for r in self.rows}

    @property
    def bettis(self) -> Dict[int, int]:
        return {r.m: r.betti for r in self.rows}

    @property
    def ranks_in(self) -> Dict[int, int]:
        return {r.m: r.rank_in for r in self.rows}

    def to_json(self) -> dict:
        return {
            "key": list(self.key),
            "rows": [{"m": r.m, "dim": r.dim_chain, "rank_out": r.rank_out,
                      "rank_in": r.rank_in, "betti": r.betti} for r in self.rows],
            "euler": self.euler,
            "complete": self.complete,
        }


def summarize(key, dims: Dict[int, int], ranks: Dict[int, int], complete: bool = True) -> HomologySummary:
    """Assemble rows from chain dims and ranks of d_m (keyed by source degree).

    Rows of dimension zero are dropped; an entirely empty range keeps its
    lowest row so the table is never blank.
    """
    ms = sorted(dims)
    rows = []
    for m in ms:
        row = HomologyRow(m, dims[m], ranks.get(m, 0), ranks.get(m + 1, 0))
        if row.betti < 0:
            raise AssertionError(f"negative Betti number at m={m}: {row}")
        rows.append(row)
    euler = sum((-1) ** r.m * r.dim_chain for r in rows)
    kept = [r for r in rows if r.dim_chain]
    if not kept and rows:
        kept = rows[:1]
    return HomologySummary(tuple(key), tuple(kept), euler, complete)


@lru_cache(maxsize=4096)
def boundary_rank(n: int, m: int, w: int, h: int, mode: str = "trivial") -> int:
    """rank of d_m: C_m -> C_{m-1} (0 when either side is empty)."""
    if m < 1 or not chain_dim(n, m, w, h, mode) or not chain_dim(n, m - 1, w, h, mode):
        return 0
    return rank(boundary_matrix(n, m, w, h, mode))


def _rank_job(args) -> int:
    return boundary_rank(*args)


def betti_number(n: int, m: int, w: int, h: int, mode: str = "trivial") -> int:
    """dim ker d_m - rank d_{m+1}, computed from the two adjacent boundaries only."""
    d = chain_dim(n, m, w, h, mode)
    if not d:
        return 0
    return d - boundary_rank(n, m, w, h, mode) - boundary_rank(n, m + 1, w, h, mode)


def homology_summary(n: int, w: int, h: int, mode: str = "trivial", m_max: Optional[int] = None,
                     jobs: int = 1) -> HomologySummary:
    """Dimensions, ranks and Betti numbers of the (w, h) weighted complex."""
    _check_mode(mode)
    lo, hi = m_bounds(n, w, h, mode)
    complete = mode != "extended"
    if m_max is not None:
        if m_max < hi:
            complete = False
        hi = m_max
    ms = list(range(lo, hi + 1))
    dims = {m: chain_dim(n, m, w, h, mode) for m in ms}
    need = [m for m in range(lo + 1, hi + 2)
            if chain_dim(n, m, w, h, mode) and chain_dim(n, m - 1, w, h, mode)]
    args = [(n, m, w, h, mode) for m in need]
    if jobs > 1 and len(args) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            ranks = dict(zip(need, ex.map(_rank_job, args)))
    else:
        ranks = {m: _rank_job(a) for m, a in zip(need, args)}
    return summarize((n, w, h, mode), dims, ranks, complete)


def euler_number(n: int, w: int, h: int, mode: str = "trivial") -> int:
    """Alternating sum of chain dimensions over the full range of m."""
    _check_mode(mode)
    if mode == "extended":
        raise ValueError("the extended complex is unbounded in m; its Euler number is undefined")
    lo, hi = m_bounds(n, w, h, mode)
    return sum((-1) ** m * chain_dim(n, m, w, h, mode) for m in range(lo, hi + 1))


def verify_d_squared(n: int, w: int, h: int, mode: str = "trivial", m_range: Optional[Sequence[int]] = None) -> bool:
    """Check d_{m-1} d_m = 0 on every consecutive pair in the range."""
    if m_range is None:
        lo, hi = m_bounds(n, w, h, mode)
        m_range = range(lo, hi + 2)
    for m in m_range:
        if m < 2:
            continue
        if not (chain_dim(n, m, w, h, mode) and chain_dim(n, m - 2, w, h, mode)):
            continue
        if not compose_is_zero(boundary_matrix(n, m - 1, w, h, mode), boundary_matrix(n, m, w, h, mode)):
            return False
    return True


# ---------------------------------------------------------------------------
# Euler field homotopy and first Betti witness

def euler_wedge(alg, chain: Chain) -> Chain:
    """phi(U) = E ∆ U, re-canonicalised."""
    out: Chain = {}
    egens = alg.euler_generators()
    for word, c in chain.items():
        for g, e in egens:
            res = insert_sorted(word, g, alg.ydeg)
            if res is not None:
                _add(out, res[1], c * e * res[0])
    return out


def homotopy_operator(n: int, m: int, w: int, h: int) -> SparseRationalMatrix:
    """Matrix of d∘phi + phi∘d on C^{w,h}_m (trivial coefficients)."""
    alg = _algebra(n)
    basis = _basis(n, m, w, h, "trivial")
    entries = {}
    for col, word in enumerate(basis.words):
        unit = {word: 1}
        total = chain_boundary(alg, euler_wedge(alg, unit))
        for k, c in euler_wedge(alg, chain_boundary(alg, unit)).items():
            _add(total, k, c)
        for k, c in total.items():
            entries[(basis.index[k], col)] = c
    return SparseRationalMatrix(len(basis), len(basis), entries)


def homotopy_check(n: int, m: int, w: int, h: int) -> bool:
    """True iff d∘phi + phi∘d = (h - w) id on C^{w,h}_m."""
    M = homotopy_operator(n, m, w, h)
    return M == SparseRationalMatrix.identity(M.rows).scale(h - w)


def chain_from_polyvector(n: int, v: pv.PolyVector) -> Chain:
    """A multivector field as a chain of one-letter words."""
    return {(g,): c for g, c in _algebra(n).decompose(v)}


def first_betti_witness(n: int, w: int, h: int, U: pv.PolyVector) -> Chain:
    """A 2-chain whose boundary is U in X^{w+1}_{h+1}.

    Uses sum_k d(d_k ∆ x_k U) = (n + 1 + h) U.
    """
    if U.n != n:
        raise ValueError(f"U lives on R^{U.n}, expected R^{n}")
    if U.is_zero():
        return {}
    if U.bidegrees() != {(w + 1, h + 1)}:
        raise ValueError(f"U must lie in X^{w + 1}_{h + 1}, got components {sorted(U.bidegrees())}")
    denom = n + 1 + h
    if denom == 0:
        raise ValueError("n + 1 + h = 0: the witness formula degenerates")
    alg = _algebra(n)
    out: Chain = {}
    for k in range(1, n + 1):
        dk = alg.decompose(pv.PolyVector.partial(n, k))[0][0]
        xu = pv.wedge(pv.PolyVector.coordinate(n, k), U)
        for g, c in alg.decompose(xu):
            res = insert_sorted((g,), dk, alg.ydeg)
            if res is not None:
                _add(out, res[1], Fraction(c * res[0], denom))
    return out


def chain_to_text(chain: Chain) -> str:
    if not chain:
        return "0"
    parts = []
    for word, c in sorted(chain.items()):
        parts.append(f"{c} * " + " ∆ ".join(f"<{g.p},{g.h},{g.idx}>" for g in word))
    return " + ".join(parts)
