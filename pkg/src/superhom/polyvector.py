"""Multivector fields with polynomial coefficients on R^n.

A term is ``c * x^alpha * d_I`` where ``alpha`` is an exponent vector and
``I`` a strictly increasing tuple of 1-based directions (``d_I`` is the wedge
of the coordinate fields).  ``I == ()`` is a plain function.

The Schouten bracket is the graded biderivation extending the Lie bracket of
vector fields, with ``[X, f] = X(f)`` and

    [A, B ^ C] = [A, B] ^ C + (-1)^((p-1)q) B ^ [A, C]     (A in X^p, B in X^q)
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Tuple

Monomial = Tuple[int, ...]
MultiIndex = Tuple[int, ...]
TermKey = Tuple[Monomial, MultiIndex]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    return Fraction(c)


def sort_directions(dirs: Iterable[int]) -> Tuple[int, Optional[MultiIndex]]:
    """Sort a sequence of directions, returning ``(sign, sorted)``.

    Returns ``(0, None)`` if a direction repeats.
    """
    dirs = list(dirs)
    if len(set(dirs)) != len(dirs):
        return 0, None
    sign = 1
    # bubble sort counts transpositions; sequences are at most n long
    for i in range(len(dirs)):
        for j in range(len(dirs) - 1 - i):
            if dirs[j] > dirs[j + 1]:
                dirs[j], dirs[j + 1] = dirs[j + 1], dirs[j]
                sign = -sign
    return sign, tuple(dirs)


def _merge_sign(I: MultiIndex, J: MultiIndex) -> int:
    inversions = sum(1 for i in I for j in J if i > j)
    return -1 if inversions % 2 else 1


class PolyVector:
    """Immutable polynomial multivector field on R^n with exact coefficients."""

    __slots__ = ("n", "_terms", "_hash")

    def __init__(self, n: int, terms: Optional[Dict[TermKey, object]] = None):
        if n < 1:
            raise ValueError("ambient dimension must be >= 1")
        clean: Dict[TermKey, Fraction] = {}
        for (alpha, dirs), c in (terms or {}).items():
            alpha = tuple(alpha)
            dirs = tuple(dirs)
            if len(alpha) != n:
                raise ValueError(f"exponent vector {alpha} does not have length {n}")
            if any(a < 0 for a in alpha):
                raise ValueError(f"negative exponent in {alpha}")
            if any(d < 1 or d > n for d in dirs):
                raise ValueError(f"direction out of range in {dirs}")
            if list(dirs) != sorted(set(dirs)):
                raise ValueError(f"directions {dirs} must be strictly increasing")
            c = _as_fraction(c)
            if c:
                clean[(alpha, dirs)] = clean.get((alpha, dirs), 0) + c
        self.n = n
        self._terms = {k: v for k, v in clean.items() if v}
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, n: int) -> "PolyVector":
        return cls(n)

    @classmethod
    def monomial(cls, n: int, alpha: Iterable[int], dirs: Iterable[int] = (), coef=1) -> "PolyVector":
        sign, I = sort_directions(dirs)
        if I is None:
            return cls(n)
        return cls(n, {(tuple(alpha), I): sign * _as_fraction(coef)})

    @classmethod
    def function(cls, n: int, alpha: Iterable[int], coef=1) -> "PolyVector":
        return cls.monomial(n, alpha, (), coef)

    @classmethod
    def coordinate(cls, n: int, k: int) -> "PolyVector":
        """The coordinate function x_k (1-based)."""
        alpha = [0] * n
        alpha[k - 1] = 1
        return cls.function(n, alpha)

    @classmethod
    def partial(cls, n: int, k: int) -> "PolyVector":
        """The constant vector field d_k (1-based)."""
        return cls.monomial(n, (0,) * n, (k,))

    @property
    def terms(self) -> Dict[TermKey, Fraction]:
        return dict(self._terms)

    def items(self) -> Iterator[Tuple[TermKey, Fraction]]:
        return iter(sorted(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, alpha, dirs=()) -> Fraction:
        return self._terms.get((tuple(alpha), tuple(dirs)), Fraction(0))

    # gradings
    def bidegrees(self) -> set:
        """Set of ``(p, h)`` pairs occurring in the terms."""
        return {(len(I), sum(a)) for a, I in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.bidegrees()) <= 1

    def component(self, p: int, h: int) -> "PolyVector":
        return PolyVector(self.n, {k: v for k, v in self._terms.items()
                                   if len(k[1]) == p and sum(k[0]) == h})

    # linear structure
    def _check(self, other: "PolyVector") -> None:
        if not isinstance(other, PolyVector):
            raise TypeError(f"expected PolyVector, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "PolyVector") -> "PolyVector":
        self._check(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return PolyVector(self.n, out)

    def __neg__(self) -> "PolyVector":
        return PolyVector(self.n, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "PolyVector") -> "PolyVector":
        return self + (-other)

    def __mul__(self, c) -> "PolyVector":
        if isinstance(c, PolyVector):
            return wedge(self, c)
        c = _as_fraction(c)
        return PolyVector(self.n, {k: c * v for k, v in self._terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVector):
            return NotImplemented
        return self.n == other.n and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"PolyVector({self.n}, {format_polyvector(self)!r})"

    def __str__(self) -> str:
        return format_polyvector(self)


# ---------------------------------------------------------------------------
# bases and dimensions

def dim_multivector_space(n: int, p: int, h: int) -> int:
    """dim of p-vector fields on R^n with h-homogeneous coefficients."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not (0 <= p <= n) or h < 0:
        return 0
    return comb(n - 1 + h, n - 1) * comb(n, p)


@lru_cache(maxsize=None)
def monomials(n: int, h: int) -> Tuple[Monomial, ...]:
    """Exponent vectors of total degree h, ascending lexicographic."""
    if h < 0:
        return ()
    out: List[Monomial] = []

    def rec(prefix, remaining, slots):
        if slots == 1:
            out.append(tuple(prefix + [remaining]))
            return
        for a in range(remaining + 1):
            rec(prefix + [a], remaining - a, slots - 1)

    rec([], h, n)
    return tuple(out)


@lru_cache(maxsize=None)
def basis_keys(n: int, p: int, h: int) -> Tuple[TermKey, ...]:
    """Term keys of the monomial basis of X^p_h, ordered by (alpha, I)."""
    if not (0 <= p <= n) or h < 0:
        return ()
    dirs = list(combinations(range(1, n + 1), p))
    return tuple((a, I) for a in monomials(n, h) for I in dirs)


@lru_cache(maxsize=None)
def basis_index(n: int, p: int, h: int) -> Dict[TermKey, int]:
    return {k: i for i, k in enumerate(basis_keys(n, p, h))}


def basis_multivector_space(n: int, p: int, h: int) -> List[PolyVector]:
    return [PolyVector(n, {k: 1}) for k in basis_keys(n, p, h)]


def coordinates(v: PolyVector, p: int, h: int) -> Dict[int, Fraction]:
    """Coordinates of the (p, h) component of ``v`` in the monomial basis."""
    index = basis_index(v.n, p, h)
    return {index[k]: c for k, c in v._terms.items() if k in index}


# ---------------------------------------------------------------------------
# products

def wedge(A: PolyVector, B: PolyVector) -> PolyVector:
    A._check(B)
    out: Dict[TermKey, Fraction] = {}
    for (a, I), c in A._terms.items():
        Iset = set(I)
        for (b, J), d in B._terms.items():
            if Iset.intersection(J):
                continue
            key = (tuple(x + y for x, y in zip(a, b)), tuple(sorted(I + J)))
            out[key] = out.get(key, 0) + _merge_sign(I, J) * c * d
    return PolyVector(A.n, out)


def _d_monomial(alpha: Monomial, k: int):
    """d/dx_k of x^alpha as (factor, exponents) with k 0-based."""
    e = alpha[k]
    if e == 0:
        return 0, None
    return e, alpha[:k] + (e - 1,) + alpha[k + 1:]


def _contract_terms(f: Monomial, I: MultiIndex, g: Monomial, J: MultiIndex, out: Dict, scale):
    """Add sum_k (-1)^(p-k) f * d_{i_k}(g) d_{I - i_k} ^ d_J into ``out``."""
    p = len(I)
    Jset = set(J)
    for pos, i in enumerate(I):
        e, dg = _d_monomial(g, i - 1)
        if not e:
            continue
        rest = I[:pos] + I[pos + 1:]
        if Jset.intersection(rest):
            continue
        sign = -1 if (p - 1 - pos) % 2 else 1
        sign *= _merge_sign(rest, J)
        key = (tuple(x + y for x, y in zip(f, dg)), tuple(sorted(rest + J)))
        out[key] = out.get(key, 0) + scale * sign * e


def schouten(A: PolyVector, B: PolyVector) -> PolyVector:
    """Schouten bracket, extended bilinearly to non-homogeneous inputs."""
    A._check(B)
    out: Dict[TermKey, Fraction] = {}
    for (f, I), c in A._terms.items():
        p = len(I)
        for (g, J), d in B._terms.items():
            q = len(J)
            _contract_terms(f, I, g, J, out, c * d)
            eps = -1 if ((p - 1) * (q - 1)) % 2 else 1
            _contract_terms(g, J, f, I, out, -eps * c * d)
    return PolyVector(A.n, out)


def euler_field(n: int) -> PolyVector:
    """E = sum_k x_k d_k."""
    terms = {}
    for k in range(n):
        alpha = tuple(1 if i == k else 0 for i in range(n))
        terms[(alpha, (k + 1,))] = 1
    return PolyVector(n, terms)


def is_poisson(pi: PolyVector) -> bool:
    if any(len(I) != 2 for _, I in pi._terms):
        raise ValueError("is_poisson expects a bivector field")
    return schouten(pi, pi).is_zero()


# ---------------------------------------------------------------------------
# text syntax:  "c x1^a1 ... xn^an d{i1,...,ip}" joined by + / -

_TERM = re.compile(
    r"\s*(?P<sign>[+-])?\s*(?P<coef>\d+(?:/\d+)?)?\s*"
    r"(?P<mono>(?:x\d+(?:\^\d+)?\s*)*)"
    r"d\{(?P<dirs>[\d,\s]*)\}\s*"
)
_VAR = re.compile(r"x(\d+)(?:\^(\d+))?")


class ParseError(ValueError):
    pass


def parse_polyvector(text: str, n: int) -> PolyVector:
    text = text.strip()
    if text in ("", "0"):
        return PolyVector(n)
    terms: Dict[TermKey, Fraction] = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse term at {text[pos:]!r}")
        if not first and m.group("sign") is None:
            raise ParseError(f"missing '+' or '-' before {text[pos:m.end()].strip()!r}")
        first = False
        coef = Fraction(m.group("coef") or 1)
        if m.group("sign") == "-":
            coef = -coef
        alpha = [0] * n
        for var in _VAR.finditer(m.group("mono")):
            k = int(var.group(1))
            if not 1 <= k <= n:
                raise ParseError(f"variable x{k} out of range for n={n}")
            alpha[k - 1] += int(var.group(2) or 1)
        raw = [s for s in m.group("dirs").replace(" ", "").split(",") if s]
        dirs = [int(s) for s in raw]
        if any(not 1 <= d <= n for d in dirs):
            raise ParseError(f"direction out of range in d{{{m.group('dirs')}}}")
        sign, I = sort_directions(dirs)
        if I is not None:
            key = (tuple(alpha), I)
            terms[key] = terms.get(key, 0) + sign * coef
        pos = m.end()
    return PolyVector(n, terms)


def _format_term(alpha: Monomial, I: MultiIndex) -> str:
    parts = []
    for k, a in enumerate(alpha, start=1):
        if a == 1:
            parts.append(f"x{k}")
        elif a > 1:
            parts.append(f"x{k}^{a}")
    parts.append("d{" + ",".join(str(i) for i in I) + "}")
    return " ".join(parts)


def format_polyvector(v: PolyVector) -> str:
    if v.is_zero():
        return "0"
    # basis order: grouped by (p, h), then (alpha, I)
    keys = sorted(v._terms, key=lambda k: (len(k[1]), sum(k[0]), k))
    out = []
    for i, key in enumerate(keys):
        c = v._terms[key]
        body = f"{abs(c)} {_format_term(*key)}"
        if i == 0:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)
