"""Finite-dimensional (pre) Lie superalgebras given by structure constants.

Generators carry either an integer grade (Z-graded, super degree = grade) or a
parity written ``"[0]"`` / ``"[1]"`` (Z/2-graded).  Chain spaces are weighted
by the total grade, or by total parity for Z/2 weights.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .complex import Chain, HomologySummary, assemble, summarize, word_boundary
from .exactlinalg import rank

LinComb = Tuple[Tuple[int, Fraction], ...]


class TableError(ValueError):
    """Malformed or contradictory structure table."""


@dataclass(frozen=True)
class Generator:
    name: str
    grade: int
    parity_only: bool = False

    @property
    def label(self) -> str:
        return f"[{self.grade % 2}]" if self.parity_only else str(self.grade)


@dataclass
class StructureTable:
    generators: List[Generator]
    brackets: Dict[Tuple[int, int], LinComb] = field(default_factory=dict)

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise TableError("duplicate generator names")
        self._index = {g.name: i for i, g in enumerate(self.generators)}

    # algebra protocol used by the boundary engine
    def ydeg(self, i: int) -> int:
        return self.generators[i].grade

    def bracket(self, a: int, b: int) -> LinComb:
        return self.brackets.get((a, b), ())

    @staticmethod
    def act(g, v):
        return ()

    @property
    def is_z2(self) -> bool:
        return any(g.parity_only for g in self.generators)

    def __len__(self) -> int:
        return len(self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise TableError(f"unknown generator {name!r}") from None

    def name(self, i: int) -> str:
        return self.generators[i].name

    def swap_sign(self, a: int, b: int) -> int:
        return -1 if (1 + self.ydeg(a) * self.ydeg(b)) % 2 else 1

    # --- loading -----------------------------------------------------------
    @classmethod
    def from_dict(cls, data: dict) -> "StructureTable":
        gens = []
        for g in data.get("generators", []):
            grade = g["grade"]
            if isinstance(grade, str):
                s = grade.strip()
                if s in ("[0]", "[1]"):
                    gens.append(Generator(g["name"], int(s[1]), True))
                    continue
                try:
                    grade = int(s)
                except ValueError:
                    raise TableError(f"bad grade {grade!r} for {g['name']}") from None
            gens.append(Generator(g["name"], int(grade)))
        table = cls(gens)
        given: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for entry in data.get("brackets", []):
            a, b = table.index(entry["left"]), table.index(entry["right"])
            value: Dict[int, Fraction] = {}
            for term in entry.get("value", []):
                k = table.index(term["gen"])
                value[k] = value.get(k, 0) + Fraction(str(term["coef"]))
            value = {k: c for k, c in value.items() if c}
            if (a, b) in given and given[(a, b)] != value:
                raise TableError(f"bracket [{entry['left']},{entry['right']}] given twice with different values")
            given[(a, b)] = value
        # symmetrise with [X,Y] = (-1)^(1+xy) [Y,X]
        full = dict(given)
        for (a, b), value in given.items():
            s = table.swap_sign(a, b)
            mirrored = {k: s * c for k, c in value.items()}
            if (b, a) in full:
                if full[(b, a)] != mirrored:
                    raise TableError(
                        f"[{table.name(a)},{table.name(b)}] and [{table.name(b)},{table.name(a)}] "
                        f"contradict graded antisymmetry")
            else:
                full[(b, a)] = mirrored
        table.brackets = {k: tuple(sorted((g, _num(c)) for g, c in v.items())) for k, v in full.items() if v}
        return table

    @classmethod
    def load(cls, path: Union[str, Path]) -> "StructureTable":
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise TableError(f"{path}: invalid JSON ({exc})") from None
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        return {
            "generators": [{"name": g.name, "grade": g.label if g.parity_only else g.grade}
                           for g in self.generators],
            "brackets": [{"left": self.name(a), "right": self.name(b),
                          "value": [{"coef": str(c), "gen": self.name(k)} for k, c in v]}
                         for (a, b), v in sorted(self.brackets.items())],
        }


def _num(c):
    c = Fraction(c)
    return int(c) if c.denominator == 1 else c


# ---------------------------------------------------------------------------
# builtins

def _table(gens, rules) -> StructureTable:
    return StructureTable.from_dict({
        "generators": [{"name": n, "grade": g} for n, g in gens],
        "brackets": [{"left": a, "right": b, "value": [{"coef": str(c), "gen": k} for c, k in v]}
                     for a, b, v in rules],
    })


def gl2_pre() -> StructureTable:
    """gl(2) split as g_0 + g_1 + g_2 with u1 in g_0, u2, u3 in g_1, u4 in g_2."""
    return _table(
        [("u1", 0), ("u2", 1), ("u3", 1), ("u4", 2)],
        [("u1", "u2", [(2, "u2")]), ("u1", "u3", [(-2, "u3")]),
         ("u2", "u3", [(1, "u4")]), ("u3", "u2", [(1, "u4")])],
    )


def gl11() -> StructureTable:
    """gl(1|1) with even u1, u2 and odd u3, u4."""
    return _table(
        [("u1", "[0]"), ("u2", "[0]"), ("u3", "[1]"), ("u4", "[1]")],
        [("u1", "u3", [(1, "u3")]), ("u1", "u4", [(-1, "u4")]),
         ("u2", "u3", [(-1, "u3")]), ("u2", "u4", [(1, "u4")]),
         ("u3", "u4", [(1, "u1"), (1, "u2")]), ("u4", "u3", [(1, "u1"), (1, "u2")])],
    )


BUILTINS = {"gl2": gl2_pre, "gl11": gl11}


# ---------------------------------------------------------------------------
# validation

def _lin_bracket(t: StructureTable, x: Dict[int, Fraction], y: Dict[int, Fraction]) -> Dict[int, Fraction]:
    out: Dict[int, Fraction] = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for k, c in t.bracket(a, b):
                out[k] = out.get(k, 0) + ca * cb * c
    return {k: v for k, v in out.items() if v}


def _fmt(t: StructureTable, v: Dict[int, Fraction]) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c}*{t.name(k)}" for k, c in sorted(v.items()))


def validate(t: StructureTable) -> List[str]:
    """Violations of grading, graded antisymmetry and super-Jacobi (empty if valid)."""
    out = []
    k = len(t)
    z2 = t.is_z2
    for (a, b), value in sorted(t.brackets.items()):
        for g, _ in value:
            target = t.ydeg(a) + t.ydeg(b)
            got = t.ydeg(g)
            if (target - got) % 2 if z2 else target != got:
                out.append(f"grading: [{t.name(a)},{t.name(b)}] contains {t.name(g)} of degree {got}, expected {target}")
    for a, b in product(range(k), repeat=2):
        lhs = dict(t.bracket(a, b))
        s = t.swap_sign(a, b)
        rhs = {g: s * c for g, c in t.bracket(b, a)}
        if lhs != rhs:
            out.append(f"antisymmetry: ([{t.name(a)},{t.name(b)}], [{t.name(b)},{t.name(a)}])")
    for a, b, c in product(range(k), repeat=3):
        x, y, z = t.ydeg(a), t.ydeg(b), t.ydeg(c)
        total: Dict[int, Fraction] = {}
        for sgn_exp, (p, q, r) in ((x * z, (a, b, c)), (y * x, (b, c, a)), (z * y, (c, a, b))):
            term = _lin_bracket(t, _lin_bracket(t, {p: 1}, {q: 1}), {r: 1})
            s = -1 if sgn_exp % 2 else 1
            for g, v in term.items():
                total[g] = total.get(g, 0) + s * v
        total = {g: v for g, v in total.items() if v}
        if total:
            out.append(f"jacobi: ({t.name(a)},{t.name(b)},{t.name(c)}) residual {_fmt(t, total)}")
    return out


# ---------------------------------------------------------------------------
# chains and homology

Weight = Union[int, str]


def _parse_weight(weight: Weight) -> Tuple[int, bool]:
    """(value, is_parity)."""
    if isinstance(weight, str):
        s = weight.strip().lower()
        if s in ("even", "[0]"):
            return 0, True
        if s in ("odd", "[1]"):
            return 1, True
        return int(s), False
    return int(weight), False


def chain_words(t: StructureTable, m: int, weight: Weight) -> List[Tuple[int, ...]]:
    """Canonical words of length m with the requested total grade or parity."""
    w, parity = _parse_weight(weight)
    out = []
    for word in combinations_with_replacement(range(len(t)), m):
        if any(a == b and t.ydeg(a) % 2 == 0 for a, b in zip(word, word[1:])):
            continue
        s = sum(t.ydeg(g) for g in word)
        if (s - w) % 2 == 0 if parity else s == w:
            out.append(word)
    return out


def default_m_max(t: StructureTable, weight: Weight) -> Optional[int]:
    """Largest possible degree when all grades are non-negative, else None."""
    w, parity = _parse_weight(weight)
    if parity or any(g.grade < 0 for g in t.generators):
        return None
    skew_zero = sum(1 for g in t.generators if g.grade == 0)
    return skew_zero + w


def boundary(t: StructureTable, m: int, weight: Weight):
    src = chain_words(t, m, weight)
    dst = chain_words(t, m - 1, weight) if m > 0 else []
    return assemble(t, src, {wd: i for i, wd in enumerate(dst)})


def homology_table(t: StructureTable, weight: Weight, m_max: Optional[int] = None) -> HomologySummary:
    problems = validate(t)
    if problems:
        raise TableError("invalid structure table:\n" + "\n".join(problems))
    w, parity = _parse_weight(weight)
    key = ("finite", "parity" if parity else "grade", w)
    if not len(t):
        return HomologySummary(key, (), 0, True)
    bound = default_m_max(t, weight)
    complete = True
    if m_max is None:
        if bound is None:
            raise ValueError("this complex is unbounded in m; pass m_max")
        m_max = bound
    elif bound is None or m_max < bound:
        complete = False
    dims = {m: len(chain_words(t, m, weight)) for m in range(0, m_max + 1)}
    ranks = {}
    for m in range(1, m_max + 2):
        M = boundary(t, m, weight)
        ranks[m] = rank(M) if M.rows and M.cols else 0
    return summarize(key, dims, ranks, complete)


# ---------------------------------------------------------------------------
# closed forms for gl(1|1)

U1, U2, U3, U4 = range(4)
DECORATIONS = ("none", "u1", "u2", "u1u2")


def F(a: int, b: int, prefix: Tuple[int, ...] = ()) -> Tuple[int, ...]:
    """The word prefix ∆ u3^a ∆ u4^b."""
    return tuple(prefix) + (U3,) * a + (U4,) * b


def gl11_boundary_oracle(a: int, b: int, decoration: str = "none") -> Chain:
    """Closed-form boundary of decoration ∆ F(a, b) in gl(1|1)."""
    if a < 0 or b < 0:
        raise ValueError("a and b must be non-negative")
    out: Chain = {}

    def add(word, c):
        if c:
            out[word] = out.get(word, 0) + c

    ab = a * b
    if decoration == "none":
        if ab:
            add(F(a - 1, b - 1, (U1,)), ab)
            add(F(a - 1, b - 1, (U2,)), ab)
    elif decoration in ("u1", "u2"):
        s = 1 if decoration == "u1" else -1
        if ab:
            add(F(a - 1, b - 1, (U1, U2)), -s * ab)
        add(F(a, b), s * (a - b))
    elif decoration == "u1u2":
        add(F(a, b, (U1,)), a - b)
        add(F(a, b, (U2,)), a - b)
    else:
        raise ValueError(f"decoration must be one of {DECORATIONS}")
    return {k: v for k, v in out.items() if v}


def gl11_engine_boundary(a: int, b: int, decoration: str = "none") -> Chain:
    prefix = {"none": (), "u1": (U1,), "u2": (U2,), "u1u2": (U1, U2)}[decoration]
    return word_boundary(gl11(), F(a, b, prefix))
