"""Command-line front end: tables, verification sweeps, Poisson checks."""
from __future__ import annotations

import csv
import io
import json
import os
import sys
import time
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import click

from . import complex as cx
from . import finitelsa as fl
from .exactlinalg import compose_is_zero
from .polyvector import ParseError, format_polyvector, is_poisson, parse_polyvector, schouten
from .superchain import CACHE_ENV, MODES, chain_dim, m_bounds
from .young import combinatorial_euler

CHECKS = ("d2", "homotopy", "euler", "betti-offdiag", "betti1")


@dataclass
class RunConfig:
    command: str
    n: Tuple[int, ...] = ()
    w: Tuple[int, ...] = ()
    h: Tuple[int, ...] = ()
    mode: str = "trivial"
    m_max: Optional[int] = None
    algebra: Optional[str] = None
    fmt: str = "markdown"
    cache_dir: Optional[str] = None
    jobs: int = 1
    max_dim: Optional[int] = None


def parse_range(text: str) -> Tuple[int, ...]:
    """``"a..b"`` (inclusive) or a single integer."""
    text = str(text).strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if hi < lo:
                raise ValueError
            return tuple(range(lo, hi + 1))
        return (int(text),)
    except ValueError:
        raise click.BadParameter(f"expected an integer or a range a..b, got {text!r}") from None


class RangeType(click.ParamType):
    name = "range"

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            return parse_range(value)
        except click.BadParameter as exc:
            self.fail(exc.message, param, ctx)


RANGE = RangeType()


# ---------------------------------------------------------------------------
# rendering

def _cells(summary: cx.HomologySummary):
    rows = summary.rows
    return (
        [str(r.m) for r in rows],
        [str(r.dim_chain) for r in rows],
        [str(r.rank_in) for r in rows],
        [str(r.betti) for r in rows],
    )


def render(summary: cx.HomologySummary, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(summary.to_json(), sort_keys=True) + "\n"
    ms, dims, ranks, bettis = _cells(summary)
    labels = ("m", "dim", "dim∂", "Betti")
    if fmt == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        for label, cells in zip(("m", "dim", "rank_in", "betti"), (ms, dims, ranks, bettis)):
            wr.writerow([label] + cells)
        wr.writerow(["euler", summary.euler])
        return buf.getvalue()
    lines = []
    for i, (label, cells) in enumerate(zip(labels, (ms, dims, ranks, bettis))):
        lines.append("| " + " | ".join([label] + cells) + " |")
        if i == 0:
            lines.append("|" + "|".join(["---"] * (len(cells) + 1)) + "|")
    lines.append("")
    note = "" if summary.complete else " (over the displayed window only)"
    lines.append(f"Euler: {summary.euler}{note}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# verification

@dataclass
class Report:
    check: str
    grid: dict
    failures: List[dict] = field(default_factory=list)
    skipped: List[dict] = field(default_factory=list)
    evaluated: int = 0
    elapsed_ms: int = 0

    def to_json(self) -> dict:
        return {"check": self.check, "grid": self.grid, "failures": self.failures,
                "skipped": self.skipped, "evaluated": self.evaluated, "elapsed_ms": self.elapsed_ms}


def _fits(n, ms, w, h, mode, max_dim) -> bool:
    return max_dim is None or all(chain_dim(n, m, w, h, mode) <= max_dim for m in ms)


def run_check(check: str, ns, ws, hs, mode: str = "trivial", max_dim: Optional[int] = None,
              m_max: Optional[int] = None) -> Report:
    """Run one verification over a grid.

    Matrix-based checks are evaluated degree by degree; with ``max_dim`` set,
    degrees whose chain spaces exceed it are recorded as skipped, never as
    passed.
    """
    if check not in CHECKS:
        raise ValueError(f"unknown check {check!r}")
    if check == "homotopy" and mode != "trivial":
        raise ValueError("the homotopy check is defined for trivial coefficients only")
    if check == "euler" and mode == "extended":
        raise ValueError("the extended complex has no finite Euler number")
    rep = Report(check, {"n": list(ns), "w": list(ws), "h": list(hs), "mode": mode})
    t0 = time.perf_counter()
    for n in ns:
        for w in ws:
            for h in hs:
                lo, hi = m_bounds(n, w, h, mode)
                if m_max is not None:
                    hi = min(hi, m_max)
                point = {"n": n, "w": w, "h": h}
                if check == "euler":
                    a, b = cx.euler_number(n, w, h, mode), combinatorial_euler(n, w, h, mode)
                    rep.evaluated += 1
                    if a != 0 or b != 0:
                        rep.failures.append({**point, "enumerated": a, "combinatorial": b})
                    continue
                if check == "betti-offdiag" and w == h:
                    continue
                if check == "d2":
                    degrees = [(m, (m - 2, m - 1, m)) for m in range(max(lo, 2), hi + 2)]
                elif check == "homotopy":
                    degrees = [(m, (m - 1, m, m + 1)) for m in range(lo, hi + 1)]
                elif check == "betti1":
                    degrees = [(1, (0, 1, 2))]
                else:
                    degrees = [(m, (m - 1, m, m + 1)) for m in range(lo, hi + 1)]
                for m, ms in degrees:
                    if check in ("homotopy", "betti-offdiag", "betti1") and not chain_dim(n, m, w, h, mode):
                        continue
                    if check == "d2" and not (chain_dim(n, m, w, h, mode) and chain_dim(n, m - 2, w, h, mode)):
                        continue
                    if not _fits(n, ms, w, h, mode, max_dim):
                        rep.skipped.append({**point, "m": m})
                        continue
                    rep.evaluated += 1
                    if check == "d2":
                        ok = compose_is_zero(cx.boundary_matrix(n, m - 1, w, h, mode),
                                             cx.boundary_matrix(n, m, w, h, mode))
                        if not ok:
                            rep.failures.append({**point, "m": m})
                    elif check == "homotopy":
                        if not cx.homotopy_check(n, m, w, h):
                            rep.failures.append({**point, "m": m})
                    else:
                        b = cx.betti_number(n, m, w, h, mode)
                        if b:
                            rep.failures.append({**point, "m": m, "betti": b})
    rep.elapsed_ms = int((time.perf_counter() - t0) * 1000)
    return rep


# ---------------------------------------------------------------------------
# commands

@click.group()
@click.option("--cache-dir", type=click.Path(file_okay=False), default=None,
              help=f"Cache bases and matrices here (also ${CACHE_ENV}).")
def main(cache_dir):
    """Weighted homology of multivector fields under the Schouten bracket."""
    if cache_dir:
        os.environ[CACHE_ENV] = cache_dir


@main.command("table")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.option("--w", "w", type=int, required=True)
@click.option("--h", "h", type=int, required=True)
@click.option("--mode", type=click.Choice(MODES), default="trivial", show_default=True)
@click.option("--m-max", type=click.IntRange(min=0), default=None, help="Last degree shown.")
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv", "json"]), default="markdown",
              show_default=True)
@click.option("--jobs", type=click.IntRange(min=1), default=1, show_default=True)
def table_cmd(n, w, h, mode, m_max, fmt, jobs):
    """Dimensions, ranks and Betti numbers of one weighted complex."""
    summary = cx.homology_summary(n, w, h, mode, m_max=m_max, jobs=jobs)
    click.echo(render(summary, fmt), nl=False)


@main.command("verify")
@click.option("--check", type=click.Choice(CHECKS), required=True)
@click.option("--n", "n", type=RANGE, required=True)
@click.option("--w", "w", type=RANGE, required=True)
@click.option("--h", "h", type=RANGE, required=True)
@click.option("--mode", type=click.Choice(MODES), default="trivial", show_default=True)
@click.option("--m-max", type=click.IntRange(min=0), default=None)
@click.option("--max-dim", type=click.IntRange(min=1), default=None,
              help="Skip degrees whose chain spaces are larger (reported, and the run counts as incomplete).")
@click.option("--json", "as_json", is_flag=True, help="Print the JSON report.")
def verify_cmd(check, n, w, h, mode, m_max, max_dim, as_json):
    """Run a verification sweep; exit 1 on any failure or skipped degree."""
    if any(k < 1 for k in n):
        raise click.BadParameter("n must be >= 1", param_hint="--n")
    try:
        rep = run_check(check, n, w, h, mode, max_dim=max_dim, m_max=m_max)
    except ValueError as exc:
        raise click.UsageError(str(exc)) from None
    if as_json:
        click.echo(json.dumps(rep.to_json(), sort_keys=True))
    else:
        status = "FAIL" if rep.failures else ("INCOMPLETE" if rep.skipped else "PASS")
        click.echo(f"{check}: {status} ({rep.evaluated} evaluated, {len(rep.failures)} failed, "
                   f"{len(rep.skipped)} skipped, {rep.elapsed_ms} ms)")
        for f in rep.failures:
            click.echo("  failure: " + json.dumps(f, sort_keys=True))
    sys.exit(1 if rep.failures or rep.skipped else 0)


@main.command("poisson")
@click.option("--n", "n", type=click.IntRange(min=1), required=True)
@click.argument("expr")
def poisson_cmd(n, expr):
    """Decide whether a bivector field is Poisson ([pi, pi] = 0)."""
    try:
        pi = parse_polyvector(expr, n)
        verdict = is_poisson(pi)
    except (ParseError, ValueError) as exc:
        raise click.UsageError(str(exc)) from None
    if verdict:
        click.echo("Poisson")
    else:
        click.echo("not Poisson")
        click.echo("[pi,pi] = " + format_polyvector(schouten(pi, pi)))


@main.command("finite")
@click.option("--algebra", default=None, help="builtin:gl2 or builtin:gl11")
@click.option("--file", "path", type=click.Path(dir_okay=False), default=None,
              help="Structure-constant JSON file.")
@click.option("--weight", type=int, default=None)
@click.option("--parity", type=click.Choice(["even", "odd"]), default=None)
@click.option("--m-max", type=click.IntRange(min=0), default=None)
@click.option("--format", "fmt", type=click.Choice(["markdown", "csv", "json"]), default="markdown",
              show_default=True)
def finite_cmd(algebra, path, weight, parity, m_max, fmt):
    """Homology of a finite-dimensional algebra from structure constants."""
    if (algebra is None) == (path is None):
        raise click.UsageError("give exactly one of --algebra and --file")
    if algebra is not None:
        name = algebra.split(":", 1)[1] if algebra.startswith("builtin:") else None
        if name not in fl.BUILTINS:
            raise click.UsageError(f"unknown algebra {algebra!r}; use builtin:gl2 or builtin:gl11")
        table = fl.BUILTINS[name]()
    else:
        try:
            table = fl.StructureTable.load(path)
        except FileNotFoundError:
            raise click.UsageError(f"no such file: {path}") from None
        except (fl.TableError, KeyError, TypeError, ValueError) as exc:
            click.echo(f"invalid structure table: {exc}", err=True)
            sys.exit(1)
    problems = fl.validate(table)
    if problems:
        for p in problems:
            click.echo(p)
        sys.exit(1)
    if weight is not None and parity is not None:
        raise click.UsageError("give at most one of --weight and --parity")
    if weight is None and parity is None:
        if table.is_z2:
            parity = "even"
        else:
            raise click.UsageError("give --weight or --parity")
    wt = parity if parity is not None else weight
    if m_max is None and fl.default_m_max(table, wt) is None:
        raise click.UsageError("this complex is unbounded in m; pass --m-max")
    summary = fl.homology_table(table, wt, m_max=m_max)
    click.echo(render(summary, fmt), nl=False)


if __name__ == "__main__":  # pragma: no cover
    main()
