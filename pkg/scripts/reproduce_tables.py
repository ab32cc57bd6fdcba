"""Print the weight-zero tables for n=2 and the gl(2), gl(1|1) tables.

    python3 scripts/reproduce_tables.py [--format markdown|csv|json]
"""
import argparse
import time

from superhom import finitelsa as fl
from superhom.cli import render
from superhom.complex import homology_summary


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--format", default="markdown", choices=["markdown", "csv", "json"])
    args = ap.parse_args()
    t0 = time.perf_counter()
    for h in (-2, -1, 0, 1):
        print(f"## n=2, w=0, h={h}\n")
        print(render(homology_summary(2, 0, h), args.format))
    for w in (1, 2, 4, 10):
        print(f"## gl(2), weight {w}\n")
        print(render(fl.homology_table(fl.gl2_pre(), w), args.format))
    for parity in ("even", "odd"):
        print(f"## gl(1|1), {parity} parity, m <= 8\n")
        print(render(fl.homology_table(fl.gl11(), parity, m_max=8), args.format))
    print(f"({time.perf_counter() - t0:.1f} s)")


if __name__ == "__main__":
    main()
