"""Second Betti number of the diagonal complexes C^{(w,w)}.

Only a report: nothing is asserted.  Degrees whose chain spaces exceed
--max-dim are listed as skipped.

    python3 scripts/second_betti_diagonal.py --n 1..3 --w 0..4 [--max-dim 50000]
"""
import argparse
import time

from superhom.cli import parse_range
from superhom.complex import betti_number
from superhom.superchain import chain_dim


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", default="1..3")
    ap.add_argument("--w", default="0..4")
    ap.add_argument("--max-dim", type=int, default=50000)
    args = ap.parse_args()
    print("| n | w | dim C_1 | dim C_2 | dim C_3 | Betti_2 | seconds |")
    print("|---|---|---|---|---|---|---|")
    for n in parse_range(args.n):
        for w in parse_range(args.w):
            dims = [chain_dim(n, m, w, w) for m in (1, 2, 3)]
            if max(dims) > args.max_dim:
                print(f"| {n} | {w} | {dims[0]} | {dims[1]} | {dims[2]} | skipped | |")
                continue
            t0 = time.perf_counter()
            b = betti_number(n, 2, w, w)
            print(f"| {n} | {w} | {dims[0]} | {dims[1]} | {dims[2]} | {b} | {time.perf_counter() - t0:.1f} |",
                  flush=True)


if __name__ == "__main__":
    main()
