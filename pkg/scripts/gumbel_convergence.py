"""Sup-distance between the exact largest-part CDF and the Gumbel law as n grows.

    python3 scripts/gumbel_convergence.py --model linear --n 250,500,1000,2000
"""
import argparse
import time

import numpy as np

from weighted_partitions import diagnostic, load_model


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="constant")
    ap.add_argument("--n", default="250,500,1000,2000,4000")
    ap.add_argument("--grid", default="-2,-1,0,1,2,3")
    ap.add_argument("--normalization", choices=("alpha", "a"), default="alpha")
    args = ap.parse_args()

    model = load_model(args.model)
    grid = [float(t) for t in args.grid.split(",")]
    ns, errs = [], []
    print(f"{'n':>7} {'sup |exact-gumbel|':>20} {'sup |exact-closed|':>20} {'sec':>6}")
    for n in (int(x) for x in args.n.split(",")):
        t0 = time.perf_counter()
        d = diagnostic(model, n, grid, args.normalization)
        closed = max(abs(r.exact_cdf - r.closed_form_cdf) for r in d.grid)
        print(f"{n:7d} {d.sup_error:20.5f} {closed:20.5f} {time.perf_counter() - t0:6.1f}")
        ns.append(n)
        errs.append(d.sup_error)
    if len(ns) > 1:
        slope = np.polyfit(np.log(ns), np.log(errs), 1)[0]
        print(f"log-log slope of sup error: {slope:.3f}")


if __name__ == "__main__":
    main()
