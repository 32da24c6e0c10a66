"""Relative error of the Meinardus estimate against exact counts.

    python3 scripts/meinardus_table.py --model constant --n 100,1000,5000
"""
import argparse
import math

from weighted_partitions import Mode, count, expand, load_model, meinardus_estimate, solve_saddle


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="constant")
    ap.add_argument("--n", default="100,300,1000,3000")
    args = ap.parse_args()

    model = load_model(args.model)
    ns = [int(x) for x in args.n.split(",")]
    table = expand(model, max(ns), mode=Mode.LOG)
    print(f"{'n':>7} {'alpha_n':>10} {'log r(n)':>14} {'estimate':>14} {'log rel':>10} {'ratio err':>10}")
    for n in ns:
        exact = count(table, n)
        est = meinardus_estimate(model, n)
        # both are logs: relative error of the log, and of the count itself
        log_rel = abs(est - exact) / exact
        ratio = abs(math.expm1(est - exact))
        print(f"{n:7d} {solve_saddle(model, n).alpha_n:10.6f} {exact:14.6f} {est:14.6f} {log_rel:10.2e} {ratio:10.2e}")


if __name__ == "__main__":
    main()
