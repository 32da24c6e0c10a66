"""Largest part of sampled partitions against the exact law (KS distance).

    python3 scripts/sampler_ks.py --model sqrt --n 20,50 --samples 20000 --seed 1
"""
import argparse

from weighted_partitions import empirical_largest_part, load_model


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--model", default="constant")
    ap.add_argument("--n", default="20,50")
    ap.add_argument("--samples", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    model = load_model(args.model)
    print(f"{'n':>5} {'KS':>8} {'crit 99%':>9} {'tries/sample':>13}")
    for n in (int(x) for x in args.n.split(",")):
        law = empirical_largest_part(model, n, args.samples, rng_seed=args.seed + n)
        print(f"{n:5d} {law.ks:8.4f} {law.ks_critical(0.99):9.4f} {law.tries_mean:13.2f}")


if __name__ == "__main__":
    main()
