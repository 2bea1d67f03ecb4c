"""Sampled check of σ_1σ_3 = σ_3σ_1 on Plücker coordinates of Gr(4,8) (slow)."""

import argparse
import time

from qcluster.braid import sigma_table, verify_commuting_sampled


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=6)
    ap.add_argument("--rng-seed", type=int, default=0)
    args = ap.parse_args()
    t0 = time.perf_counter()
    for i in (1, 3):
        table = sigma_table(4, 8, i)
        print(f"σ_{i}: {len(table.images)} images  {table.stats}  ({time.perf_counter() - t0:.0f}s)")
    rep = verify_commuting_sampled(4, 8, 1, 3, samples=args.samples, rng_seed=args.rng_seed)
    print(rep.to_table())
    print(f"total {time.perf_counter() - t0:.0f}s")
    return 0 if rep.passed else 1


if __name__ == "__main__":
    raise SystemExit(main())
