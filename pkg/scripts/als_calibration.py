"""Rank-r success fractions of ALS on Gaussian tensors for a few small formats.

The 2x2x2 rank-2 fraction should sit near pi/4 (two typical ranks); the
2x2x3 rank-3 fraction near 1.
"""

import argparse
import json
import math
from dataclasses import asdict

from perfect_formats.probe import AlsConfig, typical_rank_sample

CASES = [((2, 2, 2), 2), ((2, 2, 2), 3), ((2, 2, 3), 2), ((2, 2, 3), 3), ((2, 3, 3), 3)]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=200)
    ap.add_argument("--seed", type=int, default=42)
    args = ap.parse_args()
    cfg = AlsConfig(samples=args.samples, seed=args.seed)
    out = []
    for dims, r in CASES:
        rep = typical_rank_sample(dims, r, cfg)
        out.append({"format": list(dims), "r": r, "success_fraction": rep.success_fraction})
        print(f"{dims} r={r}: {rep.success_fraction:.3f}")
    print(f"pi/4 = {math.pi / 4:.3f}")
    print(json.dumps({"config": asdict(cfg), "results": out}))


if __name__ == "__main__":
    main()
