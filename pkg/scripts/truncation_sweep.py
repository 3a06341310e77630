#!/usr/bin/env python3
"""Distinguishing-probability estimates across truncation radii.

For a chosen family, reports the Monte Carlo distinguishing probability of
a random 2-colouring at each radius, together with the automorphism group
order of the truncation.  Truncations of the same infinite graph can
behave very differently from their limit, so radii are reported side by
side rather than extrapolated.

Usage:
    python scripts/truncation_sweep.py [--kind double_ray] [--max-radius 8]
                                       [--trials 2000] [--seed 0]
"""

import argparse
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from symbreak.autsearch import automorphism_group  # noqa: E402
from symbreak.colourings import distinguishing_probability_mc  # noqa: E402
from symbreak.graphs import FamilySpec, generate_family  # noqa: E402
from symbreak.rng import SeededRng  # noqa: E402

KIND_PARAMS = {
    "double_ray": {},
    "ladder": {},
    "regular_tree": {"degree": 3},
    "grid": {"dimension": 2},
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kind", choices=sorted(KIND_PARAMS), default="double_ray")
    parser.add_argument("--max-radius", type=int, default=8)
    parser.add_argument("--trials", type=int, default=2000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'R':>3} {'n':>5} {'|Aut|':>24} {'P[distinguishing] (MC)':>24}")
    for radius in range(1, args.max_radius + 1):
        g = generate_family(FamilySpec(args.kind, KIND_PARAMS[args.kind], radius))
        aut = automorphism_group(g)
        est = distinguishing_probability_mc(
            g, 2, args.trials, SeededRng(args.seed, radius)
        )
        order = aut.order()
        order_text = str(order) if order < 10**20 else f"~10^{len(str(order)) - 1}"
        print(
            f"{radius:>3} {g.vertex_count:>5} {order_text:>24} "
            f"{est.estimate:>18.4f} +- {est.stderr:.4f}"
        )


if __name__ == "__main__":
    main()
