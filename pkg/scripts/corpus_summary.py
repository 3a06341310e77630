#!/usr/bin/env python3
"""Print a summary table over the standard corpus: group order, motion,
exact distinguishing probability, the motion-based failure bound, and the
expected stabiliser measure of a random 2-colouring.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from symbreak.autsearch import automorphism_group  # noqa: E402
from symbreak.colourings import (  # noqa: E402
    distinguishing_probability_exact,
    russel_sundaram_bound,
)
from symbreak.suites import standard_corpus  # noqa: E402
from symbreak.topology import expected_stabiliser_measure  # noqa: E402


def main():
    print(f"{'graph':<9} {'n':>3} {'|Aut|':>6} {'motion':>6} "
          f"{'P[dist]':>10} {'bound':>8} {'E[measure]':>11}")
    for name, g in standard_corpus():
        aut = automorphism_group(g)
        motion = aut.motion().motion
        prob = distinguishing_probability_exact(g)
        rs = russel_sundaram_bound(g)
        measure = expected_stabiliser_measure(g).value
        bound = str(rs.bound) if rs.applicable else f"({rs.bound})"
        print(
            f"{name:<9} {g.vertex_count:>3} {aut.order():>6} {motion:>6} "
            f"{str(prob):>10} {bound:>8} {str(measure):>11}"
        )


if __name__ == "__main__":
    main()
