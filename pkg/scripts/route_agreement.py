"""Largest discrepancy between the determinant and hypergeometric routes for each beta."""
import time

import numpy as np

from edgegap.fredholm import e1_hard, e2_hard, e4_hard
from edgegap.hypergeom import hard_gap_hyper


def main():
    s_grid = np.linspace(0.25, 24, 20)
    cases = [
        ("beta=2", [(a, lambda s, a=a: e2_hard(s, a).value, lambda s, a=a: hard_gap_hyper(2, s, a).value)
                    for a in range(0, 6)]),
        ("beta=1", [(h, lambda s, h=h: e1_hard(s, h).value, lambda s, h=h: hard_gap_hyper(1, s, h).value)
                    for h in range(0, 4)]),
        ("beta=4", [(a, lambda s, a=a: e4_hard(s, a - 1).value, lambda s, a=a: hard_gap_hyper(4, s, a).value)
                    for a in (2, 4, 6)]),
    ]
    print("case,param,max_abs_diff,seconds")
    for name, params in cases:
        for param, det, hyp in params:
            start = time.perf_counter()
            worst = max(abs(det(s) - hyp(s)) for s in s_grid)
            print(f"{name},{param},{worst:.3e},{time.perf_counter() - start:.2f}")


if __name__ == "__main__":
    main()
