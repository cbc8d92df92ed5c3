"""Monte Carlo longest chains in the three Poissonized models against the exact series.

For the symmetric models the chain length ``2l`` is compared with the gap
probability at ``l``.
"""
import argparse

from edgegap.fredholm import e1_hard, e2_hard, e4_hard
from edgegap.montecarlo import Shape, lis_cdf_exact, poissonized_lis_cdf


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=20240601)
    p.add_argument("--t", type=float, default=4.0)
    args = p.parse_args()
    t = args.t
    print("shape,l_chain,hard_edge_value,series_value,mc_mean,std_err,sigmas")
    for l in (1, 2):
        rows = [
            (Shape.SQUARE, l, e2_hard(t, l).value),
            (Shape.ANTI_DIAGONAL, 2 * l, e1_hard(t, l).value),
            (Shape.DIAGONAL, 2 * l, e4_hard(t, 2 * l - 1).value),
        ]
        for shape, chain, hard in rows:
            est = poissonized_lis_cdf(shape, t / 4, chain, args.trials, seed=args.seed)
            exact = lis_cdf_exact(shape, t / 4, chain)
            print(f"{shape.value},{chain},{hard:.10f},{exact:.10f},{est.mean:.6f},{est.std_error:.2e},"
                  f"{est.sigmas(hard):.2f}")


if __name__ == "__main__":
    main()
