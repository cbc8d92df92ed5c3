"""Hard-to-soft transition table: |E_beta^hard(Q_a(s)) - F_beta(s)| over a and s.

Also reports how much moving the endpoint by ``a`` changes the hard value.
"""
import argparse

from edgegap.fredholm import transition_hard, transition_sweep


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--a", default="8,16,32,64,128,256")
    p.add_argument("--s", default="-2,-1,0,1,2")
    args = p.parse_args()
    a_values = [int(v) for v in args.a.split(",")]
    s_values = [float(v) for v in args.s.split(",")]
    print("beta,a,s,hard,soft,error,shift_effect")
    for beta in (2, 1):
        for row in transition_sweep(beta, s_values, a_values):
            shifted = transition_hard(beta, row.s, row.a, endpoint_shift=row.a).value
            print(f"{beta},{row.a},{row.s},{row.hard_value:.10f},{row.soft_value:.10f},"
                  f"{row.abs_error:.3e},{abs(shifted - row.hard_value):.3e}")


if __name__ == "__main__":
    main()
