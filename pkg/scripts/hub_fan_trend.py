"""Hub-fan family: how tight the upper bound lambda_1 <= 2 h_E gets as n grows."""

import argparse

from dtn_graph import assemble_dtn, hub_fan_problem, hub_fan_witness, quotient, spectrum


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=20)
    args = ap.parse_args()

    print(f"{'n':>3} {'lambda1':>12} {'h_E':>12} {'2h_E - l1':>12} {'n(n+1) slack':>13}")
    for n in range(1, args.max_n + 1):
        bp = hub_fan_problem(n, validate=False)
        lam1 = spectrum(assemble_dtn(bp)).lambda1
        hE = quotient(bp, hub_fan_witness(n), "escobar")
        slack = 2 * hE - lam1
        print(f"{n:>3} {lam1:>12.6g} {hE:>12.6g} {slack:>12.6g} {n * (n + 1) * slack:>13.6g}")


if __name__ == "__main__":
    main()
