"""Paths of growing length: lambda_1 against h, h_J and the Jammes-type lower bound.

Prints a CSV table.  Constants come from enumeration up to the cap and from
sweep cuts beyond it (sweeps are exact on paths).
"""

import argparse
import csv
import sys

from dtn_graph import path_problem, verify_all


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=60)
    args = ap.parse_args()

    out = csv.writer(sys.stdout)
    out.writerow(["n", "lambda1", "h", "h_J", "jammes_lower", "ratio", "exact"])
    for n in range(6, args.max_n + 1, 2):
        rep = verify_all(path_problem(n))
        out.writerow([n, rep.lambda1, rep.h_classic, rep.h_J, rep.jammes_lower,
                      rep.lambda1 / rep.jammes_lower, rep.exact_constants])


if __name__ == "__main__":
    main()
