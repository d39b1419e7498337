"""Run every bound check on a batch of seeded random problems and tally the slacks."""

import argparse
import json
from collections import defaultdict

from dtn_graph import random_problem, verify_all


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--n-interior", type=int, default=6)
    ap.add_argument("--n-boundary", type=int, default=5)
    ap.add_argument("--edge-prob", type=float, default=0.4)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    min_slack = defaultdict(lambda: float("inf"))
    failed = []
    for seed in range(args.count):
        bp = random_problem(args.n_interior, args.n_boundary, edge_prob=args.edge_prob, seed=seed)
        rep = verify_all(bp, workers=args.workers)
        for name, s in rep.residuals.items():
            if s is not None:
                min_slack[name] = min(min_slack[name], s)
        if not rep.passed:
            failed.append({"seed": seed, "failures": rep.failures})

    print(json.dumps({"problems": args.count, "min_slack": dict(min_slack), "failed": failed}, indent=2))


if __name__ == "__main__":
    main()
