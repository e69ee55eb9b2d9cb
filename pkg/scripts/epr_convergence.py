"""Sup-norm error of the sampled EPR joint table against 5/sqrt(n).

    python3 scripts/epr_convergence.py --theta1 0 --theta2 1.0472 --seeds 5
"""

import argparse
import math

import numpy as np

from bornlp.scenarios import epr_protocol_sim


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--theta1", type=float, default=0.0)
    ap.add_argument("--theta2", type=float, default=math.pi / 3)
    ap.add_argument("--seeds", type=int, default=5)
    args = ap.parse_args()
    print(f"{'n':>9} {'bound':>10} {'mean sup err':>13} {'max sup err':>12} {'max sigma':>10}")
    for n in (10_000, 100_000, 1_000_000):
        sims = [epr_protocol_sim(args.theta1, args.theta2, n, seed=s) for s in range(args.seeds)]
        errs = np.array([s.inf_distance for s in sims])
        sig = max(s.max_sigma for s in sims)
        print(f"{n:>9} {5 / math.sqrt(n):>10.2e} {errs.mean():>13.2e} {errs.max():>12.2e} "
              f"{sig:>10.2f}")


if __name__ == "__main__":
    main()
