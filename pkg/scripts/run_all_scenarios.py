"""Run every named scenario and write one JSON report per scenario.

    python3 scripts/run_all_scenarios.py --out reports --samples 1000000
"""

import argparse
import time
from pathlib import Path

from bornlp import scenarios as sc
from bornlp.io import dumps


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="reports")
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    all_ok = True
    for name in sc.SCENARIOS:
        params = {"samples": args.samples, "seed": args.seed} if name == "epr" else {}
        t = time.perf_counter()
        rep = sc.run_scenario(name, **params)
        secs = time.perf_counter() - t
        (out / f"{name}.json").write_text(dumps(rep.to_dict()) + "\n")
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status}  {name:<10} {len(rep.checks):>3} checks  {secs:.3f}s")
        for n in rep.notes:
            print(f"      note: {n}")
        all_ok &= rep.passed
    return 0 if all_ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
