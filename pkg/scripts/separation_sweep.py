"""Minimum of the separation left-hand side over seeds, for several p and M.

    python scripts/separation_sweep.py --p 3 5 7 --m 1 2 4 --trials 5000
"""

import argparse
import json
import logging

from lcsc.operators import separation_test

log = logging.getLogger("separation_sweep")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--p", type=int, nargs="+", default=[3, 5])
    ap.add_argument("--m", type=int, nargs="+", default=[1, 2, 4])
    ap.add_argument("--trials", type=int, default=5000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    args = ap.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(message)s")

    rows = []
    for p in args.p:
        for m in args.m:
            reps = [separation_test(p, m, args.trials, s) for s in args.seeds]
            worst = min(r.min_lhs for r in reps)
            log.info("p=%d M=%d c=%.4f worst=%.4f passed=%s", p, m, reps[0].c, worst, all(r.passed for r in reps))
            rows.append({"p": p, "M": m, "c": reps[0].c, "worst_min_lhs": worst, "seeds": args.seeds,
                         "structured": reps[0].structured})
    print(json.dumps(rows, indent=2))


if __name__ == "__main__":
    main()
