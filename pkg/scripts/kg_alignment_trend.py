"""Number of minimal common extensions of alpha and beta in KG(n)."""

import argparse
import time

from lcsc.alignment import minimal_common_extensions
from lcsc.fixtures import fixture


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("ns", type=int, nargs="*", default=[1, 2, 4, 8, 16, 32])
    args = ap.parse_args()
    print(f"{'n':>4} {'|ext|':>6} {'morphisms':>10} {'seconds':>8}")
    for n in args.ns:
        t = time.perf_counter()
        cat = fixture(f"KG({n})")
        k = len(minimal_common_extensions(cat, ("alpha", "beta")))
        print(f"{n:>4} {k:>6} {len(cat.morphisms):>10} {time.perf_counter() - t:>8.3f}")


if __name__ == "__main__":
    main()
