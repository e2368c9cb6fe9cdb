"""Relation-by-relation report for the regular and boundary families of a fixture.

    python scripts/relation_report.py PAR "KG(2)"
"""

import argparse

from lcsc.fixtures import fixture
from lcsc.operators import boundary_family, check_relations, regular_rep

NAMES = ["1", "2", "3", "4_1", "4_2", "1'", "2'", "3'", "4'", "5", "5'"]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("fixtures", nargs="*", default=["PAR", "KG(2)"])
    args = ap.parse_args()
    for name in args.fixtures:
        cat = fixture(name)
        for label, fam in (("regular", regular_rep(cat)), ("boundary", boundary_family(cat))):
            rep = check_relations(fam, NAMES)
            print(f"{name} {label} (dim {fam.basis.dim})")
            for n in NAMES:
                r = rep.results[n]
                where = ""
                if r.counterexample:
                    where = f"  at {r.counterexample.get('witness_vector')}"
                print(f"  ({n:>3}) {'ok  ' if r.passed else 'FAIL'} checked={r.checked:<6} dev={r.max_deviation:.2g}{where}")


if __name__ == "__main__":
    main()
