#!/usr/bin/env python3
"""Reproduce the headline isomorphism-class counts.

Prints one TSV row per census (n, constraint, class_count, raw_count,
elapsed_ms) followed by the simple-solution and conjugacy-class tables.

Usage:
  python scripts/reproduce_counts.py            # the quick set
  python scripts/reproduce_counts.py --full     # adds the n = 6 involutory run
"""

import argparse
import sys

from ybmag import (CensusQuery, MagmaLaw, census_simple_bls,
                   enumerate_structures, function_conjugacy_census)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--full", action="store_true",
                        help="include the slower n = 6 right involutory census")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    print("# right Plonka magmas")
    for n in (1, 2, 3):
        row = enumerate_structures(CensusQuery(n, (MagmaLaw.RIGHT_PLONKA,)),
                                   workers=args.workers).row
        print(row.tsv())

    print("# right involutory Plonka magmas")
    top = 7 if args.full else 6
    for n in range(1, top):
        row = enumerate_structures(
            CensusQuery(n, (MagmaLaw.RIGHT_PLONKA, MagmaLaw.RIGHT_INVOLUTORY)),
            workers=args.workers).row
        print(row.tsv())

    print("# associative right Plonka magmas (partition numbers)")
    for n in (1, 2, 3, 4, 5):
        row = enumerate_structures(
            CensusQuery(n, (MagmaLaw.RIGHT_PLONKA, MagmaLaw.ASSOCIATIVE)),
            workers=args.workers).row
        print(row.tsv())

    print("# simple solutions on t points (two routes)")
    for t in range(1, 9):
        res = census_simple_bls(t)
        route = "single" if res.single_route else "dual"
        print(f"{t}\tsimple[{route}]\t{res.count}")

    print("# conjugacy classes of self-maps (all / connected)")
    for n in range(1, 7):
        print(f"{n}\t{function_conjugacy_census(n)}\t"
              f"{function_conjugacy_census(n, connected_only=True)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
