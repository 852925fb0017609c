"""Tabulate generation indices over the corpus for small seed budgets."""

import argparse

from cubicomp.corpus import entry, names
from cubicomp.equivalence import universal
from cubicomp.generation import generation_index


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--budgets", default="1,2,3")
    ap.add_argument("--max-i", type=int, default=4)
    ap.add_argument("--max-seeds", type=int, default=20_000)
    args = ap.parse_args()
    budgets = [int(b) for b in args.budgets.split(",")]

    print(f"{'cubic':28} {'n':>4} {'|U|':>4} " + " ".join(f"{'k=' + str(b):>12}" for b in budgets))
    for name in names():
        P = entry(name).cubic
        row = []
        for b in budgets:
            try:
                r = generation_index(P, b, args.max_i, args.max_seeds)
            except RuntimeError:
                row.append("cap")
                continue
            row.append("-" if r is None else f"i={r[0]} {len(r[1])}pt")
        print(f"{name:28} {P.n:>4} {universal(P)[0].n_classes:>4} " + " ".join(f"{c:>12}" for c in row))


if __name__ == "__main__":
    main()
