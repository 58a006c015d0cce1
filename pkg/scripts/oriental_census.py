"""Cell counts of the orientals by exact dimension, plus the axiom check."""
from __future__ import annotations

import argparse

from segalis.orientals import check_omega_axioms, oriental


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=5)
    ap.add_argument("--axioms-up-to", type=int, default=4)
    args = ap.parse_args()
    for n in range(args.max_n + 1):
        o = oriental(n, min(n, 4))
        counts = [len(o.of_dim(k)) for k in range(min(n, 4) + 1)]
        line = f"n={n}: {sum(counts)} cells, by dimension {counts}"
        if n <= args.axioms_up_to:
            line += f"; {check_omega_axioms(n).summary().split('; ')[-1]}"
        print(line)


if __name__ == "__main__":
    main()
