"""Exhaustive comparison of the circuit and LP proper-intersection tests."""
from __future__ import annotations

import argparse
from itertools import combinations

from segalis.geometry_oracle import proper_intersection_circuit, proper_intersection_lp


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=7)
    ap.add_argument("--max-d", type=int, default=3)
    args = ap.parse_args()
    for d in range(1, args.max_d + 1):
        for n in range(d + 1, args.max_n + 1):
            simplices = list(combinations(range(n + 1), d + 1))
            pairs = bad = proper = 0
            for s, t in combinations(simplices, 2):
                a, b = proper_intersection_circuit(s, t, d), proper_intersection_lp(s, t, d)
                pairs += 1
                proper += a
                bad += a != b
            print(f"d={d} n={n}: {pairs} pairs, {proper} proper, {bad} disagreements")


if __name__ == "__main__":
    main()
