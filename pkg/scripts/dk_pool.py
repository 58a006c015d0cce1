"""Segal profile of seeded random Dold-Kan objects.

For each seed prints the chain dimensions, the smallest m with chains
concentrated in degrees <= m, and the lower/upper d-Segal verdicts.
"""
from __future__ import annotations

import argparse
import random

from segalis.segal_checker import dk_equivalence_report, is_lower_d_segal, is_upper_d_segal
from segalis.simplicial_objects import dold_kan_inverse, random_chain_complex


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--truncation", type=int, default=6)
    args = ap.parse_args()
    disagree = 0
    for seed in range(args.count):
        c = random_chain_complex(random.Random(seed))
        x = dold_kan_inverse(c, args.truncation)
        m = next(k for k in range(len(c.dims) + 1) if c.concentrated_at_most(k))
        verdicts = "".join(("L" if is_lower_d_segal(x, d, strict=False).ok else "l") +
                           ("U" if is_upper_d_segal(x, d, strict=False).ok else "u")
                           for d in range(1, args.truncation))
        ok = all(dk_equivalence_report(x, k).ok for k in range(3))
        disagree += not ok
        print(f"seed {seed:3d} dims {c.dims} m={m} d=1..{args.truncation - 1}: {verdicts} triple={'ok' if ok else 'BAD'}")
    print(f"{disagree} disagreements")


if __name__ == "__main__":
    main()
