"""Compare strongly biCartesian squares and cubes enumerated at two bounds.

A cube found at the larger bound whose vertices all fit under the smaller
bound should already have been found there.
"""
from __future__ import annotations

import argparse
import time

from segalis.segal_checker import enumerate_strongly_bicartesian_cubes


def key(cube):
    return tuple(sorted((tuple(sorted(s)), cube.dims[s], cube.to_top(s)) for s in cube.dims))


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--low", type=int, default=5)
    ap.add_argument("--high", type=int, default=6)
    args = ap.parse_args()
    for k in (2, 3):
        t0 = time.perf_counter()
        lo = {key(c) for c in enumerate_strongly_bicartesian_cubes(k, args.low)}
        t1 = time.perf_counter()
        hi_all = enumerate_strongly_bicartesian_cubes(k, args.high)
        t2 = time.perf_counter()
        hi = {key(c) for c in hi_all if max(c.dims.values()) <= args.low}
        print(f"k={k}: {len(lo)} at bound {args.low} ({t1 - t0:.1f}s), {len(hi_all)} at bound {args.high} "
              f"({t2 - t1:.1f}s), {len(hi)} of those fit under {args.low}; stable={lo == hi}")


if __name__ == "__main__":
    main()
