"""Number of triangulations of C([n],d) and the size of each flip graph."""
from __future__ import annotations

import argparse

from segalis.errors import TooLarge
from segalis.triangulations import flip_graph


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--max-n", type=int, default=8)
    ap.add_argument("--max-d", type=int, default=4)
    args = ap.parse_args()
    print("n d triangulations flips connected")
    for d in range(1, args.max_d + 1):
        for n in range(d + 1, args.max_n + 1):
            try:
                g = flip_graph(n, d)
            except TooLarge:
                print(f"{n} {d} (over guard)")
                continue
            print(f"{n} {d} {len(g.nodes)} {len(g.edges)} {g.is_connected()}")


if __name__ == "__main__":
    main()
