"""Rambau's order, epsilon words, bistellar flips and flip graphs."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable

import networkx as nx

from .complexes import (Complex, Parity, Simplex, closure, gap_parity, lower_facets,
                        simplex, upper_facets, boundary_generators)
from .errors import BadArity, FlipNotAvailable, TooLarge
from .geometry_oracle import cyclic_volume, proper_intersection, simplex_volume

# letters of the epsilon word, encoded so that tuple comparison is the lex order o < * < e
ODD_GAP, MEMBER, EVEN_GAP = 0, 1, 2
_LETTERS = {ODD_GAP: "o", MEMBER: "*", EVEN_GAP: "e"}

DEFAULT_FLIP_GUARDS = {1: 12, 2: 9, 3: 7, 4: 7}


def rambau_less(s: Simplex, t: Simplex, d: int) -> bool:
    """``s`` lies directly below ``t``: they share a facet that is upper in s and lower in t."""
    if len(s) != d + 1 or len(t) != d + 1:
        raise BadArity(f"expected two {d}-simplices, got {s} and {t}")
    if len(set(s) | set(t)) != d + 2:
        return False
    common = tuple(sorted(set(s) & set(t)))
    return common in upper_facets(s) and common in lower_facets(t)


def epsilon_key(s: Simplex, n: int) -> tuple[int, ...]:
    members = set(s)
    key = []
    for k in range(n + 1):
        if k in members:
            key.append(MEMBER)
        else:
            key.append(EVEN_GAP if gap_parity(s, k) is Parity.EVEN else ODD_GAP)
    return tuple(key)


def epsilon_word(s: Simplex, n: int) -> str:
    return "".join(_LETTERS[c] for c in epsilon_key(s, n))


def is_triangulation(facets: Iterable[Iterable[int]], n: int, d: int) -> bool:
    fs = sorted({simplex(f, n) for f in facets})
    if any(len(f) != d + 1 for f in fs):
        raise BadArity(f"facets must have {d + 1} vertices")
    for a, b in combinations(fs, 2):
        if not proper_intersection(a, b, d):
            return False
    total = sum((simplex_volume(f, d) for f in fs), Fraction(0))
    return total == cyclic_volume(n, d)


@dataclass(frozen=True)
class Triangulation:
    n: int
    d: int
    facets: tuple[Simplex, ...]

    @classmethod
    def of(cls, facets: Iterable[Iterable[int]], n: int, d: int) -> "Triangulation":
        return cls(n, d, tuple(sorted(simplex(f, n) for f in facets)))

    @cached_property
    def facet_set(self) -> frozenset[Simplex]:
        return frozenset(self.facets)

    @cached_property
    def complex(self) -> Complex:
        return Complex(self.n, closure(self.facets))

    @cached_property
    def key(self) -> tuple:
        return tuple(epsilon_key(f, self.n) for f in self.facets)

    def label(self) -> str:
        return " ".join("".join(map(str, f)) if self.n < 10 else "-".join(map(str, f))
                        for f in self.facets)

    def __repr__(self) -> str:
        return f"Triangulation({self.label()})"


def standard_triangulation(n: int, d: int, side: str = "lower") -> Triangulation:
    """The lower or upper boundary triangulation of C([n], d)."""
    if d == n:
        return Triangulation(n, d, (tuple(range(n + 1)),))
    return Triangulation.of(boundary_generators(tuple(range(n + 1)), d, side), n, d)


def available_flips(t: Triangulation) -> tuple[set[Simplex], set[Simplex]]:
    up: set[Simplex] = set()
    down: set[Simplex] = set()
    fs = t.facet_set
    for cand in combinations(range(t.n + 1), t.d + 2):
        if all(f in fs for f in lower_facets(cand)):
            up.add(cand)
        if all(f in fs for f in upper_facets(cand)):
            down.add(cand)
    return up, down


def flip(t: Triangulation, s: Iterable[int], direction: str = "up") -> Triangulation:
    s = simplex(s, t.n)
    if len(s) != t.d + 2:
        raise FlipNotAvailable(f"{s} is not a flip simplex for d={t.d}")
    old, new = (lower_facets(s), upper_facets(s)) if direction == "up" else (upper_facets(s), lower_facets(s))
    if not all(f in t.facet_set for f in old):
        raise FlipNotAvailable(f"{s} is not available for a {direction} flip")
    return Triangulation(t.n, t.d, tuple(sorted((t.facet_set - set(old)) | set(new))))


@dataclass
class FlipGraph:
    n: int
    d: int
    nodes: list[Triangulation]
    edges: list[tuple[int, int, Simplex]] = field(default_factory=list)

    def graph(self) -> nx.DiGraph:
        """Up-flip digraph on node indices."""
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.nodes)))
        for a, b, s in self.edges:
            g.add_edge(a, b, simplex=s)
        return g

    def is_connected(self) -> bool:
        return nx.is_weakly_connected(self.graph()) if self.nodes else False

    def to_dot(self) -> str:
        lines = [f'digraph "flips_{self.n}_{self.d}" {{']
        for i, t in enumerate(self.nodes):
            lines.append(f'  t{i} [label="{t.label()}"];')
        for a, b, s in self.edges:
            lines.append(f'  t{a} -> t{b} [label="{"".join(map(str, s))}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "triangulations": [[list(f) for f in t.facets] for t in self.nodes],
            "flips": [[a, b, list(s)] for a, b, s in self.edges],
        }


def flip_graph(n: int, d: int, guards: dict[int, int] | None = None) -> FlipGraph:
    """All triangulations reachable from the lower triangulation by flips.

    Edges are oriented along up-flips.  Nodes are ordered by the epsilon
    words of their sorted facet lists.
    """
    limits = DEFAULT_FLIP_GUARDS if guards is None else guards
    if not 1 <= d <= n:
        raise BadArity(f"need 1 <= d <= n, got n={n}, d={d}")
    if d < n - 1 and n > limits.get(d, 7):
        raise TooLarge(f"flip graph for n={n}, d={d} exceeds the configured guard")
    start = standard_triangulation(n, d)
    seen = {start.facet_set: start}
    queue = deque([start])
    raw_edges: set[tuple[frozenset, frozenset, Simplex]] = set()
    while queue:
        t = queue.popleft()
        up, down = available_flips(t)
        for s in sorted(up):
            u = flip(t, s, "up")
            raw_edges.add((t.facet_set, u.facet_set, s))
            if u.facet_set not in seen:
                seen[u.facet_set] = u
                queue.append(u)
        for s in sorted(down):
            u = flip(t, s, "down")
            raw_edges.add((u.facet_set, t.facet_set, s))
            if u.facet_set not in seen:
                seen[u.facet_set] = u
                queue.append(u)
    nodes = sorted(seen.values(), key=lambda t: t.key)
    index = {t.facet_set: i for i, t in enumerate(nodes)}
    edges = sorted((index[a], index[b], s) for a, b, s in raw_edges)
    return FlipGraph(n, d, nodes, edges)


@dataclass
class FlipPoset:
    """Reflexive transitive closure of the up-flip relation."""

    graph: FlipGraph
    closure: nx.DiGraph

    def leq(self, a: int, b: int) -> bool:
        return a == b or self.closure.has_edge(a, b)

    def minima(self) -> list[int]:
        g = self.graph.graph()
        return [v for v in g.nodes if g.in_degree(v) == 0]

    def maxima(self) -> list[int]:
        g = self.graph.graph()
        return [v for v in g.nodes if g.out_degree(v) == 0]

    def hasse_dot(self) -> str:
        fg = self.graph
        lines = [f'digraph "hasse_{fg.n}_{fg.d}" {{', "  rankdir=BT;"]
        for i, t in enumerate(fg.nodes):
            lines.append(f'  t{i} [label="{t.label()}"];')
        cover = nx.transitive_reduction(fg.graph())
        for a, b in sorted(cover.edges):
            lines.append(f"  t{a} -> t{b};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def stasheff_tamari_poset(n: int, d: int, guards: dict[int, int] | None = None) -> FlipPoset:
    fg = flip_graph(n, d, guards)
    g = fg.graph()
    if not nx.is_directed_acyclic_graph(g):
        raise AssertionError(f"up-flip relation has a cycle for n={n}, d={d}")
    return FlipPoset(fg, nx.transitive_closure_dag(g))
