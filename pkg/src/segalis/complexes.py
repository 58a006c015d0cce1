"""Abstract simplicial complexes on [n] and Gale parity combinatorics.

A simplex is a strictly increasing tuple of vertex labels.  A ``Complex`` is a
downward closed family of simplices together with the ambient ``n``; it is
stored as a frozenset so that equality is structural.
"""
from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator

from .errors import BadVertex, DimensionTooLarge, EmptyComplex, NoBoundary, NotAGap

Simplex = tuple[int, ...]


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


class Side(enum.Enum):
    LOWER = "lower"
    UPPER = "upper"

    @property
    def parity(self) -> Parity:
        return Parity.EVEN if self is Side.LOWER else Parity.ODD

    @classmethod
    def parse(cls, s: "str | Side") -> "Side":
        if isinstance(s, Side):
            return s
        return cls(s.lower())


def simplex(vertices: Iterable[int], n: int | None = None) -> Simplex:
    """Normalize ``vertices`` to a sorted tuple, validating labels."""
    s = tuple(sorted(vertices))
    if not s:
        raise EmptyComplex("a simplex needs at least one vertex")
    if len(set(s)) != len(s):
        raise BadVertex(f"repeated vertex in {s}")
    if s[0] < 0 or (n is not None and s[-1] > n):
        raise BadVertex(f"vertex of {s} outside [0, {n}]")
    return s


def faces(s: Simplex) -> Iterator[Simplex]:
    """All nonempty faces of ``s``, including ``s`` itself."""
    for k in range(1, len(s) + 1):
        yield from combinations(s, k)


def closure(generators: Iterable[Simplex]) -> frozenset[Simplex]:
    out: set[Simplex] = set()
    for g in generators:
        if g in out:
            continue
        out.update(faces(g))
    return frozenset(out)


@dataclass(frozen=True)
class Complex:
    """A downward closed set of simplices on the vertex set [n]."""

    n: int
    simplices: frozenset[Simplex] = field(default_factory=frozenset)

    @cached_property
    def facets(self) -> tuple[Simplex, ...]:
        by_size = sorted(self.simplices, key=len, reverse=True)
        maximal: list[Simplex] = []
        covered: set[Simplex] = set()
        for s in by_size:
            if s not in covered:
                maximal.append(s)
                covered.update(faces(s))
        return tuple(sorted(maximal))

    @cached_property
    def dim(self) -> int:
        return max((len(s) for s in self.simplices), default=0) - 1

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted(s[0] for s in self.simplices if len(s) == 1))

    def __contains__(self, s: object) -> bool:
        return s in self.simplices

    def __iter__(self) -> Iterator[Simplex]:
        return iter(sorted(self.simplices, key=lambda s: (len(s), s)))

    def __len__(self) -> int:
        return len(self.simplices)

    def __le__(self, other: "Complex") -> bool:
        return self.simplices <= other.simplices

    def __or__(self, other: "Complex") -> "Complex":
        return Complex(max(self.n, other.n), self.simplices | other.simplices)

    def __and__(self, other: "Complex") -> "Complex":
        return Complex(max(self.n, other.n), self.simplices & other.simplices)

    def of_size(self, k: int) -> list[Simplex]:
        """Simplices with exactly ``k`` vertices, sorted."""
        return sorted(s for s in self.simplices if len(s) == k)

    def skeleton(self, k: int) -> "Complex":
        return Complex(self.n, frozenset(s for s in self.simplices if len(s) <= k + 1))

    def to_json(self) -> dict:
        return {"n": self.n, "facets": [list(f) for f in self.facets]}

    @classmethod
    def from_json(cls, data: dict) -> "Complex":
        return generated_complex([tuple(f) for f in data["facets"]], int(data["n"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __repr__(self) -> str:
        body = ",".join("".join(map(str, f)) if self.n < 10 else "-".join(map(str, f))
                        for f in self.facets)
        return f"<{body}>"


def generated_complex(generators: Iterable[Iterable[int]], n: int) -> Complex:
    """The smallest complex on [n] containing every generator."""
    gens = [simplex(g, n) for g in generators]
    if not gens:
        raise EmptyComplex("empty generator set")
    return Complex(n, closure(gens))


def full_simplex(s: Simplex, n: int | None = None) -> Complex:
    return Complex(s[-1] if n is None else n, closure([s]))


def gap_parity(s: Simplex, j: int) -> Parity:
    if j in s:
        raise NotAGap(f"{j} is a vertex of {s}")
    above = sum(1 for i in s if i > j)
    return Parity.EVEN if above % 2 == 0 else Parity.ODD


def _gaps(s: Simplex, vertex_set: Iterable[int]) -> list[int]:
    members = set(s)
    return [j for j in vertex_set if j not in members]


def is_even_subset(s: Simplex, n: int) -> bool:
    return all(gap_parity(s, j) is Parity.EVEN for j in _gaps(s, range(n + 1)))


def is_odd_subset(s: Simplex, n: int) -> bool:
    return all(gap_parity(s, j) is Parity.ODD for j in _gaps(s, range(n + 1)))


def has_parity_in(s: Simplex, ambient: Simplex, parity: Parity) -> bool:
    """Gale parity of ``s`` relative to the ordered vertex set ``ambient``."""
    return all(gap_parity(s, j) is parity for j in _gaps(s, ambient))


def boundary_generators(vertices: Simplex, dim: int, side: Side | str) -> list[Simplex]:
    """Even (lower) or odd (upper) subsets of size ``dim+1`` of ``vertices``."""
    side = Side.parse(side)
    return [c for c in combinations(vertices, dim + 1)
            if has_parity_in(c, vertices, side.parity)]


def boundary_complex(n: int, dim: int, side: Side | str) -> Complex:
    """The lower or upper boundary complex of dimension ``dim`` on [n]."""
    if dim >= n:
        raise DimensionTooLarge(f"dim={dim} must be < n={n}")
    if dim < 0:
        raise DimensionTooLarge(f"dim={dim} is negative")
    return generated_complex(boundary_generators(tuple(range(n + 1)), dim, side), n)


def lower_facets(s: Simplex) -> list[Simplex]:
    """Facets of the simplex ``s`` lying in its lower hemisphere."""
    k = len(s)
    return [s[:i] + s[i + 1:] for i in range(k) if (k - 1 - i) % 2 == 0]


def upper_facets(s: Simplex) -> list[Simplex]:
    k = len(s)
    return [s[:i] + s[i + 1:] for i in range(k) if (k - 1 - i) % 2 == 1]


def hemisphere(s: Simplex, side: Side | str, n: int | None = None) -> Complex:
    side = Side.parse(side)
    gens = lower_facets(s) if side is Side.LOWER else upper_facets(s)
    return Complex(s[-1] if n is None else n, closure(gens))


def simplex_hemispheres(s: Simplex, n: int | None = None) -> tuple[Complex, Complex]:
    s = simplex(s)
    if len(s) < 2:
        raise NoBoundary(f"{s} has no boundary")
    return hemisphere(s, Side.LOWER, n), hemisphere(s, Side.UPPER, n)


def all_subcomplexes(n: int, max_size: int | None = None) -> Iterator[Complex]:
    """Every nonempty subcomplex of the full simplex on [n] (slow; n <= 3)."""
    cap = n + 1 if max_size is None else max_size
    cands = [c for k in range(1, cap + 1) for c in combinations(range(n + 1), k)]
    cands.sort(key=len, reverse=True)

    # antichains of simplices generate distinct complexes
    def rec(i: int, chosen: list[Simplex], covered: frozenset[Simplex]):
        if i == len(cands):
            if chosen:
                yield Complex(n, covered)
            return
        c = cands[i]
        yield from rec(i + 1, chosen, covered)
        if c not in covered:
            yield from rec(i + 1, chosen + [c], covered | closure([c]))

    yield from rec(0, [], frozenset())
