"""Finite sets and maps."""
from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable

from ..errors import NotADiagram
from .diagram import PosetDiagram
from .verdict import IsoVerdict

NAME = "finset"


@dataclass(frozen=True)
class FinSet:
    size: int
    labels: tuple | None = None

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else i


@dataclass(frozen=True)
class FinSetMap:
    source: FinSet
    target: FinSet
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.source.size:
            raise NotADiagram("map is not total on its source")
        if any(not 0 <= v < self.target.size for v in self.values):
            raise NotADiagram("map value outside its target")

    def __call__(self, i: int) -> int:
        return self.values[i]


def identity(x: FinSet) -> FinSetMap:
    return FinSetMap(x, x, tuple(range(x.size)))


def compose(g: FinSetMap, f: FinSetMap) -> FinSetMap:
    """g after f."""
    gv = g.values
    return FinSetMap(f.source, g.target, tuple(gv[v] for v in f.values))


def equal(f: FinSetMap, g: FinSetMap) -> bool:
    return f.values == g.values and f.source.size == g.source.size and f.target.size == g.target.size


def is_iso(f: FinSetMap) -> bool:
    return f.source.size == f.target.size and len(set(f.values)) == f.source.size


def iso_verdict(f: FinSetMap) -> IsoVerdict:
    seen: dict[int, int] = {}
    for i, v in enumerate(f.values):
        if v in seen:
            return IsoVerdict(False, f"elements {seen[v]} and {i} have the same image {v}")
        seen[v] = i
    missing = next((v for v in range(f.target.size) if v not in seen), None)
    if missing is not None:
        return IsoVerdict(False, f"element {missing} of the target is not hit")
    return IsoVerdict(True)


def product(objs: list[FinSet]) -> FinSet:
    size = 1
    for o in objs:
        size *= o.size
    return FinSet(size)


@dataclass
class Limit:
    apex: FinSet
    families: list[tuple[int, ...]]  # values at the sources, in diagram.sources order
    projections: dict
    sources: list

    def index(self) -> dict[tuple[int, ...], int]:
        return {f: i for i, f in enumerate(self.families)}


def _families(d: PosetDiagram) -> list[tuple[int, ...]]:
    """Compatible families over the sources, by backtracking."""
    srcs = d.sources
    reaches = [d.reach(s) for s in srcs]
    seen: set = set()
    shared: list[list] = []
    for r in reaches:
        shared.append([e for e in r if e in seen])
        seen.update(r)
    # candidates indexed by their values on elements already constrained
    tables: list[dict[tuple, list[int]]] = []
    for s, r, sh in zip(srcs, reaches, shared):
        tab: dict[tuple, list[int]] = {}
        for v in range(d.objects[s].size):
            tab.setdefault(tuple(r[e].values[v] for e in sh), []).append(v)
        tables.append(tab)
    out: list[tuple[int, ...]] = []
    assign: dict = {}
    chosen: list[int] = []

    def rec(i: int) -> None:
        if i == len(srcs):
            out.append(tuple(chosen))
            return
        sig = tuple(assign[e] for e in shared[i])
        r = reaches[i]
        new = [e for e in r if e not in assign]
        for v in tables[i].get(sig, ()):
            for e in new:
                assign[e] = r[e].values[v]
            chosen.append(v)
            rec(i + 1)
            chosen.pop()
        for e in new:
            assign.pop(e, None)

    old = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old, 10 * len(srcs) + 100))
    rec(0)
    return out


def limit(d: PosetDiagram) -> Limit:
    fams = _families(d)
    apex = FinSet(len(fams))
    srcs = d.sources
    projections = {}
    for e in d.elements:
        # each element is reached from some source; read it off there
        for k, s in enumerate(srcs):
            r = d.reach(s)
            if e in r:
                projections[e] = FinSetMap(apex, d.objects[e], tuple(r[e].values[f[k]] for f in fams))
                break
    return Limit(apex, fams, projections, srcs)


def cone_iso(source: FinSet, leg: Callable, d: PosetDiagram) -> IsoVerdict:
    """Is the map from ``source`` into the limit, given by its legs, a bijection?"""
    lim = limit(d)
    legs = [leg(s).values for s in lim.sources]
    images = [tuple(lv[x] for lv in legs) for x in range(source.size)]
    seen: dict[tuple, int] = {}
    for x, img in enumerate(images):
        if img in seen:
            return IsoVerdict(False, f"elements {seen[img]} and {x} have the same image",
                              {"source": source.size, "limit": lim.apex.size})
        seen[img] = x
    if len(seen) != lim.apex.size:
        missing = next(f for f in lim.families if f not in seen)
        return IsoVerdict(False, f"compatible family {missing} has no preimage",
                          {"source": source.size, "limit": lim.apex.size})
    return IsoVerdict(True, "", {"source": source.size, "limit": lim.apex.size})


def to_json_object(x: FinSet) -> dict:
    out: dict = {"size": x.size}
    if x.labels is not None:
        out["labels"] = [str(l) for l in x.labels]
    return out


def from_json_object(data: dict) -> FinSet:
    labels = data.get("labels")
    return FinSet(int(data["size"]), tuple(labels) if labels is not None else None)


def to_json_map(f: FinSetMap) -> list[int]:
    return list(f.values)


def from_json_map(data: list, source: FinSet, target: FinSet) -> FinSetMap:
    return FinSetMap(source, target, tuple(int(v) for v in data))
