"""Diagrams indexed by finite posets."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Hashable

from ..errors import NotADiagram

Element = Hashable


@dataclass
class PosetDiagram:
    """Objects at poset elements and morphisms along generating arrows.

    ``arrows[(a, b)]`` is a morphism ``objects[a] -> objects[b]``.  The
    arrows should generate the order; the limit is taken over the whole
    generated poset.  ``backend`` names the value category.
    """

    backend: Any
    elements: tuple
    objects: dict
    arrows: dict
    _paths: dict = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        els = set(self.elements)
        self._in: dict = {e: [] for e in self.elements}
        self._out: dict = {e: [] for e in self.elements}
        for a, b in self.arrows:
            if a not in els or b not in els:
                raise NotADiagram(f"arrow {a}->{b} leaves the element set")
            self._out[a].append(b)
            self._in[b].append(a)
        self.elements = tuple(self._toposort())

    def _toposort(self) -> list:
        indeg = {e: len(self._in[e]) for e in self.elements}
        out = self._out
        order = [e for e in self.elements if indeg[e] == 0]
        i = 0
        while i < len(order):
            for b in out[order[i]]:
                indeg[b] -= 1
                if indeg[b] == 0:
                    order.append(b)
            i += 1
        if len(order) != len(self.elements):
            raise NotADiagram("arrows contain a cycle")
        return order

    @property
    def sources(self) -> list:
        return [e for e in self.elements if not self._in[e]]

    def incoming(self, b) -> list:
        return self._in[b]

    def outgoing(self, a) -> list:
        return self._out[a]

    def reach(self, a) -> dict:
        """Elements reachable from ``a`` with a composite morphism to each."""
        hit = self._paths.get(a)
        if hit is not None:
            return hit
        be = self.backend
        maps = {a: be.identity(self.objects[a])}
        for e in self.elements:
            if e not in maps:
                continue
            for b in self.outgoing(e):
                if b not in maps:
                    maps[b] = be.compose(self.arrows[(e, b)], maps[e])
        self._paths[a] = maps
        return maps

    def check_coherent(self) -> None:
        """Raise NotADiagram unless all parallel paths compose to the same morphism."""
        be = self.backend
        for a in self.elements:
            maps = self.reach(a)
            for (e, b), f in self.arrows.items():
                if e in maps and not be.equal(be.compose(f, maps[e]), maps[b]):
                    raise NotADiagram(f"paths from {a} to {b} disagree")

    def restrict(self, keep: Callable[[Element], bool]) -> "PosetDiagram":
        els = tuple(e for e in self.elements if keep(e))
        kept = set(els)
        return PosetDiagram(
            self.backend,
            els,
            {e: self.objects[e] for e in els},
            {ab: f for ab, f in self.arrows.items() if ab[0] in kept and ab[1] in kept},
        )
