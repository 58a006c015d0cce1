"""Set-valued generators: nerves of finite categories and partial monoids."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable

from ..backends import finset
from ..backends.finset import FinSet, FinSetMap
from ..errors import NotPartialMonoid, SchemaError
from .core import SimplicialObject


@dataclass
class FiniteCategory:
    """Objects, named morphisms with source/target, composition ``comp[(g, f)]`` = g after f."""

    objects: tuple
    src: dict
    tgt: dict
    comp: dict
    ident: dict
    name: str = ""

    @property
    def morphisms(self) -> list:
        return list(self.src)

    def out_of(self, x) -> list:
        return [m for m in self.src if self.src[m] == x]

    def validate(self) -> None:
        for x in self.objects:
            e = self.ident[x]
            if self.src[e] != x or self.tgt[e] != x:
                raise SchemaError(f"identity of {x!r} has the wrong ends")
        for f in self.src:
            for g in self.out_of(self.tgt[f]):
                h = self.comp.get((g, f))
                if h is None or self.src[h] != self.src[f] or self.tgt[h] != self.tgt[g]:
                    raise SchemaError(f"composite {g!r} after {f!r} missing or misplaced")
            if self.comp[(f, self.ident[self.src[f]])] != f or self.comp[(self.ident[self.tgt[f]], f)] != f:
                raise SchemaError(f"unit law fails at {f!r}")
        for f in self.src:
            for g in self.out_of(self.tgt[f]):
                for h in self.out_of(self.tgt[g]):
                    if self.comp[(h, self.comp[(g, f)])] != self.comp[(self.comp[(h, g)], f)]:
                        raise SchemaError("composition is not associative")


def monoid_category(elements: list[Hashable], mult: dict, unit: Hashable, name: str = "monoid") -> FiniteCategory:
    src = {m: "*" for m in elements}
    return FiniteCategory(("*",), src, dict(src), dict(mult), {"*": unit}, name)


def cyclic_group(k: int) -> FiniteCategory:
    els = list(range(k))
    return monoid_category(els, {(a, b): (a + b) % k for a in els for b in els}, 0, f"Z/{k}")


def poset_category(elements: list[Hashable], leq: set[tuple]) -> FiniteCategory:
    """The category of a finite poset; ``leq`` is a reflexive, transitive relation."""
    rel = set(leq) | {(x, x) for x in elements}
    src = {(a, b): a for a, b in rel}
    tgt = {(a, b): b for a, b in rel}
    comp = {((b, c), (a, b2)): (a, c) for (b, c) in rel for (a, b2) in rel if b2 == b}
    return FiniteCategory(tuple(elements), src, tgt, comp, {x: (x, x) for x in elements}, "poset")


def nerve_of_category(c: FiniteCategory, N: int, check: bool = True) -> SimplicialObject:
    """X_n = chains of n composable morphisms, encoded ``(x0, (f1, ..., fn))``."""
    c.validate()
    levels: list[list] = [[(x, ()) for x in c.objects]]
    for n in range(1, N + 1):
        nxt = []
        for x0, fs in levels[-1]:
            end = c.tgt[fs[-1]] if fs else x0
            for m in c.out_of(end):
                nxt.append((x0, fs + (m,)))
        levels.append(nxt)
    index = [{e: i for i, e in enumerate(lv)} for lv in levels]
    objs = [FinSet(len(lv), tuple(lv)) for lv in levels]

    def vertex(x0, fs, i):
        return x0 if i == 0 else c.tgt[fs[i - 1]]

    def face(x0, fs, n, i):
        if i == 0:
            return (c.tgt[fs[0]], fs[1:])
        if i == n:
            return (x0, fs[:-1])
        return (x0, fs[:i - 1] + (c.comp[(fs[i], fs[i - 1])],) + fs[i + 1:])

    faces: list[list] = [[]]
    for n in range(1, N + 1):
        faces.append([FinSetMap(objs[n], objs[n - 1], tuple(index[n - 1][face(x0, fs, n, i)] for x0, fs in levels[n]))
                      for i in range(n + 1)])
    degs = []
    for n in range(N):
        row = []
        for i in range(n + 1):
            vals = []
            for x0, fs in levels[n]:
                e = c.ident[vertex(x0, fs, i)]
                vals.append(index[n + 1][(x0, fs[:i] + (e,) + fs[i:])])
            row.append(FinSetMap(objs[n], objs[n + 1], tuple(vals)))
        degs.append(row)
    return SimplicialObject(finset, objs, faces, degs, name=f"nerve({c.name})", check=check,
                            meta={"generator": "nerve"})


@dataclass
class PartialMonoid:
    elements: tuple
    unit: Hashable
    mult: dict = field(default_factory=dict)
    name: str = "pmonoid"

    def product(self, a, b):
        return self.mult.get((a, b))

    def validate(self) -> None:
        els = set(self.elements)
        if self.unit not in els:
            raise NotPartialMonoid("unit is not an element")
        for (a, b), c in self.mult.items():
            if a not in els or b not in els or c not in els:
                raise NotPartialMonoid(f"product {a!r}*{b!r} leaves the element set")
        for a in self.elements:
            if self.product(self.unit, a) != a or self.product(a, self.unit) != a:
                raise NotPartialMonoid(f"unit law fails at {a!r}")
        for a in self.elements:
            for b in self.elements:
                ab = self.product(a, b)
                for c in self.elements:
                    bc = self.product(b, c)
                    left = self.product(ab, c) if ab is not None else None
                    right = self.product(a, bc) if bc is not None else None
                    if left != right:
                        raise NotPartialMonoid(f"({a!r}*{b!r})*{c!r} and {a!r}*({b!r}*{c!r}) disagree")


def disjoint_union_monoid(k: int) -> PartialMonoid:
    """Subsets of {1..k} under disjoint union."""
    els = tuple(frozenset(i + 1 for i in range(k) if mask >> i & 1) for mask in range(1 << k))
    mult = {(a, b): a | b for a in els for b in els if not a & b}
    return PartialMonoid(els, frozenset(), mult, f"disjoint-union({k})")


def total_monoid(c: FiniteCategory) -> PartialMonoid:
    if len(c.objects) != 1:
        raise NotPartialMonoid("not a one-object category")
    return PartialMonoid(tuple(c.morphisms), c.ident[c.objects[0]], dict(c.comp), c.name)


def pmonoid_arrays(m: PartialMonoid, n: int) -> list[tuple]:
    """All words (a_1..a_n) whose every contiguous product is defined."""
    out = []

    def rec(word: tuple, suffixes: tuple) -> None:
        if len(word) == n:
            out.append(word)
            return
        for a in m.elements:
            new = []
            for s in suffixes:
                p = m.product(s, a)
                if p is None:
                    break
                new.append(p)
            else:
                rec(word + (a,), tuple(new) + (a,))

    rec((), ())
    return out


def array_of(m: PartialMonoid, word: tuple) -> dict:
    """The full array m_ij (i <= j) of a word."""
    n = len(word)
    arr = {(i, i): m.unit for i in range(n + 1)}
    for i in range(n):
        acc = m.unit
        for j in range(i, n):
            acc = m.product(acc, word[j])
            arr[(i, j + 1)] = acc
    return arr


def partial_monoid_object(m: PartialMonoid, N: int, check: bool = True) -> SimplicialObject:
    m.validate()
    levels = [pmonoid_arrays(m, n) for n in range(N + 1)]
    index = [{w: i for i, w in enumerate(lv)} for lv in levels]
    objs = [FinSet(len(lv), tuple(lv)) for lv in levels]

    def face(w, n, i):
        if i == 0:
            return w[1:]
        if i == n:
            return w[:-1]
        return w[:i - 1] + (m.product(w[i - 1], w[i]),) + w[i + 1:]

    faces: list[list] = [[]]
    for n in range(1, N + 1):
        faces.append([FinSetMap(objs[n], objs[n - 1], tuple(index[n - 1][face(w, n, i)] for w in levels[n]))
                      for i in range(n + 1)])
    degs = [[FinSetMap(objs[n], objs[n + 1], tuple(index[n + 1][w[:i] + (m.unit,) + w[i:]] for w in levels[n]))
             for i in range(n + 1)] for n in range(N)]
    return SimplicialObject(finset, objs, faces, degs, name=f"pmonoid({m.name})", check=check,
                            meta={"generator": "pmonoid"})
