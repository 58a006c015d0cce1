"""Finite groupoids, functors, and pseudo-limits over posets.

A pseudo-limit object is a family of objects ``x_a`` together with
isomorphisms ``phi_ab : F_ab(x_a) -> x_b`` along every arrow that agree on all
parallel composites.  Working with families of skeleton representatives gives
an equivalent groupoid in which morphisms between two objects can only
connect identical families; the gauge group of automorphisms of the family
acts on the coherent ``phi`` and its orbits are the isomorphism classes.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable

from ..errors import NotADiagram, TooLarge
from .diagram import PosetDiagram
from .verdict import IsoVerdict

NAME = "groupoid"

MAX_MATERIALIZE = 200_000


class Groupoid:
    """A finite groupoid with explicit hom-sets.

    ``homs`` maps ``(x, y)`` to a tuple of morphism values; morphisms must be
    hashable and distinct across hom-sets.  ``comp(g, f)`` is g after f.
    """

    def __init__(self, objects: Iterable[Hashable], homs: dict, comp: Callable, ident: Callable,
                 inv: Callable, name: str = ""):
        self.objects = tuple(objects)
        self.homs = {k: tuple(v) for k, v in homs.items() if v}
        self.comp = comp
        self.ident = ident
        self.inv = inv
        self.name = name
        self._src: dict = {}
        self._tgt: dict = {}
        for (x, y), ms in self.homs.items():
            for m in ms:
                self._src[m] = x
                self._tgt[m] = y
        self._pos = {x: i for i, x in enumerate(self.objects)}
        self._skeleton = None

    def hom(self, x, y) -> tuple:
        return self.homs.get((x, y), ())

    def aut(self, x) -> tuple:
        return self.hom(x, x)

    def src(self, m):
        return self._src[m]

    def tgt(self, m):
        return self._tgt[m]

    @property
    def morphisms(self) -> list:
        return [m for ms in self.homs.values() for m in ms]

    def skeleton(self) -> tuple[dict, dict]:
        """(rep, chosen): representative of each object and an iso into it."""
        if self._skeleton is None:
            rep, chosen = {}, {}
            for x in self.objects:
                if x in rep:
                    continue
                rep[x] = x
                chosen[x] = self.ident(x)
                for y in self.objects:
                    if y not in rep:
                        ms = self.hom(y, x)
                        if ms:
                            rep[y] = x
                            chosen[y] = ms[0]
            self._skeleton = (rep, chosen)
        return self._skeleton

    def reps(self) -> list:
        rep, _ = self.skeleton()
        return [x for x in self.objects if rep[x] == x]

    def validate(self) -> None:
        for x in self.objects:
            e = self.ident(x)
            if e not in self.aut(x):
                raise NotADiagram(f"identity of {x!r} missing")
        for m in self.morphisms:
            x, y = self._src[m], self._tgt[m]
            if self.comp(m, self.ident(x)) != m or self.comp(self.ident(y), m) != m:
                raise NotADiagram("unit law fails")
            i = self.inv(m)
            if self.comp(i, m) != self.ident(x) or self.comp(m, i) != self.ident(y):
                raise NotADiagram("inverse law fails")
            for z in self.objects:
                for g in self.hom(y, z):
                    gm = self.comp(g, m)
                    if gm not in self.hom(x, z):
                        raise NotADiagram("composite lands in the wrong hom-set")
                    for w in self.objects:
                        for h in self.hom(z, w):
                            if self.comp(h, gm) != self.comp(self.comp(h, g), m):
                                raise NotADiagram("composition is not associative")

    def __repr__(self) -> str:
        return f"Groupoid({self.name or len(self.objects)} objects)"


def from_tables(objects: list, morphisms: list[tuple], compose_table: dict, identities: dict,
                inverses: dict, name: str = "") -> Groupoid:
    """Groupoid from named morphisms ``(name, src, tgt)`` and lookup tables."""
    homs: dict = {}
    for m, x, y in morphisms:
        homs.setdefault((x, y), []).append(m)

    def comp(g, f):
        try:
            return compose_table[(g, f)]
        except KeyError:
            raise NotADiagram(f"composite of {g!r} after {f!r} is undefined") from None

    return Groupoid(objects, homs, comp, identities.__getitem__, inverses.__getitem__, name)


def discrete(objects: Iterable[Hashable], name: str = "") -> Groupoid:
    objs = tuple(objects)
    return Groupoid(objs, {(x, x): [("id", x)] for x in objs}, lambda g, f: f,
                    lambda x: ("id", x), lambda m: m, name)


class GroupoidFunctor:
    __slots__ = ("source", "target", "obj", "mor")

    def __init__(self, source: Groupoid, target: Groupoid, obj: dict, mor: dict):
        self.source = source
        self.target = target
        self.obj = obj
        self.mor = mor

    def __eq__(self, other: object) -> bool:
        return isinstance(other, GroupoidFunctor) and self.obj == other.obj and self.mor == other.mor

    __hash__ = None

    def check(self) -> None:
        s, t = self.source, self.target
        for x in s.objects:
            if self.mor[s.ident(x)] != t.ident(self.obj[x]):
                raise NotADiagram("functor does not preserve identities")
        for m in s.morphisms:
            fm = self.mor[m]
            if t.src(fm) != self.obj[s.src(m)] or t.tgt(fm) != self.obj[s.tgt(m)]:
                raise NotADiagram("functor does not respect source/target")
        for (x, y), ms in s.homs.items():
            for (y2, z), gs in s.homs.items():
                if y2 != y:
                    continue
                for f in ms:
                    for g in gs:
                        if self.mor[s.comp(g, f)] != t.comp(self.mor[g], self.mor[f]):
                            raise NotADiagram("functor does not preserve composition")


def functor(source: Groupoid, target: Groupoid, obj_fn: Callable, mor_fn: Callable) -> GroupoidFunctor:
    return GroupoidFunctor(source, target, {x: obj_fn(x) for x in source.objects},
                           {m: mor_fn(m) for m in source.morphisms})


def identity(g: Groupoid) -> GroupoidFunctor:
    return GroupoidFunctor(g, g, {x: x for x in g.objects}, {m: m for m in g.morphisms})


def compose(g: GroupoidFunctor, f: GroupoidFunctor) -> GroupoidFunctor:
    """g after f."""
    return GroupoidFunctor(f.source, g.target, {x: g.obj[y] for x, y in f.obj.items()},
                           {m: g.mor[n] for m, n in f.mor.items()})


def equal(f: GroupoidFunctor, g: GroupoidFunctor) -> bool:
    return f == g


def is_equivalence(f: GroupoidFunctor) -> IsoVerdict:
    """Essentially surjective and fully faithful, decided on components."""
    s, t = f.source, f.target
    rep_t, _ = t.skeleton()
    hit: dict = {}
    for x in s.reps():
        c = rep_t[f.obj[x]]
        if c in hit:
            return IsoVerdict(False, f"non-isomorphic objects {hit[c]!r} and {x!r} become isomorphic")
        hit[c] = x
        auts = s.aut(x)
        images = {f.mor[g] for g in auts}
        if len(images) != len(auts):
            return IsoVerdict(False, f"not faithful on automorphisms of {x!r}")
        if len(t.aut(f.obj[x])) != len(auts):
            return IsoVerdict(False, f"not full on automorphisms of {x!r}")
    missing = [y for y in t.reps() if y not in hit]
    if missing:
        return IsoVerdict(False, f"object {missing[0]!r} is not in the essential image")
    return IsoVerdict(True, "", {"components": len(hit)})


def is_iso(f: GroupoidFunctor) -> bool:
    return bool(is_equivalence(f))


# pseudo-limits

@dataclass
class PseudoLimit:
    diagram: PosetDiagram
    arrows: list
    families: list[dict]
    coherent: list[list[tuple]]
    _orbits: dict = field(default_factory=dict)

    def gauge_size(self, fam: dict) -> int:
        d = self.diagram
        size = 1
        for e in d.elements:
            size *= len(d.objects[e].aut(fam[e]))
        return size

    def act(self, fam: dict, g: dict, phi: tuple) -> tuple:
        """Gauge action: g_b . phi_ab . F_ab(g_a)^-1 on every arrow."""
        d = self.diagram
        out = []
        for (a, b), p in zip(self.arrows, phi):
            fab = d.arrows[(a, b)]
            gb = d.objects[b]
            out.append(gb.comp(g[b], gb.comp(p, gb.inv(fab.mor[g[a]]))))
        return tuple(out)

    def orbit_of(self, k: int, phi: tuple) -> tuple[int, int]:
        """(orbit id, orbit size) of ``phi`` over family ``k``."""
        table = self._orbits.setdefault(k, {})
        if phi in table:
            return table[phi]
        fam = self.families[k]
        d = self.diagram
        ident = {e: d.objects[e].ident(fam[e]) for e in d.elements}
        gens = []
        for e in d.elements:
            for a in d.objects[e].aut(fam[e]):
                if a != ident[e]:
                    g = dict(ident)
                    g[e] = a
                    gens.append(g)
        seen = {phi}
        queue = deque([phi])
        while queue:
            cur = queue.popleft()
            for g in gens:
                nxt = self.act(fam, g, cur)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        oid = min(seen, key=repr)
        rec = ((k, oid), len(seen))
        for q in seen:
            table[q] = rec
        return rec

    def components(self) -> list[tuple[int, tuple, int]]:
        """One (family, phi, automorphism count) per isomorphism class."""
        out = []
        for k, phis in enumerate(self.coherent):
            done = set()
            for phi in phis:
                oid, size = self.orbit_of(k, phi)
                if oid not in done:
                    done.add(oid)
                    out.append((k, phi, self.gauge_size(self.families[k]) // size))
        return out

    def materialize(self) -> tuple[Groupoid, dict]:
        """The pseudo-limit as an explicit groupoid with its projections."""
        d = self.diagram
        objs = [(k, phi) for k, phis in enumerate(self.coherent) for phi in phis]
        if len(objs) > MAX_MATERIALIZE:
            raise TooLarge("pseudo-limit too large to materialize")
        homs: dict = {}
        for k, phis in enumerate(self.coherent):
            fam = self.families[k]
            auts = [d.objects[e].aut(fam[e]) for e in d.elements]
            total = 1
            for a in auts:
                total *= len(a)
            if total * len(phis) > MAX_MATERIALIZE:
                raise TooLarge("pseudo-limit gauge group too large to materialize")
            for phi in phis:
                for combo in itertools.product(*auts):
                    g = dict(zip(d.elements, combo))
                    tgt = self.act(fam, g, phi)
                    src_o, tgt_o = (k, phi), (k, tgt)
                    homs.setdefault((src_o, tgt_o), []).append(("lim", src_o, tgt_o, combo))
        els = d.elements

        def comp(g, f):
            combo = tuple(d.objects[e].comp(a, b) for e, a, b in zip(els, g[3], f[3]))
            return ("lim", f[1], g[2], combo)

        def ident(o):
            fam = self.families[o[0]]
            return ("lim", o, o, tuple(d.objects[e].ident(fam[e]) for e in els))

        def inv(m):
            return ("lim", m[2], m[1], tuple(d.objects[e].inv(a) for e, a in zip(els, m[3])))

        lim = Groupoid(objs, homs, comp, ident, inv, "pseudo-limit")
        projections = {}
        for i, e in enumerate(els):
            projections[e] = GroupoidFunctor(
                lim, d.objects[e],
                {o: self.families[o[0]][e] for o in objs},
                {m: m[3][i] for m in lim.morphisms},
            )
        return lim, projections


def _skeletal_families(d: PosetDiagram) -> list[dict]:
    srcs = d.sources
    reaches = [d.reach(s) for s in srcs]
    seen: set = set()
    shared = []
    for r in reaches:
        shared.append([e for e in r if e in seen])
        seen.update(r)
    skel = {e: d.objects[e].skeleton()[0] for e in d.elements}
    tables = []
    for s, r, sh in zip(srcs, reaches, shared):
        tab: dict = {}
        for x in d.objects[s].reps():
            tab.setdefault(tuple(skel[e][r[e].obj[x]] for e in sh), []).append(x)
        tables.append(tab)
    out: list[dict] = []
    assign: dict = {}

    def rec(i: int) -> None:
        if i == len(srcs):
            out.append(dict(assign))
            return
        sig = tuple(assign[e] for e in shared[i])
        r = reaches[i]
        new = [e for e in r if e not in assign]
        for x in tables[i].get(sig, ()):
            for e in new:
                assign[e] = skel[e][r[e].obj[x]]
            rec(i + 1)
        for e in new:
            assign.pop(e, None)

    rec(0)
    return out


def _ancestors(d: PosetDiagram) -> dict:
    anc: dict = {e: {e} for e in d.elements}
    for e in d.elements:
        for a in d.incoming(e):
            anc[e] |= anc[a]
    return anc


def _coherent_phis(d: PosetDiagram, arrows: list, fam: dict, anc: dict) -> list[tuple]:
    out: list[tuple] = []
    comp: dict = {}
    for e in d.elements:
        comp[(e, e)] = d.objects[e].ident(fam[e])
    chosen: list = []

    def rec(i: int) -> None:
        if i == len(arrows):
            out.append(tuple(chosen))
            return
        a, b = arrows[i]
        fab = d.arrows[(a, b)]
        gb = d.objects[b]
        for phi in gb.hom(fab.obj[fam[a]], fam[b]):
            added = []
            ok = True
            for x in anc[a]:
                val = gb.comp(phi, fab.mor[comp[(x, a)]])
                old = comp.get((x, b))
                if old is None:
                    comp[(x, b)] = val
                    added.append((x, b))
                elif old != val:
                    ok = False
                    break
            if ok:
                chosen.append(phi)
                rec(i + 1)
                chosen.pop()
            for key in added:
                del comp[key]

    rec(0)
    return out


def limit(d: PosetDiagram) -> PseudoLimit:
    order = {e: i for i, e in enumerate(d.elements)}
    arrows = sorted(d.arrows, key=lambda ab: (order[ab[1]], order[ab[0]]))
    fams = _skeletal_families(d)
    anc = _ancestors(d)
    coherent = [_coherent_phis(d, arrows, f, anc) for f in fams]
    return PseudoLimit(d, arrows, fams, coherent)


def cone_iso(source: Groupoid, leg: Callable, d: PosetDiagram, admit: Callable | None = None) -> IsoVerdict:
    """Is the canonical functor from ``source`` into the pseudo-limit an equivalence?

    ``leg(e)`` must be a strict cone: ``F_ab . leg(a) == leg(b)``.  With
    ``admit``, essential surjectivity is only required over families it accepts.
    """
    lim = limit(d)
    legs = {e: leg(e) for e in d.elements}
    skel = {e: d.objects[e].skeleton() for e in d.elements}
    fam_index = {tuple(f[e] for e in d.elements): k for k, f in enumerate(lim.families)}
    hit: dict = {}
    for x in source.reps():
        y = {e: legs[e].obj[x] for e in d.elements}
        fam = {e: skel[e][0][y[e]] for e in d.elements}
        c = {e: skel[e][1][y[e]] for e in d.elements}
        k = fam_index.get(tuple(fam[e] for e in d.elements))
        if k is None:
            raise NotADiagram("legs do not form a cone")
        phi = []
        for a, b in lim.arrows:
            gb = d.objects[b]
            fab = d.arrows[(a, b)]
            phi.append(gb.comp(c[b], gb.inv(fab.mor[c[a]])))
        phi = tuple(phi)
        oid, size = lim.orbit_of(k, phi)
        if oid in hit:
            return IsoVerdict(False, f"objects {hit[oid]!r} and {x!r} are identified in the limit")
        hit[oid] = x
        auts = source.aut(x)
        images = set()
        for g in auts:
            images.add(tuple(d.objects[e].comp(c[e], d.objects[e].comp(legs[e].mor[g], d.objects[e].inv(c[e])))
                             for e in d.elements))
        if len(images) != len(auts):
            return IsoVerdict(False, f"automorphisms of {x!r} are not detected by the limit")
        lim_aut = lim.gauge_size(lim.families[k]) // size
        if lim_aut != len(auts):
            return IsoVerdict(False, f"{x!r} has {len(auts)} automorphisms, its image has {lim_aut}")
    total = excluded = 0
    for k, phis in enumerate(lim.coherent):
        orbits = {lim.orbit_of(k, p)[0] for p in phis}
        if admit is not None and not admit(lim.families[k]):
            excluded += len(orbits)
            continue
        total += len(orbits)
        for o in orbits:
            if o not in hit:
                return IsoVerdict(False, f"a limit object over family {k} is not in the essential image",
                                  {"components": total, "excluded": excluded})
    return IsoVerdict(True, "", {"components": total, "excluded": excluded})


def to_json_tables(g: Groupoid) -> tuple[dict, dict, dict]:
    """JSON tables for ``g`` plus the morphism and object naming used."""
    names = {m: f"m{i}" for i, m in enumerate(g.morphisms)}
    objs = {x: f"o{i}" for i, x in enumerate(g.objects)}
    comp = []
    for (x, y), ms in sorted(g.homs.items(), key=lambda kv: (g._pos[kv[0][0]], g._pos[kv[0][1]])):
        for z in g.objects:
            for f in ms:
                for h in g.hom(y, z):
                    comp.append([names[h], names[f], names[g.comp(h, f)]])
    return {
        "objects": [objs[x] for x in g.objects],
        "morphisms": [[names[m], objs[g.src(m)], objs[g.tgt(m)]] for m in g.morphisms],
        "compose": comp,
        "identities": {objs[x]: names[g.ident(x)] for x in g.objects},
        "inverses": {names[m]: names[g.inv(m)] for m in g.morphisms},
    }, names, objs


def from_json_object(data: dict) -> Groupoid:
    table = {(g, f): h for g, f, h in data["compose"]}
    return from_tables(list(data["objects"]), [tuple(m) for m in data["morphisms"]], table,
                       dict(data["identities"]), dict(data["inverses"]))


def restriction_equivalence(big: PosetDiagram, small: PosetDiagram) -> IsoVerdict:
    """Is restriction from the pseudo-limit over ``big`` to that over ``small`` an equivalence?

    ``small`` must be a full subdiagram of ``big`` with the same objects and arrows.
    """
    lb, ls = limit(big), limit(small)
    s_els = set(small.elements)
    extra = [e for e in big.elements if e not in s_els]
    pos = {ab: i for i, ab in enumerate(lb.arrows)}
    try:
        picks = [pos[ab] for ab in ls.arrows]
    except KeyError:
        raise NotADiagram("small diagram is not a subdiagram") from None
    s_index = {tuple(f[e] for e in small.elements): k for k, f in enumerate(ls.families)}
    hit: dict = {}
    for k, phi, aut in lb.components():
        fam = lb.families[k]
        ks = s_index.get(tuple(fam[e] for e in small.elements))
        if ks is None:
            raise NotADiagram("restricted family is not in the small limit")
        oid, size = ls.orbit_of(ks, tuple(phi[i] for i in picks))
        if oid in hit:
            return IsoVerdict(False, f"two limit objects over families {hit[oid]} and {k} become isomorphic")
        hit[oid] = k
        small_aut = ls.gauge_size(ls.families[ks]) // size
        if small_aut != aut:
            return IsoVerdict(False, f"limit object over family {k} has {aut} automorphisms, "
                                     f"its restriction has {small_aut}")
        # faithful: no nontrivial automorphism is invisible on the small part
        ident = {e: big.objects[e].ident(fam[e]) for e in big.elements}
        choices = [big.objects[e].aut(fam[e]) for e in extra]
        count = 1
        for c in choices:
            count *= len(c)
        if count > MAX_MATERIALIZE:
            raise TooLarge("gauge group too large for the restriction test")
        for combo in itertools.product(*choices):
            g = dict(ident)
            g.update(zip(extra, combo))
            if g != ident and lb.act(fam, g, phi) == phi:
                return IsoVerdict(False, f"an automorphism over family {k} is trivial after restriction")
    total = 0
    for ks, phis in enumerate(ls.coherent):
        for p in phis:
            oid, _ = ls.orbit_of(ks, p)
            if oid not in hit:
                return IsoVerdict(False, f"a limit object over family {ks} is not a restriction")
        total += len({ls.orbit_of(ks, p)[0] for p in phis})
    return IsoVerdict(True, "", {"components": total})
