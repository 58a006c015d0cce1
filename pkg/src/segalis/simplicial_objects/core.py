"""Truncated simplicial objects with values in a backend."""
from __future__ import annotations

from itertools import combinations
from types import ModuleType
from typing import Any, Sequence

from ..backends import PosetDiagram, get_backend
from ..complexes import Complex, Simplex
from ..errors import NoPaths, SimplicialIdentityError, TruncationTooLow

Monotone = tuple[int, ...]


def epi_mono(theta: Monotone) -> tuple[Monotone, Monotone]:
    """Factor a monotone map [m] -> [n] as mono after epi.

    Returns (epi as a tuple [m] -> [k], image of the mono as a sorted tuple).
    """
    image = tuple(sorted(set(theta)))
    pos = {v: i for i, v in enumerate(image)}
    return tuple(pos[v] for v in theta), image


def is_monotone(theta: Sequence[int], n: int) -> bool:
    return all(0 <= a <= b <= n for a, b in zip(theta, theta[1:])) and (not theta or 0 <= theta[0] and theta[-1] <= n)


def coface(i: int, n: int) -> Monotone:
    """delta^i : [n-1] -> [n]."""
    return tuple(j if j < i else j + 1 for j in range(n))


def codegeneracy(i: int, n: int) -> Monotone:
    """sigma^i : [n+1] -> [n]."""
    return tuple(j if j <= i else j - 1 for j in range(n + 2))


class SimplicialObject:
    """Levels ``X_0..X_N`` with faces ``faces[n][i]: X_n -> X_{n-1}`` and
    degeneracies ``degeneracies[n][i]: X_n -> X_{n+1}``."""

    def __init__(self, backend: str | ModuleType, objects: list, faces: list[list], degeneracies: list[list],
                 name: str = "", check: bool = True, meta: dict | None = None):
        self.backend = get_backend(backend) if isinstance(backend, str) else backend
        self.objects = list(objects)
        self.faces = [list(f) for f in faces]
        self.degeneracies = [list(s) for s in degeneracies]
        self.name = name
        self.meta = dict(meta or {})
        self._ops: dict = {}
        self._limits: dict = {}
        if len(self.faces) != len(self.objects) or len(self.degeneracies) != len(self.objects) - 1:
            raise SimplicialIdentityError("face/degeneracy lists do not match the truncation")
        for n in range(1, len(self.objects)):
            if len(self.faces[n]) != n + 1:
                raise SimplicialIdentityError(f"level {n} needs {n + 1} faces")
        for n in range(len(self.degeneracies)):
            if len(self.degeneracies[n]) != n + 1:
                raise SimplicialIdentityError(f"level {n} needs {n + 1} degeneracies")
        if check:
            self.check_identities()

    @property
    def N(self) -> int:
        return len(self.objects) - 1

    @property
    def backend_name(self) -> str:
        return self.backend.NAME

    def __repr__(self) -> str:
        return f"SimplicialObject({self.name or self.backend_name}, N={self.N})"

    def check_identities(self) -> None:
        be = self.backend
        eq, comp = be.equal, be.compose
        d, s = self.faces, self.degeneracies
        N = self.N
        for n in range(2, N + 1):
            for j in range(n + 1):
                for i in range(j):
                    if not eq(comp(d[n - 1][i], d[n][j]), comp(d[n - 1][j - 1], d[n][i])):
                        raise SimplicialIdentityError(f"d_{i} d_{j} != d_{j - 1} d_{i} on X_{n}")
        for n in range(N):
            ident = be.identity(self.objects[n])
            for j in range(n + 1):
                sj = s[n][j]
                for i in range(n + 2):
                    lhs = comp(d[n + 1][i], sj)
                    if i < j:
                        ok = eq(lhs, comp(s[n - 1][j - 1], d[n][i]))
                    elif i in (j, j + 1):
                        ok = eq(lhs, ident)
                    else:
                        ok = eq(lhs, comp(s[n - 1][j], d[n][i - 1]))
                    if not ok:
                        raise SimplicialIdentityError(f"d_{i} s_{j} identity fails on X_{n}")
        for n in range(N - 1):
            for j in range(n + 1):
                for i in range(j + 1):
                    if not eq(comp(s[n + 1][i], s[n][j]), comp(s[n + 1][j + 1], s[n][i])):
                        raise SimplicialIdentityError(f"s_{i} s_{j} != s_{j + 1} s_{i} on X_{n}")

    def level(self, n: int):
        if n > self.N:
            raise TruncationTooLow(f"level {n} exceeds truncation {self.N}")
        return self.objects[n]

    def operator(self, theta: Sequence[int], n: int):
        """X(theta): X_n -> X_m for a monotone theta: [m] -> [n]."""
        theta = tuple(theta)
        key = (theta, n)
        hit = self._ops.get(key)
        if hit is not None:
            return hit
        if n > self.N or len(theta) - 1 > self.N:
            raise TruncationTooLow(f"operator on level {max(n, len(theta) - 1)} exceeds truncation {self.N}")
        be = self.backend
        epi, image = epi_mono(theta)
        f = be.identity(self.objects[n])
        level = n
        for j in sorted(set(range(n + 1)) - set(image), reverse=True):
            f = be.compose(self.faces[level][j], f)
            level -= 1
        repeats = [i for i in range(len(epi) - 1) if epi[i] == epi[i + 1]]
        for j in repeats:
            f = be.compose(self.degeneracies[level][j], f)
            level += 1
        self._ops[key] = f
        return f

    def evaluate_on_subset(self, s: Simplex):
        """The value X_I := X_{|I|-1}."""
        return self.level(len(s) - 1)

    def restriction(self, big: Simplex, small: Simplex):
        """X_big -> X_small for small a face of big, through the order isomorphisms."""
        pos = {v: i for i, v in enumerate(big)}
        return self.operator(tuple(pos[v] for v in small), len(big) - 1)

    def diagram(self, k: Complex, reduced: bool = False) -> PosetDiagram:
        """X restricted to the face poset of K (arrows go from larger to smaller faces).

        With ``reduced`` only facets and their nonempty pairwise intersections
        are kept; this has the same limit for set and vector space values.
        """
        key = (k.simplices, reduced)
        hit = self._limits.get(("diagram", key))
        if hit is not None:
            return hit
        if k.dim > self.N:
            raise TruncationTooLow(f"complex of dimension {k.dim} exceeds truncation {self.N}")
        if reduced:
            fs = list(k.facets)
            inter = set()
            for a, b in combinations(fs, 2):
                c = tuple(sorted(set(a) & set(b)))
                if c and c not in fs:
                    inter.add(c)
            elements = fs + sorted(inter)
            arrows = {(f, c): self.restriction(f, c) for f in fs for c in inter if set(c) <= set(f)}
        else:
            elements = sorted(k.simplices)
            arrows = {}
            for s in elements:
                if len(s) > 1:
                    for i in range(len(s)):
                        t = s[:i] + s[i + 1:]
                        arrows[(s, t)] = self.restriction(s, t)
        objects = {e: self.evaluate_on_subset(e) for e in elements}
        d = PosetDiagram(self.backend, tuple(elements), objects, arrows)
        self._limits[("diagram", key)] = d
        return d

    def cone_leg(self, n: int):
        """Leg X_n -> X_sigma of the canonical cone, as a function of sigma."""
        top = tuple(range(n + 1))
        return lambda s: self.restriction(top, s)

    def limit_over_complex(self, k: Complex, reduced: bool | None = None):
        """(limit, canonical map data) for X over the face poset of K."""
        if reduced is None:
            reduced = self.backend_name != "groupoid"
        d = self.diagram(k, reduced)
        return self.backend.limit(d)

    def segal_verdict(self, k: Complex):
        """Is X_n -> X_K an iso (equivalence), with n = k.n?  Memoized."""
        key = ("verdict", k.simplices, k.n)
        hit = self._limits.get(key)
        if hit is not None:
            return hit
        n = k.n
        if n > self.N:
            raise TruncationTooLow(f"level {n} exceeds truncation {self.N}")
        if self.backend_name == "groupoid":
            v = self.backend.cone_iso(self.objects[n], self.cone_leg(n), self.diagram(k), self.cutoff_filter(n))
        else:
            v = self.backend.cone_iso(self.objects[n], self.cone_leg(n), self.diagram(k, True))
        self._limits[key] = v
        return v

    def ambient(self, s: Simplex, n: int) -> Simplex:
        """Vertices of the generating object that the simplex ``s`` of [n] stands for."""
        fn = self.meta.get("ambient")
        return fn(s, n) if fn is not None else tuple(s)

    def cutoff_filter(self, n: int):
        """Predicate on limit families: would the glued object respect the dimension cutoff?

        Only objects carrying ``pair_dims`` and ``cutoff`` metadata are filtered.
        """
        pair_dims = self.meta.get("pair_dims")
        cutoff = self.meta.get("cutoff")
        if pair_dims is None or cutoff is None:
            return None

        def admit(family: dict) -> bool:
            known: dict = {}
            for s, obj in family.items():
                amb = self.ambient(s, n)
                for (a, b), dim in pair_dims(len(s) - 1, obj).items():
                    known[(amb[a], amb[b])] = dim
            verts = sorted({v for ab in known for v in ab})
            total = max(known.values(), default=0)
            steps = list(zip(verts, verts[1:]))
            if steps and all(ab in known for ab in steps):
                total = max(total, sum(known[ab] for ab in steps))
            return total <= cutoff

        return admit

    def restriction_verdict(self, big: Complex, small: Complex):
        """Is the restriction X_big -> X_small an iso (equivalence)?"""
        be = self.backend
        if self.backend_name == "groupoid":
            from ..backends import groupoid as gb

            return gb.restriction_equivalence(self.diagram(big), self.diagram(small))
        lim = be.limit(self.diagram(big, True))
        dsmall = self.diagram(small, True)
        srcs_big = lim.sources

        def leg(e):
            for f in srcs_big:
                if set(e) <= set(f):
                    return be.compose(self.restriction(f, e), lim.projections[f])
            raise AssertionError(f"{e} is not a face of the larger complex")

        return be.cone_iso(lim.apex, leg, dsmall)


def path_space(x: SimplicialObject, side: str = "initial") -> SimplicialObject:
    """Initial path space (reindex along [0]*[n]) or final path space ([n]*[0])."""
    if x.N < 1:
        raise NoPaths("path spaces need truncation at least 1")
    side = side.lower()
    if side not in ("initial", "final"):
        raise ValueError(f"unknown side {side!r}")
    shift = 1 if side == "initial" else 0
    objects = x.objects[1:]
    faces: list[list] = [[]]
    for n in range(1, x.N):
        faces.append([x.faces[n + 1][i + shift] for i in range(n + 1)])
    degs = [[x.degeneracies[n + 1][i + shift] for i in range(n + 1)] for n in range(x.N - 1)]
    tag = "P<" if side == "initial" else "P>"
    meta = {k: v for k, v in x.meta.items() if k in ("cutoff", "p")}
    meta.update({"path_space": side, "parent": x.name})
    if "pair_dims" in x.meta:
        parent_dims = x.meta["pair_dims"]
        meta["pair_dims"] = lambda m, obj: parent_dims(m + 1, obj)
    if side == "initial":
        meta["ambient"] = lambda s, n: x.ambient(join_initial(s), n + 1)
    else:
        meta["ambient"] = lambda s, n: x.ambient(join_final(s, n), n + 1)
    return SimplicialObject(x.backend, objects, faces, degs, name=f"{tag}{x.name}", check=False, meta=meta)


def join_initial(theta: Sequence[int]) -> Monotone:
    """[0] * theta: prepend a cone point."""
    return (0,) + tuple(t + 1 for t in theta)


def join_final(theta: Sequence[int], n: int) -> Monotone:
    return tuple(theta) + (n + 1,)


def constant(backend: str, obj: Any, N: int, name: str = "constant") -> SimplicialObject:
    be = get_backend(backend)
    ident = be.identity(obj)
    return SimplicialObject(be, [obj] * (N + 1), [[]] + [[ident] * (n + 1) for n in range(1, N + 1)],
                            [[ident] * (n + 1) for n in range(N)], name=name)
