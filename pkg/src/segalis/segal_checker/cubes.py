"""Strongly biCartesian cubes in the simplex category and higher excision.

Ordinals are ``[a]`` for ``a >= 0``; a monotone map ``[a] -> [b]`` is stored as
the tuple of its values together with ``b``.  A k-cube is indexed by subsets of
``range(k)``; the empty set is the initial vertex and every arrow adds one
direction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb

from ..errors import TooLarge
from ..simplicial_objects import SimplicialObject
from ..backends import PosetDiagram

MAX_K = 3
MAX_BOUND = 6

Map = tuple[int, ...]
Arrow = tuple[int, Map]  # (target ordinal, values)
Vertex = frozenset


def compose(g: Map, f: Map) -> Map:
    return tuple(g[x] for x in f)


def identity(a: int) -> Map:
    return tuple(range(a + 1))


@lru_cache(maxsize=None)
def monotone_maps(a: int, b: int) -> tuple[Map, ...]:
    """All monotone maps [a] -> [b] in lex order."""
    return tuple(m for m in combinations_with_replacement(range(b + 1), a + 1))


def hom_count(a: int, b: int) -> int:
    return comb(a + b + 1, a + 1)


# pushouts and pullbacks of single squares

def poset_pushout(b: int, c: int, f: Map, g: Map) -> tuple[int, Map, Map] | None:
    """Pushout of [b] <- [a] -> [c] among posets, if it is a nonempty total order.

    Glue f(x) ~ g(x), then collapse the strongly connected components of the
    generated preorder.  Returns (d, u, v) or None.
    """
    size = b + c + 2
    parent = list(range(size))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for x, y in zip(f, g):
        parent[find(x)] = find(b + 1 + y)
    edges = [(i, i + 1) for i in range(b)] + [(b + 1 + i, b + 2 + i) for i in range(c)]
    # preorder on classes; close transitively and collapse cycles
    classes = sorted({find(x) for x in range(size)})
    idx = {r: i for i, r in enumerate(classes)}
    k = len(classes)
    le = [[i == j for j in range(k)] for i in range(k)]
    for x, y in edges:
        le[idx[find(x)]][idx[find(y)]] = True
    for m in range(k):
        row_m = le[m]
        for i in range(k):
            if le[i][m]:
                row_i = le[i]
                for j in range(k):
                    if row_m[j]:
                        row_i[j] = True
    comp = {}
    reps: list[int] = []
    for i in range(k):
        for r in reps:
            if le[i][r] and le[r][i]:
                comp[i] = comp[r]
                break
        else:
            comp[i] = len(reps)
            reps.append(i)
    # total order check on the collapsed classes
    for i, j in combinations(reps, 2):
        if not (le[i][j] or le[j][i]):
            return None
    rank = {comp[r]: sum(1 for s in reps if le[s][r]) - 1 for r in reps}
    pos = lambda x: rank[comp[idx[find(x)]]]  # noqa: E731
    u = tuple(pos(x) for x in range(b + 1))
    v = tuple(pos(b + 1 + y) for y in range(c + 1))
    return len(reps) - 1, u, v


def _count_extensions(c: int, fixed: dict[int, int], m: int) -> int:
    """Number of monotone q: [c] -> [m] with prescribed values on some positions."""
    total = 1
    prev_pos, prev_val = -1, 0
    for p in sorted(fixed) + [c + 1]:
        val = fixed[p] if p <= c else m
        if val < prev_val:
            return 0
        free = p - prev_pos - 1
        total *= comb(val - prev_val + free, free)
        prev_pos, prev_val = p, val
    return total


def is_pushout(square: "Square", bound: int) -> bool:
    """Universal property against every [m] with m <= bound + 1.

    Hom([d],[m]) -> {(p, q) : p f = q g} must be a bijection.  It is injective
    exactly when u and v are jointly surjective; the compatible pairs are
    counted by enumerating p on the image of f and counting the extensions of
    p and of q.
    """
    if set(square.u) | set(square.v) != set(range(square.d + 1)):
        return False
    a, b, c, d = square.a, square.b, square.c, square.d
    f, g = square.f, square.g
    pts = sorted(set(f))
    for m in range(bound + 2):
        # p is determined up to free extension by its values on the image of f
        pairs = 0
        for vals in monotone_maps(len(pts) - 1, m):
            at = dict(zip(pts, vals))
            fixed: dict[int, int] = {}
            ok = True
            for x in range(a + 1):
                want = at[f[x]]
                if fixed.setdefault(g[x], want) != want:
                    ok = False
                    break
            if ok:
                pairs += _count_extensions(b, at, m) * _count_extensions(c, fixed, m)
        if pairs != hom_count(d, m):
            return False
    return True


def is_pullback(square: "Square") -> bool:
    """(f, g) is a bijection onto the fiber product and reflects the order."""
    a = square.a
    f, g, u, v = square.f, square.g, square.u, square.v
    fiber = {(x, y) for x in range(square.b + 1) for y in range(square.c + 1) if u[x] == v[y]}
    pairs = [(f[x], g[x]) for x in range(a + 1)]
    if len(set(pairs)) != a + 1 or set(pairs) != fiber:
        return False
    for x, y in product(range(a + 1), repeat=2):
        if f[x] <= f[y] and g[x] <= g[y] and x > y:
            return False
    return True


@dataclass(frozen=True)
class Square:
    """[a] -f-> [b], [a] -g-> [c], [b] -u-> [d], [c] -v-> [d]."""

    a: int
    b: int
    c: int
    d: int
    f: Map
    g: Map
    u: Map
    v: Map

    def commutes(self) -> bool:
        return compose(self.u, self.f) == compose(self.v, self.g)

    def non_identity(self) -> bool:
        return all(m != identity(len(m) - 1) or s != len(m) - 1
                   for m, s in ((self.f, self.b), (self.g, self.c), (self.u, self.d), (self.v, self.d)))


def bicartesian_square(b: int, c: int, f: Map, g: Map, bound: int) -> Square | None:
    """The biCartesian completion of the span, or None."""
    if len(set(zip(f, g))) != len(f):
        return None  # cannot be a pullback: A would not embed in the fiber product
    po = poset_pushout(b, c, f, g)
    if po is None or po[0] > bound:
        return None
    d, u, v = po
    sq = Square(len(f) - 1, b, c, d, f, g, u, v)
    if not sq.non_identity() or not is_pullback(sq) or not is_pushout(sq, bound):
        return None
    return sq


# cubes

@dataclass
class CubeInDelta:
    """A k-cube of ordinals: ``dims[S]`` for subsets S and ``maps[(S, T)]`` along T = S + {i}."""

    k: int
    dims: dict[Vertex, int]
    maps: dict[tuple[Vertex, Vertex], Map]
    bound: int = 0
    _to_top: dict = field(default_factory=dict, repr=False)

    @property
    def top(self) -> Vertex:
        return frozenset(range(self.k))

    @property
    def vertices(self) -> list[Vertex]:
        return sorted(self.dims, key=lambda s: (len(s), sorted(s)))

    def path_map(self, s: Vertex, t: Vertex) -> Map:
        """Composite along any chain from s up to t (all chains agree by functoriality)."""
        m = identity(self.dims[s])
        cur = s
        for i in sorted(t - s):
            nxt = cur | {i}
            m = compose(self.maps[(cur, nxt)], m)
            cur = nxt
        return m

    def to_top(self, s: Vertex) -> Map:
        hit = self._to_top.get(s)
        if hit is None:
            hit = self._to_top[s] = self.path_map(s, self.top)
        return hit

    def is_functorial(self) -> bool:
        for s in self.dims:
            for i, j in combinations(sorted(self.top - s), 2):
                si, sj, sij = s | {i}, s | {j}, s | {i, j}
                one = compose(self.maps[(si, sij)], self.maps[(s, si)])
                two = compose(self.maps[(sj, sij)], self.maps[(s, sj)])
                if one != two:
                    return False
        return True

    def faces(self) -> list[Square]:
        out = []
        for s in self.vertices:
            for i, j in combinations(sorted(self.top - s), 2):
                si, sj, sij = s | {i}, s | {j}, s | {i, j}
                out.append(Square(self.dims[s], self.dims[si], self.dims[sj], self.dims[sij], self.maps[(s, si)],
                                  self.maps[(s, sj)], self.maps[(si, sij)], self.maps[(sj, sij)]))
        return out

    def is_strongly_bicartesian(self, bound: int | None = None) -> bool:
        bound = self.bound if bound is None else bound
        return self.is_functorial() and all(
            sq.commutes() and sq.non_identity() and is_pullback(sq) and is_pushout(sq, bound) for sq in self.faces())

    def is_injective(self) -> bool:
        return all(len(set(m)) == len(m) for m in self.maps.values())

    def image_sets(self) -> frozenset[frozenset[int]] | None:
        """Vertices as subsets of the top ordinal, when every map is injective."""
        if not self.is_injective():
            return None
        return frozenset(frozenset(self.to_top(s)) for s in self.dims)

    def to_json(self) -> dict:
        return {"k": self.k,
                "vertices": [{"directions": sorted(s), "ordinal": self.dims[s], "to_top": list(self.to_top(s))}
                             for s in self.vertices]}


def cube_from_subsets(sets: list[set[int]] | list[tuple[int, ...]]) -> CubeInDelta:
    """A cube of inclusions given by 2^k subsets of one ordinal, listed as vertices.

    The smallest set is the initial vertex; the directions are the sets
    covering it, in increasing order of their extra elements.
    """
    family = sorted({tuple(sorted(s)) for s in sets}, key=lambda s: (len(s), s))
    init = set(family[0])
    atoms = [set(s) for s in family if len(s) == len(init) + 1 and init <= set(s)]
    k = len(atoms)
    if 2 ** k != len(family):
        raise ValueError("the sets do not form a cube")
    by_dirs: dict[Vertex, tuple[int, ...]] = {}
    for s in family:
        dirs = frozenset(i for i, at in enumerate(atoms) if at <= set(s))
        by_dirs[dirs] = s
    if len(by_dirs) != len(family):
        raise ValueError("the sets do not form a cube")
    dims = {s: len(v) - 1 for s, v in by_dirs.items()}
    maps = {}
    for s, v in by_dirs.items():
        for i in range(k):
            if i not in s:
                w = by_dirs[s | {i}]
                maps[(s, s | {i})] = tuple(w.index(x) for x in v)
    return CubeInDelta(k, dims, maps)


def _guard(k: int, n_bound: int) -> None:
    if k < 1 or k > MAX_K or n_bound < 0 or n_bound > MAX_BOUND:
        raise TooLarge(f"cube enumeration limited to k <= {MAX_K}, n_bound <= {MAX_BOUND}")


def _arrows_from(a: int, n_bound: int) -> list[Arrow]:
    out = []
    for b in range(n_bound + 1):
        for m in monotone_maps(a, b):
            if not (a == b and m == identity(a)):
                out.append((b, m))
    return out


@lru_cache(maxsize=None)
def _square_table(a: int, n_bound: int) -> dict[tuple[Arrow, Arrow], Square]:
    arrows = _arrows_from(a, n_bound)
    table = {}
    for i, (b, f) in enumerate(arrows):
        for c, g in arrows[i:]:
            sq = bicartesian_square(b, c, f, g, n_bound)
            if sq is not None:
                table[((b, f), (c, g))] = sq
    return table


def _lift(d: int, u: Map, v: Map, pu: Map, pv: Map) -> Map | None:
    """Map [d] -> T agreeing with pu on the image of u and pv on the image of v."""
    vals: dict[int, int] = {}
    for x, y in enumerate(u):
        if vals.setdefault(y, pu[x]) != pu[x]:
            return None
    for x, y in enumerate(v):
        if vals.setdefault(y, pv[x]) != pv[x]:
            return None
    if set(vals) != set(range(d + 1)):
        return None
    return tuple(vals[i] for i in range(d + 1))


def _assemble(a: int, dirs: list[Arrow], table: dict, n_bound: int) -> CubeInDelta | None:
    k = len(dirs)
    empty: Vertex = frozenset()
    dims: dict[Vertex, int] = {empty: a}
    maps: dict = {}
    for i, (b, f) in enumerate(dirs):
        dims[frozenset({i})] = b
        maps[(empty, frozenset({i}))] = f
    for i, j in combinations(range(k), 2):
        sq = table.get((dirs[i], dirs[j]))
        if sq is None:
            return None
        dims[frozenset({i, j})] = sq.d
        maps[(frozenset({i}), frozenset({i, j}))] = sq.u
        maps[(frozenset({j}), frozenset({i, j}))] = sq.v
    if k == 3:
        # the far face at direction 0 determines the top vertex
        s01, s02, s12 = frozenset({0, 1}), frozenset({0, 2}), frozenset({1, 2})
        far = bicartesian_square(dims[s01], dims[s02], maps[(frozenset({0}), s01)], maps[(frozenset({0}), s02)],
                                 n_bound)
        if far is None:
            return None
        top = frozenset({0, 1, 2})
        dims[top] = far.d
        maps[(s01, top)] = far.u
        maps[(s02, top)] = far.v
        # s12 -> top is induced from the maps of [b1] and [b2] into the top
        b1_top = compose(far.u, maps[(frozenset({1}), s01)])
        b2_top = compose(far.v, maps[(frozenset({2}), s02)])
        w = _lift(dims[s12], maps[(frozenset({1}), s12)], maps[(frozenset({2}), s12)], b1_top, b2_top)
        if w is None:
            return None
        maps[(s12, top)] = w
    cube = CubeInDelta(k, dims, maps, n_bound)
    if k == 3 and not cube.is_strongly_bicartesian():
        return None
    return cube


def enumerate_strongly_bicartesian_cubes(k: int, n_bound: int) -> list[CubeInDelta]:
    """All strongly biCartesian k-cubes with every ordinal at most [n_bound].

    Directions are unordered: each cube is listed once, with its direction
    arrows in increasing (target, values) order.  Identity edges are excluded.
    """
    _guard(k, n_bound)
    return list(_enumerate(k, n_bound))


@lru_cache(maxsize=None)
def _enumerate(k: int, n_bound: int) -> tuple[CubeInDelta, ...]:
    out: list[CubeInDelta] = []
    for a in range(n_bound + 1):
        arrows = _arrows_from(a, n_bound)
        if k == 1:
            for b, f in arrows:
                out.append(CubeInDelta(1, {frozenset(): a, frozenset({0}): b}, {(frozenset(), frozenset({0})): f},
                                       n_bound))
            continue
        table = _square_table(a, n_bound)
        if k == 2:
            for (x, y), sq in table.items():
                cube = _assemble(a, [x, y], table, n_bound)
                if cube is not None:
                    out.append(cube)
            continue
        partners: dict[Arrow, list[Arrow]] = {}
        for x, y in table:
            partners.setdefault(x, []).append(y)
        for x in arrows:
            ys = partners.get(x, [])
            for j, y in enumerate(ys):
                for z in ys[j:]:
                    if (y, z) in table:
                        cube = _assemble(a, [x, y, z], table, n_bound)
                        if cube is not None:
                            out.append(cube)
    return tuple(out)


# the Cartesian check

def cube_diagram(x: SimplicialObject, cube: CubeInDelta) -> PosetDiagram:
    """X on the punctured cube; arrows run from larger to smaller vertex sets."""
    top = cube.top
    if cube.dims[top] > x.N:
        from ..errors import TruncationTooLow

        raise TruncationTooLow(f"cube needs level {cube.dims[top]}, truncation is {x.N}")
    els = [s for s in cube.vertices if s != top]
    key = lambda s: tuple(sorted(s))  # noqa: E731
    objects = {key(s): x.level(cube.dims[s]) for s in els}
    arrows = {}
    for (s, t), m in cube.maps.items():
        if t != top:
            arrows[(key(t), key(s))] = x.operator(m, cube.dims[t])
    return PosetDiagram(x.backend, tuple(key(s) for s in els), objects, arrows)


def is_cartesian(x: SimplicialObject, cube: CubeInDelta):
    """Verdict on X(top) -> lim of X over the punctured cube."""
    d = cube_diagram(x, cube)
    n = cube.dims[cube.top]
    legs = {tuple(sorted(s)): x.operator(cube.to_top(s), n) for s in cube.dims if s != cube.top}
    return x.backend.cone_iso(x.level(n), lambda e: legs[e], d)


@dataclass
class ExcisionReport:
    d: int
    name: str
    bound: int
    segal: bool
    cubes: int
    cartesian: bool
    failures: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.segal == self.cartesian

    def to_json(self) -> dict:
        return {"d": self.d, "object": self.name, "cube_bound": self.bound, "pushout_test_bound": self.bound + 1,
                "lower_segal": self.segal, "cubes": self.cubes, "all_cartesian": self.cartesian, "agree": self.ok,
                "ok": self.ok, "failures": self.failures[:5]}


def check_higher_excision(x: SimplicialObject, d: int, n_bound: int | None = None) -> ExcisionReport:
    """Compare lower (2d-1)-Segal with Cartesian-ness on strongly biCartesian (d+1)-cubes.

    Cubes are enumerated up to ``n_bound`` (default: the truncation, capped
    by the guard) and only those whose top ordinal is within the truncation
    are mapped.
    """
    from .reports import is_lower_d_segal

    if d < 1:
        raise ValueError("higher excision needs d >= 1")
    bound = min(x.N, MAX_BOUND) if n_bound is None else n_bound
    seg = is_lower_d_segal(x, 2 * d - 1, strict=False).ok
    cubes = [c for c in enumerate_strongly_bicartesian_cubes(d + 1, bound) if c.dims[c.top] <= x.N]
    fails = []
    for c in cubes:
        v = is_cartesian(x, c)
        if not v.ok:
            fails.append({"cube": c.to_json(), "witness": v.witness})
    return ExcisionReport(d, x.name, bound, seg, len(cubes), not fails, fails)
