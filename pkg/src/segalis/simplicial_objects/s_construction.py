"""Waldhausen S-construction of finite-dimensional F_p vector spaces, as groupoids.

An object of S_n is a triangular array of spaces ``A_ij = F_p^(a_ij)``
(0 <= i <= j <= n) with ``A_ii = 0``, horizontal maps ``A_ij -> A_i,j+1`` and
vertical maps ``A_ij -> A_i+1,j`` forming commuting squares, such that every
``A_ij -> A_ik -> A_jk`` is short exact.  Morphisms are families of invertible
matrices compatible with all maps.  Total dimension ``a_0n`` is capped by a
cutoff so each S_n is finite.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Sequence

from ..backends import groupoid
from ..backends.groupoid import Groupoid, GroupoidFunctor
from ..errors import TooLarge
from .core import SimplicialObject, codegeneracy, coface

Matrix = tuple[tuple[int, ...], ...]

MAX_GAUGE_WORK = 2_000_000


def mat_mul(a: Matrix, b: Matrix, p: int, rows: int, inner: int, cols: int) -> Matrix:
    """a (rows x inner) times b (inner x cols)."""
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(inner)) % p for j in range(cols)) for i in range(rows))


def zero_mat(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def ident_mat(k: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(k)) for i in range(k))


def rank_mod(a: Matrix, p: int) -> int:
    rows = [list(r) for r in a]
    rk = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], p - 2, p)
        rows[rk] = [x * inv % p for x in rows[rk]]
        for i in range(len(rows)):
            if i != rk and rows[i][c] % p:
                f = rows[i][c]
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[rk])]
        rk += 1
    return rk


@lru_cache(maxsize=None)
def all_matrices(rows: int, cols: int, p: int) -> tuple[Matrix, ...]:
    out = []
    for vals in itertools.product(range(p), repeat=rows * cols):
        out.append(tuple(tuple(vals[i * cols:(i + 1) * cols]) for i in range(rows)))
    return tuple(out)


@lru_cache(maxsize=None)
def general_linear(k: int, p: int) -> tuple[tuple[Matrix, ...], dict]:
    """GL_k(F_p) and its inversion table."""
    els = tuple(m for m in all_matrices(k, k, p) if rank_mod(m, p) == k)
    ident = ident_mat(k)
    inv = {}
    for a in els:
        for b in els:
            if mat_mul(a, b, p, k, k, k) == ident:
                inv[a] = b
                break
    return els, inv


def pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n + 1) for j in range(i, n + 1)]


class ArrayModel:
    """Arrays at level n: ``(dims, H, V)`` with dims keyed by pair, H/V by slot."""

    def __init__(self, p: int, n: int):
        self.p = p
        self.n = n
        self.pairs = pairs(n)
        self.pidx = {pr: k for k, pr in enumerate(self.pairs)}
        self.hslots = [(i, j) for i, j in self.pairs if j < n]
        self.vslots = [(i, j) for i, j in self.pairs if i < j]
        self.hidx = {s: k for k, s in enumerate(self.hslots)}
        self.vidx = {s: k for k, s in enumerate(self.vslots)}

    def dim(self, obj, i: int, j: int) -> int:
        return obj[0][self.pidx[(i, j)]]

    def arrow(self, obj, src: tuple[int, int], tgt: tuple[int, int]) -> Matrix:
        """Composite A_src -> A_tgt: horizontals first, then verticals."""
        (i, j), (k, l) = src, tgt
        if not (i <= k and j <= l and k <= l):
            raise ValueError(f"no arrow {src} -> {tgt}")
        p = self.p
        cur = ident_mat(self.dim(obj, i, j))
        for b in range(j, l):
            h = obj[1][self.hidx[(i, b)]]
            cur = mat_mul(h, cur, p, self.dim(obj, i, b + 1), self.dim(obj, i, b), self.dim(obj, i, j))
        for a in range(i, k):
            v = obj[2][self.vidx[(a, l)]]
            cur = mat_mul(v, cur, p, self.dim(obj, a + 1, l), self.dim(obj, a, l), self.dim(obj, i, j))
        return cur

    def is_valid(self, obj) -> bool:
        p, n = self.p, self.n
        for i, j in self.pairs:
            if i < j < n:
                # square (i,j) -> (i,j+1) -> (i+1,j+1) vs (i,j) -> (i+1,j) -> (i+1,j+1)
                top = mat_mul(obj[2][self.vidx[(i, j + 1)]], obj[1][self.hidx[(i, j)]], p,
                              self.dim(obj, i + 1, j + 1), self.dim(obj, i, j + 1), self.dim(obj, i, j))
                bot = mat_mul(obj[1][self.hidx[(i + 1, j)]], obj[2][self.vidx[(i, j)]], p,
                              self.dim(obj, i + 1, j + 1), self.dim(obj, i + 1, j), self.dim(obj, i, j))
                if top != bot:
                    return False
        for i in range(n + 1):
            for j in range(i, n + 1):
                for k in range(j, n + 1):
                    a, b, c = self.dim(obj, i, j), self.dim(obj, i, k), self.dim(obj, j, k)
                    if b != a + c:
                        return False
                    f = self.arrow(obj, (i, j), (i, k))
                    g = self.arrow(obj, (i, k), (j, k))
                    if rank_mod(f, p) != a or rank_mod(g, p) != c:
                        return False
                    if any(x for row in mat_mul(g, f, p, c, b, a) for x in row):
                        return False
        return True

    def enumerate(self, cutoff: int) -> list:
        p, n = self.p, self.n
        out = []
        for cons in itertools.product(range(cutoff + 1), repeat=n):
            if sum(cons) > cutoff:
                continue
            dims = tuple(sum(cons[i:j]) for i, j in self.pairs)
            d = dict(zip(self.pairs, dims))
            hchoices = []
            for i, j in self.hslots:
                a, b = d[(i, j)], d[(i, j + 1)]
                hchoices.append([m for m in all_matrices(b, a, p) if rank_mod(m, p) == a])
            vchoices = []
            for i, j in self.vslots:
                a, b = d[(i, j)], d[(i + 1, j)]
                vchoices.append([m for m in all_matrices(b, a, p) if rank_mod(m, p) == b])
            work = 1
            for c in hchoices + vchoices:
                work *= len(c)
            if work > MAX_GAUGE_WORK:
                raise TooLarge(f"level {n} has {work} candidate arrays")
            for hs in itertools.product(*hchoices):
                for vs in itertools.product(*vchoices):
                    obj = (dims, hs, vs)
                    if self.is_valid(obj):
                        out.append(obj)
        return out

    def gauge(self, dims: tuple) -> list[tuple]:
        """All gauge families (one invertible matrix per pair)."""
        return list(itertools.product(*(general_linear(a, self.p)[0] for a in dims)))

    def act(self, g: tuple, obj) -> tuple:
        p = self.p
        dims, hs, vs = obj
        inv = [general_linear(a, p)[1][m] for a, m in zip(dims, g)]
        d = dict(zip(self.pairs, dims))
        gi = dict(zip(self.pairs, g))
        ginv = dict(zip(self.pairs, inv))
        new_h = []
        for (i, j), h in zip(self.hslots, hs):
            a, b = d[(i, j)], d[(i, j + 1)]
            new_h.append(mat_mul(gi[(i, j + 1)], mat_mul(h, ginv[(i, j)], p, b, a, a), p, b, b, a))
        new_v = []
        for (i, j), v in zip(self.vslots, vs):
            a, b = d[(i, j)], d[(i + 1, j)]
            new_v.append(mat_mul(gi[(i + 1, j)], mat_mul(v, ginv[(i, j)], p, b, a, a), p, b, b, a))
        return (dims, tuple(new_h), tuple(new_v))


def reindex(src: ArrayModel, tgt: ArrayModel, theta: Sequence[int], obj) -> tuple:
    """theta^*: arrays on [n] -> arrays on [m] for monotone theta: [m] -> [n]."""
    dims = tuple(src.dim(obj, theta[i], theta[j]) for i, j in tgt.pairs)
    hs = tuple(src.arrow(obj, (theta[i], theta[j]), (theta[i], theta[j + 1])) for i, j in tgt.hslots)
    vs = tuple(src.arrow(obj, (theta[i], theta[j]), (theta[i + 1], theta[j])) for i, j in tgt.vslots)
    return (dims, hs, vs)


def _groupoid_of(model: ArrayModel, objects: list) -> Groupoid:
    p = model.p
    known = set(objects)
    homs: dict = {}
    for x in objects:
        for g in model.gauge(x[0]):
            y = model.act(g, x)
            if y not in known:
                raise AssertionError("gauge action leaves the object set")
            homs.setdefault((x, y), []).append((x, y, g))
    dims_of = {x: x[0] for x in objects}

    def comp(g, f):
        dims = dims_of[f[0]]
        prod = tuple(mat_mul(b, a, p, k, k, k) for a, b, k in zip(f[2], g[2], dims))
        return (f[0], g[1], prod)

    def ident(x):
        return (x, x, tuple(ident_mat(k) for k in x[0]))

    def inv(m):
        return (m[1], m[0], tuple(general_linear(k, p)[1][a] for a, k in zip(m[2], m[0][0])))

    return Groupoid(objects, homs, comp, ident, inv, f"S_{model.n}")


def _reindex_functor(src_model: ArrayModel, tgt_model: ArrayModel, src: Groupoid, tgt: Groupoid,
                     theta: tuple) -> GroupoidFunctor:
    obj = {x: reindex(src_model, tgt_model, theta, x) for x in src.objects}
    mor = {}
    for m in src.morphisms:
        x, y, g = m
        gi = dict(zip(src_model.pairs, g))
        mor[m] = (obj[x], obj[y], tuple(gi[(theta[i], theta[j])] for i, j in tgt_model.pairs))
    return GroupoidFunctor(src, tgt, obj, mor)


def s_construction(p: int = 2, n_max: int = 3, cutoff: int = 1, check: bool = True) -> SimplicialObject:
    """S_0..S_{n_max} as groupoids, with total dimension at most ``cutoff``."""
    if p not in (2, 3, 5) or cutoff > 2 or n_max > 3 or cutoff < 0 or n_max < 0:
        raise TooLarge("S-construction guards: p in {2,3,5}, cutoff <= 2, n_max <= 3")
    models = [ArrayModel(p, n) for n in range(n_max + 1)]
    levels = [_groupoid_of(m, m.enumerate(cutoff)) for m in models]
    faces: list[list] = [[]]
    for n in range(1, n_max + 1):
        faces.append([_reindex_functor(models[n], models[n - 1], levels[n], levels[n - 1], coface(i, n))
                      for i in range(n + 1)])
    degs = [[_reindex_functor(models[n], models[n + 1], levels[n], levels[n + 1], codegeneracy(i, n))
             for i in range(n + 1)] for n in range(n_max)]

    def pair_dims(n: int, obj) -> dict:
        return dict(zip(models[n].pairs, obj[0]))

    return SimplicialObject(groupoid, levels, faces, degs, name=f"S(F_{p},D={cutoff})", check=check,
                            meta={"generator": "sdot", "p": p, "cutoff": cutoff, "pair_dims": pair_dims})


def iso_classes(g: Groupoid) -> int:
    return len(g.reps())
