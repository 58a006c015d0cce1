"""Chain complexes, the Dold-Kan inverse and normalized chains."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from ..backends import vect
from ..backends.vect import QQ, Field, LinearMap, VectSpace
from ..errors import SchemaError
from .core import SimplicialObject, codegeneracy, coface, epi_mono


@dataclass
class ChainComplex:
    """``dims[k] = dim C_k`` for k = 0..M and ``diffs[k]: C_k -> C_{k-1}`` for k >= 1.

    ``diffs[0]`` is the zero map to the zero space.
    """

    field: Field
    dims: list[int]
    diffs: list[LinearMap]

    def __post_init__(self) -> None:
        if len(self.diffs) != len(self.dims):
            raise SchemaError("one differential per degree expected")
        for k in range(1, len(self.dims)):
            dk = self.diffs[k]
            if dk.source.dim != self.dims[k] or dk.target.dim != self.dims[k - 1]:
                raise SchemaError(f"differential in degree {k} has the wrong shape")

    @property
    def top(self) -> int:
        return len(self.dims) - 1

    def space(self, k: int) -> VectSpace:
        return VectSpace(self.dims[k] if 0 <= k < len(self.dims) else 0, self.field)

    def d(self, k: int) -> LinearMap:
        if 1 <= k < len(self.dims):
            return self.diffs[k]
        return vect.zero(self.space(k), self.space(k - 1))

    def ranks(self) -> list[int]:
        return [vect.rank(self.d(k).mat) if k >= 1 else 0 for k in range(len(self.dims))]

    def is_complex(self) -> bool:
        return all(vect.rank(vect.compose(self.d(k - 1), self.d(k)).mat) == 0 for k in range(2, len(self.dims)))

    def exact_at(self) -> list[bool]:
        """Exactness flags per degree."""
        r = self.ranks() + [0]
        return [self.dims[k] - r[k] == r[k + 1] for k in range(len(self.dims))]

    def concentrated_at_most(self, m: int) -> bool:
        return all(self.dims[k] == 0 for k in range(m + 1, len(self.dims)))

    def trimmed(self) -> "ChainComplex":
        top = len(self.dims)
        while top > 1 and self.dims[top - 1] == 0:
            top -= 1
        return ChainComplex(self.field, self.dims[:top], self.diffs[:top])


def chain_complex(dims: list[int], diffs: dict[int, list[list]] | None = None, field: Field = QQ) -> ChainComplex:
    """Build a complex from dimensions and row-major differentials keyed by degree."""
    diffs = diffs or {}
    maps = [vect.zero(VectSpace(dims[0], field), VectSpace(0, field))]
    for k in range(1, len(dims)):
        src, tgt = VectSpace(dims[k], field), VectSpace(dims[k - 1], field)
        rows = diffs.get(k)
        maps.append(vect.from_rows(rows, src, tgt) if rows else vect.zero(src, tgt))
    c = ChainComplex(field, list(dims), maps)
    if not c.is_complex():
        raise SchemaError("differentials do not square to zero")
    return c


def complexes_isomorphic(a: ChainComplex, b: ChainComplex) -> bool:
    """Over a field, complexes are isomorphic iff dimensions and ranks agree."""
    a, b = a.trimmed(), b.trimmed()
    return a.field == b.field and a.dims == b.dims and a.ranks() == b.ranks()


def random_chain_complex(rng: random.Random, max_degree: int = 3, max_dim: int = 3,
                         field: Field = QQ) -> ChainComplex:
    """A random complex: each differential factors through the kernel of the previous one."""
    top = rng.randint(0, max_degree)
    dims = [rng.randint(0, max_dim) for _ in range(top + 1)]
    maps = [vect.zero(VectSpace(dims[0], field), VectSpace(0, field))]
    for k in range(1, top + 1):
        src, tgt = VectSpace(dims[k], field), VectSpace(dims[k - 1], field)
        ker = vect.kernel_basis(maps[k - 1].mat, field) if dims[k - 1] else field.matrix(0, 0)
        r = ker.ncols()
        if r == 0 or dims[k] == 0 or rng.random() < 0.2:
            maps.append(vect.zero(src, tgt))
            continue
        coeffs = field.matrix(r, dims[k], [rng.randint(-2, 2) for _ in range(r * dims[k])])
        maps.append(LinearMap(src, tgt, ker * coeffs))
    return ChainComplex(field, dims, maps)


@lru_cache(maxsize=None)
def surjections(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """Monotone surjections [n] -> [k] as value tuples, ordered by jump set."""
    out = []
    for jumps in combinations(range(1, n + 1), k):
        out.append(tuple(sum(1 for j in jumps if j <= i) for i in range(n + 1)))
    return tuple(out)


def _summands(n: int, top: int) -> list[tuple[int, tuple[int, ...]]]:
    return [(k, eta) for k in range(min(n, top) + 1) for eta in surjections(n, k)]


class _Gamma:
    """Block layout of Gamma(C)_n = sum over surjections [n] -> [k] of C_k."""

    def __init__(self, c: ChainComplex, N: int):
        self.c = c
        self.levels = []
        for n in range(N + 1):
            offs, total = {}, 0
            for k, eta in _summands(n, c.top):
                offs[eta] = total
                total += c.dims[k]
            self.levels.append((offs, total))

    def space(self, n: int) -> VectSpace:
        return VectSpace(self.levels[n][1], self.c.field)

    def operator(self, theta: tuple[int, ...], n: int) -> LinearMap:
        """Gamma(theta): Gamma_n -> Gamma_m for monotone theta: [m] -> [n]."""
        c = self.c
        m = len(theta) - 1
        src_offs, src_dim = self.levels[n]
        tgt_offs, tgt_dim = self.levels[m]
        field = c.field
        mat = field.matrix(tgt_dim, src_dim)
        for eta, off in src_offs.items():
            k = eta[-1]
            dk = c.dims[k]
            if dk == 0:
                continue
            comp = tuple(eta[t] for t in theta)
            epi, image = epi_mono(comp)
            if len(image) == k + 1:
                toff = tgt_offs[epi]
                for i in range(dk):
                    mat[toff + i, off + i] = 1
            elif image == tuple(range(1, k + 1)):
                if k - 1 > c.top or c.dims[k - 1] == 0:
                    continue
                toff = tgt_offs[epi]
                bd = c.d(k).mat
                for i in range(c.dims[k - 1]):
                    for j in range(dk):
                        v = bd[i, j]
                        if v != 0:
                            mat[toff + i, off + j] = v
        return LinearMap(self.space(n), self.space(m), mat)


def dold_kan_inverse(c: ChainComplex, N: int, check: bool = True) -> SimplicialObject:
    g = _Gamma(c, N)
    objs = [g.space(n) for n in range(N + 1)]
    faces: list[list] = [[]] + [[g.operator(coface(i, n), n) for i in range(n + 1)] for n in range(1, N + 1)]
    degs = [[g.operator(codegeneracy(i, n), n) for i in range(n + 1)] for n in range(N)]
    return SimplicialObject(vect, objs, faces, degs, name="doldkan", check=check,
                            meta={"generator": "doldkan", "dims": list(c.dims)})


def _solve_in_basis(basis, vecs, field: Field):
    """Coordinates c with basis * c = vecs, for basis of full column rank."""
    r = basis.ncols()
    rows, cols = basis.nrows(), vecs.ncols()
    aug = field.matrix(rows, r + cols)
    for i in range(rows):
        for j in range(r):
            aug[i, j] = basis[i, j]
        for j in range(cols):
            aug[i, r + j] = vecs[i, j]
    red, rk = aug.rref()
    if rk != r:
        raise SchemaError("vectors do not lie in the span of the basis")
    out = field.matrix(r, cols)
    for i in range(r):
        for j in range(cols):
            out[i, j] = red[i, r + j]
    return out


def normalized_chains(x: SimplicialObject) -> ChainComplex:
    """N_n = intersection of ker d_i for i >= 1, with differential d_0."""
    if x.backend_name != "vect":
        raise SchemaError("normalized chains need vector space values")
    field = x.objects[0].field
    bases = []
    for n in range(x.N + 1):
        dim = x.objects[n].dim
        if n == 0 or dim == 0:
            b = field.matrix(dim, dim)
            for i in range(dim):
                b[i, i] = 1
        else:
            blocks = [x.faces[n][i].mat for i in range(1, n + 1) if x.faces[n][i].target.dim]
            b = vect.kernel_basis(vect.stack(blocks, dim, field), field) if blocks else None
            if b is None:
                b = field.matrix(dim, dim)
                for i in range(dim):
                    b[i, i] = 1
        bases.append(b)
    dims = [b.ncols() for b in bases]
    maps = [vect.zero(VectSpace(dims[0], field), VectSpace(0, field))]
    for n in range(1, x.N + 1):
        src, tgt = VectSpace(dims[n], field), VectSpace(dims[n - 1], field)
        if dims[n] == 0 or dims[n - 1] == 0:
            maps.append(vect.zero(src, tgt))
            continue
        image = x.faces[n][0].mat * bases[n]
        maps.append(LinearMap(src, tgt, _solve_in_basis(bases[n - 1], image, field)))
    return ChainComplex(field, dims, maps)


def surjection_count(n: int, k: int) -> int:
    """Number of monotone surjections [n] -> [k], by the recursion on the last value."""
    if k < 0 or k > n:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    # the last point either repeats the previous value or starts a new one
    return surjection_count(n - 1, k) + surjection_count(n - 1, k - 1)
