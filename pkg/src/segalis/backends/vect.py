"""Finite-dimensional vector spaces over Q or F_p.

Matrices are python-flint ``fmpq_mat`` / ``nmod_mat``.  A map ``V -> W`` is a
``dim W x dim V`` matrix acting on column vectors.  The module also keeps a
pure-Python equalizer route (``limit_dim_iterative``) as an independent check.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from flint import fmpq, fmpq_mat, nmod_mat

from .. import exact
from ..errors import NotADiagram, SchemaError
from .diagram import PosetDiagram
from .verdict import IsoVerdict

NAME = "vect"


@dataclass(frozen=True)
class Field:
    """Q when ``p == 0``, otherwise the prime field F_p."""

    p: int = 0

    def __str__(self) -> str:
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @classmethod
    def parse(cls, s: "str | int | Field") -> "Field":
        if isinstance(s, Field):
            return s
        if isinstance(s, int):
            return cls(s)
        t = s.strip().upper()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            return cls(int(t[3:-1]))
        if t.startswith("F") and t[1:].isdigit():
            return cls(int(t[1:]))
        raise SchemaError(f"unknown field {s!r}")

    def matrix(self, rows: int, cols: int, entries: Iterable = ()):
        ents = list(entries)
        if self.p == 0:
            return fmpq_mat(rows, cols, [fmpq(Fraction(e).numerator, Fraction(e).denominator) for e in ents]) if ents else fmpq_mat(rows, cols)
        return nmod_mat(rows, cols, [int(e) % self.p for e in ents], self.p) if ents else nmod_mat(rows, cols, self.p)

    def scalar(self, x):
        if self.p == 0:
            return Fraction(int(x.p), int(x.q)) if isinstance(x, fmpq) else Fraction(x)
        return int(x) % self.p


QQ = Field(0)


@dataclass(frozen=True)
class VectSpace:
    dim: int
    field: Field = QQ


class LinearMap:
    __slots__ = ("source", "target", "mat", "_key")

    def __init__(self, source: VectSpace, target: VectSpace, mat=None):
        if source.field != target.field:
            raise NotADiagram("maps between different fields")
        self.source = source
        self.target = target
        self.mat = target.field.matrix(target.dim, source.dim) if mat is None else mat
        if (self.mat.nrows(), self.mat.ncols()) != (target.dim, source.dim):
            raise NotADiagram("matrix shape does not match the spaces")
        self._key = None

    @property
    def field(self) -> Field:
        return self.source.field

    def rows(self) -> list[list]:
        f = self.field
        m = self.mat
        return [[f.scalar(m[i, j]) for j in range(m.ncols())] for i in range(m.nrows())]

    def key(self) -> tuple:
        if self._key is None:
            self._key = (self.source.dim, self.target.dim, tuple(map(str, self.mat.entries())))
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LinearMap) and self.field == other.field and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"LinearMap({self.source.dim}->{self.target.dim} over {self.field})"


def from_rows(rows: Sequence[Sequence], source: VectSpace, target: VectSpace) -> LinearMap:
    flat = [x for r in rows for x in r]
    return LinearMap(source, target, source.field.matrix(target.dim, source.dim, flat) if flat else None)


def identity(v: VectSpace) -> LinearMap:
    m = v.field.matrix(v.dim, v.dim)
    for i in range(v.dim):
        m[i, i] = 1
    return LinearMap(v, v, m)


def zero(source: VectSpace, target: VectSpace) -> LinearMap:
    return LinearMap(source, target)


def compose(g: LinearMap, f: LinearMap) -> LinearMap:
    """g after f."""
    if f.target.dim != g.source.dim:
        raise NotADiagram("composable maps need matching dimensions")
    if f.source.dim == 0 or g.target.dim == 0 or f.target.dim == 0:
        return LinearMap(f.source, g.target)
    return LinearMap(f.source, g.target, g.mat * f.mat)


def equal(f: LinearMap, g: LinearMap) -> bool:
    return f == g


def rank(m) -> int:
    if m.nrows() == 0 or m.ncols() == 0:
        return 0
    return m.rank()


def is_iso(f: LinearMap) -> bool:
    return f.source.dim == f.target.dim and rank(f.mat) == f.source.dim


def iso_verdict(f: LinearMap) -> IsoVerdict:
    r = rank(f.mat)
    data = {"source": f.source.dim, "target": f.target.dim, "rank": r}
    if f.source.dim != f.target.dim:
        return IsoVerdict(False, f"dimensions differ: {f.source.dim} vs {f.target.dim}", data)
    if r != f.source.dim:
        return IsoVerdict(False, f"rank {r} below dimension {f.source.dim}", data)
    return IsoVerdict(True, "", data)


def kernel_basis(m, field: Field):
    """Matrix whose columns form a basis of ker m."""
    ncols = m.ncols()
    if m.nrows() == 0 or ncols == 0:
        k = field.matrix(ncols, ncols)
        for i in range(ncols):
            k[i, i] = 1
        return k
    if field.p:
        basis, nullity = m.nullspace()
        out = field.matrix(ncols, nullity)
        for i in range(ncols):
            for j in range(nullity):
                out[i, j] = basis[i, j]
        return out
    red, r = m.rref()
    pivots = []
    for i in range(r):
        for j in range(ncols):
            if red[i, j] != 0:
                pivots.append(j)
                break
    free = [j for j in range(ncols) if j not in pivots]
    out = field.matrix(ncols, len(free))
    for col, fj in enumerate(free):
        out[fj, col] = 1
        for i, pj in enumerate(pivots):
            out[pj, col] = -red[i, fj]
    return out


def raw_matrix(field: Field, rows: int, cols: int, entries: list):
    """Build a matrix from entries that are already field elements."""
    if field.p == 0:
        return fmpq_mat(rows, cols, entries) if entries else fmpq_mat(rows, cols)
    return nmod_mat(rows, cols, entries, field.p) if entries else nmod_mat(rows, cols, field.p)


def stack(blocks: list, ncols: int, field: Field):
    """Vertical concatenation of flint matrices with ``ncols`` columns."""
    total = sum(b.nrows() for b in blocks)
    if ncols == 0:
        return field.matrix(total, 0)
    return raw_matrix(field, total, ncols, [v for b in blocks for v in b.entries()])


def _field_of(d: PosetDiagram) -> Field:
    for o in d.objects.values():
        return o.field
    return QQ


@dataclass
class Limit:
    apex: VectSpace
    projections: dict
    sources: list


def _source_equations(d: PosetDiagram, field: Field):
    """Agreement equations on the direct sum of the source values."""
    srcs = d.sources
    offs, total = {}, 0
    for s in srcs:
        offs[s] = total
        total += d.objects[s].dim
    reaches = {s: d.reach(s) for s in srcs}
    first: dict = {}
    rows: list[list] = []
    zero = field.matrix(1, 1).entries()[0]
    for s in srcs:
        for e, f in reaches[s].items():
            if e not in first:
                first[e] = s
                continue
            s0 = first[e]
            g = reaches[s0][e]
            dim_e = d.objects[e].dim
            if dim_e == 0:
                continue
            gd, fd = g.source.dim, f.source.dim
            ge, fe = g.mat.entries(), (-f.mat).entries()
            for i in range(dim_e):
                row = [zero] * total
                row[offs[s0]:offs[s0] + gd] = ge[i * gd:(i + 1) * gd]
                row[offs[s]:offs[s] + fd] = fe[i * fd:(i + 1) * fd]
                rows.append(row)
    eqs = raw_matrix(field, len(rows), total, [v for r in rows for v in r]) if rows and total else \
        field.matrix(len(rows), total)
    return srcs, offs, reaches, first, eqs


def limit(d: PosetDiagram, method: str = "sources") -> Limit:
    """Limit of a diagram of vector spaces.

    ``method="sources"`` parametrizes by the values at the sources and imposes
    agreement wherever two sources reach a common element.  ``"difference"``
    takes the kernel of the difference map over all elements and arrows.
    """
    field = _field_of(d)
    if method == "difference":
        return _limit_difference(d, field)
    srcs, offs, reaches, first, eqs = _source_equations(d, field)
    basis = kernel_basis(eqs, field)
    apex = VectSpace(basis.ncols(), field)
    projections = {}
    for s in srcs:
        dim_s = d.objects[s].dim
        m = field.matrix(dim_s, apex.dim)
        for i in range(dim_s):
            for j in range(apex.dim):
                m[i, j] = basis[offs[s] + i, j]
        projections[s] = LinearMap(apex, d.objects[s], m)
    for e in d.elements:
        if e not in projections:
            s = first[e]
            projections[e] = compose(reaches[s][e], projections[s])
    return Limit(apex, projections, srcs)


def _limit_difference(d: PosetDiagram, field: Field) -> Limit:
    offs, total = {}, 0
    for e in d.elements:
        offs[e] = total
        total += d.objects[e].dim
    blocks = []
    for (a, b), f in d.arrows.items():
        dim_b = d.objects[b].dim
        if dim_b == 0:
            continue
        block = field.matrix(dim_b, total)
        for i in range(dim_b):
            for j in range(f.source.dim):
                v = f.mat[i, j]
                if v != 0:
                    block[i, offs[a] + j] = v
            block[i, offs[b] + i] -= 1
        blocks.append(block)
    eqs = stack(blocks, total, field) if blocks else field.matrix(0, total)
    basis = kernel_basis(eqs, field)
    apex = VectSpace(basis.ncols(), field)
    projections = {}
    for e in d.elements:
        dim_e = d.objects[e].dim
        m = field.matrix(dim_e, apex.dim)
        for i in range(dim_e):
            for j in range(apex.dim):
                m[i, j] = basis[offs[e] + i, j]
        projections[e] = LinearMap(apex, d.objects[e], m)
    return Limit(apex, projections, d.sources)


def _py_rank_mod(rows: list[list[int]], p: int) -> int:
    a = [[x % p for x in r] for r in rows]
    rk = 0
    ncols = len(a[0]) if a else 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][c], p - 2, p)
        a[rk] = [x * inv % p for x in a[rk]]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rk])]
        rk += 1
    return rk


def _py_nullspace(rows: list[list], ncols: int, p: int) -> list[list]:
    if p == 0:
        return exact.nullspace(rows, ncols)
    if not rows:
        return [[int(i == j) for i in range(ncols)] for j in range(ncols)]
    a = [[x % p for x in r] for r in rows]
    piv_cols = []
    rk = 0
    for c in range(ncols):
        piv = next((i for i in range(rk, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rk], a[piv] = a[piv], a[rk]
        inv = pow(a[rk][c], p - 2, p)
        a[rk] = [x * inv % p for x in a[rk]]
        for i in range(len(a)):
            if i != rk and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[rk])]
        piv_cols.append(c)
        rk += 1
    basis = []
    for fcol in (c for c in range(ncols) if c not in piv_cols):
        v = [0] * ncols
        v[fcol] = 1
        for i, pc in enumerate(piv_cols):
            v[pc] = -a[i][fcol] % p
        basis.append(v)
    return basis


def limit_dim_iterative(d: PosetDiagram) -> int:
    """Apex dimension by successive equalizers, in plain Python arithmetic.

    Starts from the product over the sources and cuts it down by one
    agreement condition at a time.
    """
    field = _field_of(d)
    p = field.p
    srcs = d.sources
    offs, total = {}, 0
    for s in srcs:
        offs[s] = total
        total += d.objects[s].dim
    # current subspace as a list of basis vectors of the product
    basis: list[list] = [[int(i == j) for i in range(total)] for j in range(total)]
    reaches = {s: d.reach(s) for s in srcs}
    first: dict = {}
    for s in srcs:
        for e, f in reaches[s].items():
            if e not in first:
                first[e] = s
                continue
            g = reaches[first[e]][e]
            fr, gr = f.rows(), g.rows()
            s0 = first[e]
            # value of the condition g x_{s0} - f x_s on each current basis vector
            cond = []
            for i in range(d.objects[e].dim):
                row = []
                for v in basis:
                    val = sum(gr[i][j] * v[offs[s0] + j] for j in range(g.source.dim))
                    val -= sum(fr[i][j] * v[offs[s] + j] for j in range(f.source.dim))
                    row.append(val % p if p else val)
                cond.append(row)
            if not cond or not basis:
                continue
            coeffs = _py_nullspace(cond, len(basis), p)
            basis = [[sum(c[k] * basis[k][i] for k in range(len(basis))) % p if p else
                      sum(c[k] * basis[k][i] for k in range(len(basis))) for i in range(total)]
                     for c in coeffs]
    return len(basis)


def cone_iso(source: VectSpace, leg: Callable, d: PosetDiagram) -> IsoVerdict:
    """Is the map ``source -> lim d`` with the given legs an isomorphism?"""
    field = source.field
    srcs, _, _, _, eqs = _source_equations(d, field)
    # only the dimension of the limit matters here, so skip the kernel basis
    lim_dim = eqs.ncols() - rank(eqs)
    if source.dim != lim_dim:
        data = {"source": source.dim, "limit": lim_dim}
        return IsoVerdict(False, f"dimension {source.dim} vs limit dimension {lim_dim}", data)
    blocks = [leg(s).mat for s in srcs]
    m = stack(blocks, source.dim, field) if blocks else field.matrix(0, source.dim)
    r = rank(m)
    data = {"source": source.dim, "limit": lim_dim, "rank": r}
    if r != source.dim:
        return IsoVerdict(False, f"canonical map has rank {r} < {source.dim}", data)
    return IsoVerdict(True, "", data)


def to_json_object(v: VectSpace) -> dict:
    return {"dim": v.dim}


def from_json_object(data: dict, field: Field) -> VectSpace:
    return VectSpace(int(data["dim"]), field)


def to_json_map(f: LinearMap) -> list[list[str]]:
    return [[str(x) for x in r] for r in f.rows()]


def from_json_map(data: list, source: VectSpace, target: VectSpace) -> LinearMap:
    if len(data) != target.dim or any(len(r) != source.dim for r in data):
        raise SchemaError("matrix shape does not match the declared dimensions")
    return from_rows([[Fraction(x) for x in r] for r in data], source, target)
