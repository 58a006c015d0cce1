"""Exact rational geometry on the moment curve.

This module is an independent referee for the combinatorial predicates in
``complexes``, ``triangulations`` and ``orientals``.  Nothing here uses
floating point.
"""
from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from . import exact
from .complexes import Complex, Simplex, boundary_complex
from .errors import NotFullDimensional, TooManyVertices, ZeroDimension

RationalPoint = tuple[Fraction, ...]
Interval = tuple[Fraction, Fraction]


class SideVerdict(enum.Enum):
    ABOVE = "above"
    ON = "on"
    BELOW = "below"


def moment_point(t: int | Fraction, d: int) -> RationalPoint:
    if d < 1:
        raise ZeroDimension("moment curve needs d >= 1")
    t = Fraction(t)
    return tuple(t ** k for k in range(1, d + 1))


def _moment(t: int | Fraction, d: int) -> RationalPoint:
    # same as moment_point but allows d == 0 (the point of R^0)
    t = Fraction(t)
    return tuple(t ** k for k in range(1, d + 1))


def side_of_hyperplane(s: Simplex, y: Sequence) -> SideVerdict:
    d = len(s)
    rows = [[1, *_moment(i, d)] for i in s] + [[1, *y]]
    det = exact.determinant(rows)
    if det > 0:
        return SideVerdict.ABOVE
    if det < 0:
        return SideVerdict.BELOW
    return SideVerdict.ON


def _check_sizes(s: Simplex, t: Simplex, d: int) -> None:
    if len(s) > d + 1 or len(t) > d + 1:
        raise TooManyVertices(f"simplices {s}, {t} too large for dimension {d}")


def proper_intersection_circuit(s: Simplex, t: Simplex, d: int) -> bool:
    """Alternating circuit test on the moment curve."""
    _check_sizes(s, t, d)
    si, ti = set(s), set(t)
    union = sorted(si | ti)
    if len(union) < d + 2:
        return True
    for z in combinations(union, d + 2):
        evens, odds = z[0::2], z[1::2]
        if (si.issuperset(evens) and ti.issuperset(odds)) or (si.issuperset(odds) and ti.issuperset(evens)):
            return False
    return True


def improper_witness(s: Simplex, t: Simplex, d: int) -> RationalPoint | None:
    """A point of |s| and |t| outside |s ∩ t|, found by exact LP, or None.

    Looks for an affine dependence c on the union with c >= 0 on s\\t,
    c <= 0 on t\\s and sum over s\\t equal to 1.
    """
    _check_sizes(s, t, d)
    si, ti = set(s), set(t)
    only_s = sorted(si - ti)
    only_t = sorted(ti - si)
    both = sorted(si & ti)
    if not only_s or not only_t:
        return None
    # variables: x (only_s), y (only_t, c=-y), u, v (both, c=u-v)
    cols: list[tuple[int, int]] = [(k, 1) for k in only_s] + [(k, -1) for k in only_t]
    cols += [(k, 1) for k in both] + [(k, -1) for k in both]
    a_eq = []
    for power in range(d + 1):
        a_eq.append([sign * Fraction(k) ** power for k, sign in cols])
    a_eq.append([1] * len(only_s) + [0] * (len(cols) - len(only_s)))
    b_eq = [0] * (d + 1) + [1]
    res = exact.feasible(a_eq, b_eq)
    if res.status != "optimal":
        return None
    coeff: dict[int, Fraction] = {}
    for (k, sign), xv in zip(cols, res.x):
        coeff[k] = coeff.get(k, Fraction(0)) + sign * xv
    pos = {k: c for k, c in coeff.items() if c > 0}
    total = sum(pos.values())
    pts = [_moment(k, d) for k in pos]
    return tuple(sum(c * p[i] for c, p in zip(pos.values(), pts)) / total for i in range(d))


def proper_intersection_lp(s: Simplex, t: Simplex, d: int) -> bool:
    return improper_witness(s, t, d) is None


def proper_intersection(s: Simplex, t: Simplex, d: int, verify: bool = False) -> bool:
    """Do the realized simplices meet exactly in their common face?"""
    fast = proper_intersection_circuit(s, t, d)
    if verify:
        slow = proper_intersection_lp(s, t, d)
        if slow != fast:
            raise AssertionError(f"circuit and LP tests disagree on {s}, {t}, d={d}")
    return fast


def height_interval(s: Simplex, d: int, x: Sequence) -> Interval | None:
    """Heights t with (x, t) in the realized simplex ``s`` in R^d."""
    k = len(s)
    xs = [Fraction(v) for v in x]
    # barycentric system: sum l = 1, sum l * nu_{d-1}(i) = x
    rows = [[Fraction(1)] * k] + [[Fraction(i) ** p for i in s] for p in range(1, d)]
    rhs = [Fraction(1)] + xs
    sol = exact.solve_affine(rows, rhs)
    if sol is None:
        return None
    base, kernel = sol
    heights = [Fraction(i) ** d for i in s]
    if not kernel:
        if min(base) < 0:
            return None
        h = sum(l * w for l, w in zip(base, heights))
        return (h, h)
    if len(kernel) > 1:
        raise AssertionError("moment curve points are not in general position")
    c = kernel[0]
    lo, hi = None, None
    for b, ci in zip(base, c):
        if ci == 0:
            if b < 0:
                return None
            continue
        bound = -b / ci
        if ci > 0:
            lo = bound if lo is None else max(lo, bound)
        else:
            hi = bound if hi is None else min(hi, bound)
    if lo is None or hi is None or lo > hi:
        return None
    h0 = sum(l * w for l, w in zip(base, heights))
    slope = sum(ci * w for ci, w in zip(c, heights))
    a, b = h0 + slope * lo, h0 + slope * hi
    return (min(a, b), max(a, b))


def merge_intervals(pieces: list[Interval]) -> list[Interval]:
    out: list[Interval] = []
    for lo, hi in sorted(pieces):
        if out and lo <= out[-1][1]:
            out[-1] = (out[-1][0], max(out[-1][1], hi))
        else:
            out.append((lo, hi))
    return out


def fiber_profile(k: Complex, d: int, x: Sequence) -> list[Interval]:
    """The vertical line over ``x`` intersected with |K|, as disjoint intervals."""
    pieces = []
    for f in k.facets:
        iv = height_interval(f, d, x)
        if iv is not None:
            pieces.append(iv)
    return merge_intervals(pieces)


@dataclass(frozen=True)
class OracleVerdict:
    rejected: bool
    witness: RationalPoint | None = None
    samples: int = 0

    def __bool__(self) -> bool:
        return not self.rejected


def _barycenter(vertices: Sequence[int], dim: int) -> RationalPoint:
    pts = [_moment(v, dim) for v in vertices]
    m = len(pts)
    return tuple(sum(p[i] for p in pts) / m for i in range(dim))


def sample_points(k: Complex, d: int, sample_budget: int = 64, seed: int = 0) -> list[RationalPoint]:
    """Deterministic sample points in R^{d-1} over the projection of |K|."""
    facets = k.facets
    seen: set[Simplex] = set()
    pts: list[RationalPoint] = []
    for a in range(len(facets)):
        for b in range(a, len(facets)):
            verts = sorted(set(facets[a]) | set(facets[b]))
            for r in range(1, len(verts) + 1):
                for sub in combinations(verts, r):
                    if sub not in seen:
                        seen.add(sub)
                        pts.append(_barycenter(sub, d - 1))
    rng = random.Random(seed)
    for _ in range(sample_budget):
        f = facets[rng.randrange(len(facets))]
        w = [rng.randint(1, 16) for _ in f]
        tot = sum(w)
        proj = [_moment(v, d - 1) for v in f]
        pts.append(tuple(sum(Fraction(wi, tot) * p[i] for wi, p in zip(w, proj)) for i in range(d - 1)))
    return list(dict.fromkeys(pts))


def oracle_check_admissible(k: Complex, d: int, sample_budget: int = 64, seed: int = 0) -> OracleVerdict:
    """Try to refute the interval-fiber condition by sampling."""
    if d < 1:
        return OracleVerdict(len(k.vertices) != 1, None, 0)
    pts = sample_points(k, d, sample_budget, seed)
    for x in pts:
        if len(fiber_profile(k, d, x)) >= 2:
            return OracleVerdict(True, x, len(pts))
    return OracleVerdict(False, None, len(pts))


def simplex_volume(s: Simplex, d: int) -> Fraction:
    if len(s) != d + 1:
        raise NotFullDimensional(f"{s} is not a {d}-simplex")
    det = exact.determinant([[1, *_moment(i, d)] for i in s])
    return det / math.factorial(d)


def cyclic_volume(n: int, d: int) -> Fraction:
    """Volume of the cyclic polytope, summed over the lower boundary triangulation."""
    if d == n:
        return simplex_volume(tuple(range(n + 1)), d)
    tri = boundary_complex(n, d, "lower")
    return sum((simplex_volume(f, d) for f in tri.facets), Fraction(0))
