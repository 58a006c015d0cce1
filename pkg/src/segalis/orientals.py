"""Admissible complexes as cells of the oriental.

Cells are subcomplexes of the cyclic polytope whose vertical fibers are
intervals, recursively in every projection.  Composition is union.

The d-admissibility decision is exact: proper intersection uses the circuit
test and the interval condition is reduced to small linear programs (see
``is_d_admissible``).
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations
from typing import Iterable, Iterator

from . import exact
from .complexes import Complex, Simplex, closure, faces, generated_complex, lower_facets, upper_facets
from .errors import FlatCell, NotAdmissible, NotComposable, TooLarge
from .geometry_oracle import proper_intersection_circuit
from .triangulations import epsilon_key, rambau_less

DEFAULT_MAX_N = 5


# surfaces

def _hemisphere_faces(top: Simplex) -> tuple[frozenset[Simplex], frozenset[Simplex]]:
    return closure(lower_facets(top)), closure(upper_facets(top))


def exposure_surfaces(k: Complex, d: int) -> tuple[Complex, Complex]:
    """Lower and upper surfaces of a d-admissible complex.

    A simplex of dimension < d lies on the lower surface when every
    d-simplex containing it has it in its lower hemisphere (vacuously true
    when it lies in no d-simplex).  Dually for the upper surface.
    """
    tops = k.of_size(d + 1)
    hemis = {t: _hemisphere_faces(t) for t in tops}
    over: dict[Simplex, list[Simplex]] = defaultdict(list)
    for t in tops:
        for f in faces(t):
            if len(f) <= d:
                over[f].append(t)
    lower, upper = set(), set()
    for s in k.simplices:
        if len(s) > d:
            continue
        ts = over.get(s, ())
        if all(s in hemis[t][0] for t in ts):
            lower.add(s)
        if all(s in hemis[t][1] for t in ts):
            upper.add(s)
    return Complex(k.n, frozenset(lower)), Complex(k.n, frozenset(upper))


def surfaces(k: Complex, d: int, check: bool = True) -> tuple[Complex, Complex]:
    if check and not is_d_admissible(k, d):
        raise NotAdmissible(f"{k!r} is not {d}-admissible")
    return exposure_surfaces(k, d)


# d-admissibility

def _powers(v: int, d: int) -> list[Fraction]:
    return [Fraction(v) ** p for p in range(d + 1)]


@lru_cache(maxsize=None)
def _point_below(sigma: Simplex, rho: Simplex, d: int) -> bool:
    """Is some point of relint |sigma| strictly below a point of |rho|?

    Both simplices are realized on the moment curve in R^d; "below" means
    on the same vertical line with smaller last coordinate.
    """
    ns, nr = len(sigma), len(rho)
    ps = [_powers(v, d) for v in sigma]
    pr = [_powers(v, d) for v in rho]
    # lambda (sigma), mu (rho) >= 0, both sum to 1, equal projections
    a_eq = [[Fraction(1)] * ns + [Fraction(0)] * nr, [Fraction(0)] * ns + [Fraction(1)] * nr]
    for p in range(1, d):
        a_eq.append([-q[p] for q in ps] + [q[p] for q in pr])
    b_eq = [1, 1] + [0] * (d - 1)
    gain = [-q[d] for q in ps] + [q[d] for q in pr]
    res = exact.maximize(gain, a_eq, b_eq)
    if res.status == "infeasible" or (res.status == "optimal" and res.value <= 0):
        return False
    if ns == 1:
        return True
    # relative interior reachable: lambda = w + s, maximize s
    a2 = [[Fraction(1)] * ns + [Fraction(ns)] + [Fraction(0)] * nr,
          [Fraction(0)] * (ns + 1) + [Fraction(1)] * nr]
    for p in range(1, d):
        a2.append([-q[p] for q in ps] + [-sum(q[p] for q in ps)] + [q[p] for q in pr])
    res2 = exact.maximize([0] * ns + [1] + [0] * nr, a2, b_eq)
    return res2.status != "infeasible" and (res2.status == "unbounded" or res2.value > 0)


def _x_ranges_meet(sigma: Simplex, rho: Simplex) -> bool:
    if len(sigma) == 1:
        return rho[0] <= sigma[0] <= rho[-1]
    return rho[0] < sigma[-1] and sigma[0] < rho[-1]


def exposed_simplices(k: Complex, d: int) -> tuple[list[Simplex], list[Simplex]]:
    """Simplices of dimension < d not covered from above (resp. below) by a d-simplex."""
    tops = k.of_size(d + 1)
    hemis = {t: _hemisphere_faces(t) for t in tops}
    top_exposed, bottom_exposed = [], []
    for s in sorted(k.simplices):
        if len(s) > d:
            continue
        ts = [t for t in tops if set(s) <= set(t)]
        # covered from above by t when s is on t's lower hemisphere only
        if not any(s in hemis[t][0] and s not in hemis[t][1] for t in ts):
            top_exposed.append(s)
        if not any(s in hemis[t][1] and s not in hemis[t][0] for t in ts):
            bottom_exposed.append(s)
    return top_exposed, bottom_exposed


def admissibility_witness(k: Complex, d: int) -> tuple | None:
    """None if K is d-admissible, otherwise a reason tuple."""
    if not k.simplices:
        return ("empty",)
    if d == 0:
        return None if len(k.simplices) == 1 else ("not a single vertex",)
    if k.dim > d:
        return ("too large", max(k.simplices, key=len))
    fs = k.facets
    for a, b in combinations(fs, 2):
        if not proper_intersection_circuit(a, b, d):
            return ("improper", a, b)
    top_exposed, _ = exposed_simplices(k, d)
    for s in top_exposed:
        for r in fs:
            if set(s) <= set(r) or (d >= 2 and not _x_ranges_meet(s, r)):
                continue
            if _point_below(s, r, d):
                return ("gap", s, r)
    return None


def is_d_admissible(k: Complex, d: int) -> bool:
    return admissibility_witness(k, d) is None


_ADMISSIBLE_CACHE: dict[tuple[frozenset, int], bool] = {}


def is_admissible(k: Complex, d: int) -> bool:
    key = (k.simplices, d)
    hit = _ADMISSIBLE_CACHE.get(key)
    if hit is not None:
        return hit
    if d == 0:
        ok = len(k.simplices) == 1
    elif not is_d_admissible(k, d):
        ok = False
    else:
        lo, up = exposure_surfaces(k, d)
        ok = is_admissible(lo, d - 1) and (up == lo or is_admissible(up, d - 1))
    _ADMISSIBLE_CACHE[key] = ok
    return ok


# cells

@dataclass(frozen=True, eq=False)
class AdmissibleCell:
    complex: Complex
    dim: int
    source: "AdmissibleCell | None" = None
    target: "AdmissibleCell | None" = None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, AdmissibleCell) and self.complex == other.complex

    def __hash__(self) -> int:
        return hash(self.complex)

    @property
    def n(self) -> int:
        return self.complex.n

    def s(self, k: int) -> "AdmissibleCell":
        """Source in dimension ``k`` (the cell itself when k >= dim)."""
        c = self
        while c.dim > k:
            c = c.source
        return c

    def t(self, k: int) -> "AdmissibleCell":
        c = self
        while c.dim > k:
            c = c.target
        return c

    @property
    def lower_surface(self) -> Complex:
        return self.source.complex if self.dim > 0 else self.complex

    @property
    def upper_surface(self) -> Complex:
        return self.target.complex if self.dim > 0 else self.complex

    @cached_property
    def lower_chain(self) -> tuple[Complex, ...]:
        return tuple(self.s(k).complex for k in range(self.dim - 1, -1, -1))

    @cached_property
    def upper_chain(self) -> tuple[Complex, ...]:
        return tuple(self.t(k).complex for k in range(self.dim - 1, -1, -1))

    def tops(self) -> list[Simplex]:
        return self.complex.of_size(self.dim + 1)

    @cached_property
    def sort_key(self) -> tuple:
        return (self.dim, len(self.complex.facets), self.complex.facets)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "d": self.dim,
            "facets": [list(f) for f in self.complex.facets],
            "lower": [list(f) for f in self.lower_surface.facets],
            "upper": [list(f) for f in self.upper_surface.facets],
        }

    def __repr__(self) -> str:
        return f"Cell{self.dim}{self.complex!r}"


def build_cell(k: Complex, memo: dict | None = None) -> AdmissibleCell:
    """Assemble a cell by the exposure rule without re-deciding admissibility."""
    memo = {} if memo is None else memo
    hit = memo.get(k.simplices)
    if hit is not None:
        return hit
    d = k.dim
    if d < 0:
        raise NotAdmissible("empty complex")
    if d == 0:
        if len(k.simplices) != 1:
            raise NotAdmissible(f"{k!r} is not a single vertex")
        cell = AdmissibleCell(k, 0)
    else:
        lo, up = exposure_surfaces(k, d)
        if not lo.simplices or not up.simplices:
            raise NotAdmissible(f"{k!r} has an empty surface")
        cell = AdmissibleCell(k, d, build_cell(lo, memo), build_cell(up, memo))
    memo[k.simplices] = cell
    return cell


def make_cell(k: Complex, d: int | None = None, verify: bool = True) -> AdmissibleCell:
    """The cell on ``k``, raising NotAdmissible if it is not one."""
    if d is not None and k.dim > d:
        raise NotAdmissible(f"{k!r} has dimension above {d}")
    if verify and not is_admissible(k, max(k.dim, 0)):
        raise NotAdmissible(f"{k!r} is not admissible")
    return build_cell(k)


def cell(facets: Iterable[Iterable[int]], n: int, verify: bool = True) -> AdmissibleCell:
    return make_cell(generated_complex(facets, n), verify=verify)


# stacking, enumeration

@dataclass(frozen=True)
class StackingStep:
    base: AdmissibleCell
    added: Simplex

    @property
    def d(self) -> int:
        return len(self.added) - 1

    def valid(self) -> bool:
        top = self.base.t(self.d - 1).complex
        return all(f in top for f in lower_facets(self.added)) and self.added not in self.base.complex


def stacked_upper(upper: Complex, s: Simplex) -> Complex:
    """Upper surface after stacking ``s`` on a surface containing its lower hemisphere."""
    lo, up = _hemisphere_faces(s)
    return Complex(upper.n, (upper.simplices - (lo - up)) | up)


class Oriental:
    """All cells of the oriental on [n] up to dimension d, by stacking."""

    def __init__(self, n: int, d: int, max_n: int = DEFAULT_MAX_N):
        if not 0 <= d <= n:
            raise TooLarge(f"need 0 <= d <= n, got n={n}, d={d}")
        if n > max_n:
            raise TooLarge(f"n={n} exceeds the enumeration guard {max_n}")
        self.n, self.d = n, d
        self.index: dict[frozenset, AdmissibleCell] = {}
        for v in range(n + 1):
            c = AdmissibleCell(Complex(n, frozenset({(v,)})), 0)
            self.index[c.complex.simplices] = c
        for k in range(1, d + 1):
            self._grow(k)
        self.cells: list[AdmissibleCell] = sorted(self.index.values(), key=lambda c: c.sort_key)

    def _grow(self, k: int) -> None:
        lower_dim = [c for c in self.index.values() if c.dim == k - 1]
        frontier = sorted(lower_dim, key=lambda c: c.sort_key)
        candidates = list(combinations(range(self.n + 1), k + 1))
        while frontier:
            fresh = []
            for base in frontier:
                top = base.t(k - 1).complex
                for s in candidates:
                    if s in base.complex or not all(f in top for f in lower_facets(s)):
                        continue
                    new = Complex(self.n, base.complex.simplices | closure([s]))
                    if new.simplices in self.index:
                        continue
                    target = self.index.get(stacked_upper(top, s).simplices)
                    if target is None or target.dim >= k:
                        continue
                    c = AdmissibleCell(new, k, base.s(k - 1), target)
                    self.index[new.simplices] = c
                    fresh.append(c)
            frontier = sorted(fresh, key=lambda c: c.sort_key)

    def lookup(self, k: Complex) -> AdmissibleCell | None:
        return self.index.get(k.simplices)

    def __iter__(self) -> Iterator[AdmissibleCell]:
        return iter(self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def of_dim(self, k: int) -> list[AdmissibleCell]:
        return [c for c in self.cells if c.dim == k]

    def to_dot(self) -> str:
        ids = {c: i for i, c in enumerate(self.cells)}
        lines = [f'digraph "oriental_{self.n}_{self.d}" {{']
        for c, i in ids.items():
            lines.append(f'  c{i} [label="{c.dim}:{c.complex!r}"];')
        for c, i in ids.items():
            if c.dim > 0:
                lines.append(f'  c{i} -> c{ids[c.source]} [label="s"];')
                lines.append(f'  c{i} -> c{ids[c.target]} [label="t"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


_ORIENTALS: dict[tuple[int, int], Oriental] = {}


def oriental(n: int, d: int, max_n: int = DEFAULT_MAX_N) -> Oriental:
    key = (n, d)
    if key not in _ORIENTALS:
        _ORIENTALS[key] = Oriental(n, d, max_n)
    return _ORIENTALS[key]


def cells(n: int, d: int, max_n: int = DEFAULT_MAX_N) -> list[AdmissibleCell]:
    return oriental(n, d, max_n).cells


def brute_force_cells(n: int, d: int) -> set[Complex]:
    """Exhaustive admissibility filter over all subcomplexes (n <= 3)."""
    from .complexes import all_subcomplexes

    if n > 3:
        raise TooLarge("brute force is limited to n <= 3")
    return {k for k in all_subcomplexes(n, d + 1) if is_admissible(k, d)}


# composition

def compose(a: AdmissibleCell, b: AdmissibleCell, level: int, within: Oriental | None = None) -> AdmissibleCell:
    """a *_level b, defined when the level-source of a is the level-target of b."""
    if a.s(level) != b.t(level):
        raise NotComposable(f"s_{level}{a!r} != t_{level}{b!r}")
    union = a.complex | b.complex
    if within is not None:
        hit = within.lookup(union)
        if hit is None:
            raise NotAdmissible(f"composite {union!r} is not a cell")
        return hit
    return build_cell(union)


def unit(c: AdmissibleCell) -> AdmissibleCell:
    """The identity on ``c`` one dimension up: the same complex, viewed flat."""
    return c


def excise_top(c: AdmissibleCell) -> tuple[AdmissibleCell, Simplex]:
    """Peel a terminal top simplex off ``c``.

    Starts at the epsilon-least top simplex and climbs the covering relation,
    always to the epsilon-greatest successor, until the simplex has its whole
    upper hemisphere on the upper surface.
    """
    if c.dim == 0:
        raise FlatCell(f"{c!r} has equal surfaces")
    d = c.dim
    n = c.n
    tops = c.tops()
    upper = c.upper_surface
    key = lambda s: epsilon_key(s, n)
    cur = min(tops, key=key)
    while not all(f in upper for f in upper_facets(cur)):
        succ = [t for t in tops if rambau_less(cur, t, d)]
        if not succ:
            raise AssertionError(f"no terminal simplex reachable in {c!r}")
        cur = max(succ, key=key)
    gens = [f for f in c.complex.facets if f != cur] + lower_facets(cur)
    rest = generated_complex(gens, n)
    return build_cell(rest), cur


def atomic_decomposition(c: AdmissibleCell) -> list[AdmissibleCell]:
    """Atoms bottom to top; folding them with compose at level dim-1 gives ``c``."""
    if c.dim < 1:
        raise FlatCell("atomic decomposition needs dimension >= 1")
    d = c.dim
    peeled: list[Simplex] = []
    cur = c
    while cur.dim == d:
        cur, s = excise_top(cur)
        peeled.append(s)
    atoms = []
    below = cur
    for s in reversed(peeled):
        top = below.t(d - 1).complex
        atom = build_cell(Complex(c.n, top.simplices | closure([s])))
        atoms.append(atom)
        below = build_cell(Complex(c.n, below.complex.simplices | closure([s])))
    return atoms


def fold(atoms: list[AdmissibleCell], level: int) -> AdmissibleCell:
    acc = atoms[0]
    for a in atoms[1:]:
        acc = compose(a, acc, level)
    return acc


# axioms

@dataclass
class AxiomReport:
    n: int
    max_dim: int
    cells: int = 0
    checks: dict[str, int] = field(default_factory=lambda: defaultdict(int))
    violations: list[tuple] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def record(self, name: str, ok: bool, *witness) -> None:
        self.checks[name] += 1
        if not ok:
            self.violations.append((name, *witness))

    def summary(self) -> str:
        parts = ", ".join(f"{k}={v}" for k, v in sorted(self.checks.items()))
        status = "all axioms verified" if self.ok else f"{len(self.violations)} violations"
        return f"O_{self.n} up to dim {self.max_dim}: {self.cells} cells; {parts}; {status}"


def check_omega_axioms(n: int, max_dim: int | None = None, max_n: int = 4) -> AxiomReport:
    """Verify the strict omega-category laws on all enumerated cells."""
    if n > max_n:
        raise TooLarge(f"axiom check limited to n <= {max_n}")
    d = n if max_dim is None else max_dim
    om = oriental(n, d, max(max_n, DEFAULT_MAX_N))
    rep = AxiomReport(n, d, len(om))
    cs = om.cells

    def in_index(x: AdmissibleCell) -> bool:
        return om.lookup(x.complex) is not None

    for c in cs:
        if c.dim == 0:
            continue
        rep.record("closure", in_index(c.source) and in_index(c.target), c)
        lo, up = exposure_surfaces(c.complex, c.dim)
        rep.record("surfaces", lo == c.source.complex and up == c.target.complex, c)
        if c.dim >= 2:
            a, b = c.source, c.target
            rep.record("globular", a.source == b.source and a.target == b.target, c)
            rep.record("globular", exposure_surfaces(a.complex, c.dim - 1) == exposure_surfaces(b.complex, c.dim - 1), c)
        for k in range(c.dim):
            rep.record("unit", compose(c, c.s(k), k, om) == c and compose(c.t(k), c, k, om) == c, c, k)

    for k in range(d):
        by_src: dict[frozenset, list[AdmissibleCell]] = defaultdict(list)
        by_tgt: dict[frozenset, list[AdmissibleCell]] = defaultdict(list)
        # lower-dimensional cells take part as identities
        for c in cs:
            by_src[c.s(k).complex.simplices].append(c)
            by_tgt[c.t(k).complex.simplices].append(c)
        pairs: list[tuple[AdmissibleCell, AdmissibleCell, AdmissibleCell]] = []
        for key, tops in by_src.items():
            for a in tops:
                for b in by_tgt.get(key, ()):
                    comp = om.lookup(a.complex | b.complex)
                    rep.record("composite", comp is not None, a, b, k)
                    if comp is None:
                        continue
                    pairs.append((a, b, comp))
                    ok = comp.s(k) == b.s(k) and comp.t(k) == a.t(k)
                    for m in range(k):
                        ok = ok and comp.s(m) == a.s(m) and comp.t(m) == a.t(m)
                    for m in range(k + 1, max(a.dim, b.dim)):
                        ok = ok and comp.s(m).complex == a.s(m).complex | b.s(m).complex
                        ok = ok and comp.t(m).complex == a.t(m).complex | b.t(m).complex
                    rep.record("boundary", ok, a, b, k)
        # associativity
        comp_by_pair = {(a.complex.simplices, b.complex.simplices): ab for a, b, ab in pairs}
        for a, b, ab in pairs:
            for c in by_tgt.get(b.s(k).complex.simplices, ()):
                bc = comp_by_pair.get((b.complex.simplices, c.complex.simplices))
                left = comp_by_pair.get((ab.complex.simplices, c.complex.simplices))
                right = comp_by_pair.get((a.complex.simplices, bc.complex.simplices)) if bc else None
                rep.record("associative", left is not None and left == right, a, b, c, k)
        # interchange with a lower level j
        for j in range(k):
            grids: dict[frozenset, list] = defaultdict(list)
            cogrids: dict[frozenset, list] = defaultdict(list)
            for a, c, ac in pairs:
                grids[a.s(j).complex.simplices].append((a, c, ac))
                cogrids[a.t(j).complex.simplices].append((a, c, ac))
            for key, lefts in grids.items():
                for a, c, ac in lefts:
                    for b, dd, bd in cogrids.get(key, ()):
                        # (a *_k c) *_j (b *_k dd) versus (a *_j b) *_k (c *_j dd)
                        if c.s(j) != dd.t(j):
                            rep.record("interchange", False, a, b, c, dd, j, k)
                            continue
                        lhs = om.lookup(ac.complex | bd.complex)
                        ab = om.lookup(a.complex | b.complex)
                        cd = om.lookup(c.complex | dd.complex)
                        ok = lhs is not None and ab is not None and cd is not None
                        ok = ok and ab.s(k) == cd.t(k) and om.lookup(ab.complex | cd.complex) == lhs
                        rep.record("interchange", ok, a, b, c, dd, j, k)
    return rep
