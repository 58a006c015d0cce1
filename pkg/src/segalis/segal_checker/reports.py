"""Lower/upper d-Segal reports and the criteria built on them."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from itertools import combinations
from typing import Any

from ..backends import PosetDiagram, iso_verdict
from ..complexes import Complex, Side, boundary_complex, generated_complex
from ..errors import SchemaError, TruncationTooLow
from ..simplicial_objects import (SimplicialObject, complexes_isomorphic, normalized_chains, path_space)


@dataclass
class LevelVerdict:
    n: int
    ok: bool
    witness: str = ""
    data: dict[str, Any] = field(default_factory=dict)


@dataclass
class SegalReport:
    """Verdicts of one Segal condition at every level in the checked range."""

    condition: str
    d: int
    name: str
    truncation: int
    levels: list[LevelVerdict] = field(default_factory=list)
    note: str = ""

    @property
    def ok(self) -> bool:
        return all(v.ok for v in self.levels)

    @property
    def range(self) -> tuple[int, int]:
        return (self.d + 1, self.truncation)

    @property
    def vacuous(self) -> bool:
        return not self.levels

    def first_failure(self) -> LevelVerdict | None:
        return next((v for v in self.levels if not v.ok), None)

    def to_json(self) -> dict:
        out = {"condition": self.condition, "d": self.d, "object": self.name, "truncation": self.truncation,
               "range": list(self.range), "ok": self.ok, "levels": [asdict(v) for v in self.levels]}
        if self.note:
            out["note"] = self.note
        return out

    def summary(self) -> str:
        lo, hi = self.range
        head = f"{self.condition} {self.d}-Segal on levels {lo}..{hi}"
        if self.vacuous:
            return f"{head}: vacuous"
        bad = self.first_failure()
        if bad is None:
            return f"{head}: pass"
        return f"{head}: FAIL at n={bad.n} ({bad.witness})"


def segal_complex(n: int, d: int, side: Side | str) -> Complex:
    return boundary_complex(n, d, side)


def _segal_report(x: SimplicialObject, d: int, side: Side, strict: bool, max_n: int | None) -> SegalReport:
    if d < 0:
        raise ValueError("d must be non-negative")
    top = x.N if max_n is None else min(max_n, x.N)
    rep = SegalReport(side.value, d, x.name, top)
    if top < d + 1:
        if strict:
            raise TruncationTooLow(f"truncation {x.N} leaves no level above {d}")
        rep.note = "no level in range"
        return rep
    for n in range(d + 1, top + 1):
        v = x.segal_verdict(segal_complex(n, d, side))
        rep.levels.append(LevelVerdict(n, v.ok, v.witness, dict(v.data)))
    if x.meta.get("cutoff") is not None:
        rep.note = f"essential surjectivity restricted to total dimension <= {x.meta['cutoff']}"
    return rep


def is_lower_d_segal(x: SimplicialObject, d: int, strict: bool = True, max_n: int | None = None) -> SegalReport:
    return _segal_report(x, d, Side.LOWER, strict, max_n)


def is_upper_d_segal(x: SimplicialObject, d: int, strict: bool = True, max_n: int | None = None) -> SegalReport:
    return _segal_report(x, d, Side.UPPER, strict, max_n)


def is_d_segal(x: SimplicialObject, d: int, strict: bool = False, max_n: int | None = None) -> bool:
    return is_lower_d_segal(x, d, strict, max_n).ok and is_upper_d_segal(x, d, strict, max_n).ok


def is_essentially_constant(x: SimplicialObject) -> bool:
    """All face and degeneracy maps in range are isomorphisms (equivalences)."""
    for row in x.faces[1:] + x.degeneracies:
        for f in row:
            if not iso_verdict(f).ok:
                return False
    return True


def essentially_constant_chain(x: SimplicialObject) -> dict[str, bool]:
    """The separate facts behind essential constancy of an upper 1-Segal object."""
    out = {"s0_iso": all(iso_verdict(x.degeneracies[n][0]).ok for n in range(x.N))}
    out["X0_to_X1_iso"] = iso_verdict(x.degeneracies[0][0]).ok if x.N >= 1 else True
    out["faces_iso"] = all(iso_verdict(f).ok for row in x.faces[1:] for f in row)
    out["degeneracies_iso"] = all(iso_verdict(s).ok for row in x.degeneracies for s in row)
    return out


# path spaces

@dataclass
class PathspaceReport:
    d: int
    name: str
    rows: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r["agree"] for r in self.rows)

    def to_json(self) -> dict:
        return {"d": self.d, "object": self.name, "ok": self.ok, "criteria": self.rows}


def _levelwise(rep: SegalReport, shift: int) -> dict[int, bool]:
    return {v.n + shift: v.ok for v in rep.levels}


def pathspace_report(x: SimplicialObject, d: int, strict: bool = True) -> PathspaceReport:
    """Compare d-Segal conditions of X with (d-1)-Segal conditions of its path spaces."""
    if d < 1:
        raise ValueError("path-space criteria need d >= 1")
    if x.N < d + 1:
        if strict:
            raise TruncationTooLow(f"truncation {x.N} too low for the path-space criteria at d={d}")
    pl, pr = path_space(x, "initial"), path_space(x, "final")
    rep = PathspaceReport(d, x.name)

    def row(label: str, sides: list[tuple[str, SegalReport, int]]) -> None:
        agg = {name: r.ok for name, r, _ in sides}
        levels = [_levelwise(r, s) for _, r, s in sides]
        common = sorted(set.intersection(*(set(lv) for lv in levels))) if levels else []
        lw = all(len({lv[n] for lv in levels}) == 1 for n in common)
        rep.rows.append({"criterion": label, "verdicts": agg, "agree": len(set(agg.values())) == 1,
                         "levelwise_agree": lw, "levels": common})

    if d % 2 == 0:
        row("lower d <=> initial path space lower d-1",
            [("X lower", is_lower_d_segal(x, d, False), 0), ("P< lower", is_lower_d_segal(pl, d - 1, False), 1)])
        row("upper d <=> final path space lower d-1",
            [("X upper", is_upper_d_segal(x, d, False), 0), ("P> lower", is_lower_d_segal(pr, d - 1, False), 1)])
    else:
        row("upper d <=> initial path space upper d-1 <=> final path space lower d-1",
            [("X upper", is_upper_d_segal(x, d, False), 0), ("P< upper", is_upper_d_segal(pl, d - 1, False), 1),
             ("P> lower", is_lower_d_segal(pr, d - 1, False), 1)])
    return rep


# outer horns and the abelian criterion

def outer_horn(n: int, end: int) -> Complex:
    """Complex generated by the facets of the n-simplex through vertex ``end`` (0 or n)."""
    if end not in (0, n):
        raise ValueError("outer horns are at vertex 0 or n")
    if n == 0:
        raise ValueError("no horns in dimension 0")
    top = tuple(range(n + 1))
    gens = [top[:i] + top[i + 1:] for i in range(n + 1) if i != end]
    return generated_complex(gens, n)


def outer_horn_map(x: SimplicialObject, n: int, end: int):
    """Verdict on the canonical map X_n -> X(horn)."""
    return x.segal_verdict(outer_horn(n, end))


@dataclass
class DKReport:
    m: int
    segal: bool
    horns: bool
    chains: bool
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.segal == self.horns == self.chains

    def to_json(self) -> dict:
        return {"m": self.m, "2m_segal": self.segal, "outer_horns": self.horns, "chains_truncated": self.chains,
                "agree": self.ok, "ok": self.ok, **self.details}


def dk_equivalence_report(x: SimplicialObject, m: int) -> DKReport:
    """(a) 2m-Segal, (b) outer horn maps iso above m, (c) chains vanish above m, within truncation."""
    if x.backend_name != "vect":
        raise SchemaError("the abelian criterion needs vector space values")
    lo = is_lower_d_segal(x, 2 * m, strict=False)
    up = is_upper_d_segal(x, 2 * m, strict=False)
    horn_fail = None
    for n in range(m + 1, x.N + 1):
        for end in (0, n):
            v = outer_horn_map(x, n, end)
            if not v.ok and horn_fail is None:
                horn_fail = {"n": n, "end": end, "witness": v.witness}
    c = normalized_chains(x)
    chains = c.concentrated_at_most(m)
    details = {"levels_checked": [m + 1, x.N], "chain_dims": c.dims}
    if horn_fail:
        details["horn_witness"] = horn_fail
    for rep in (lo, up):
        bad = rep.first_failure()
        if bad:
            details.setdefault("segal_witness", {"condition": rep.condition, "n": bad.n, "witness": bad.witness})
    return DKReport(m, lo.ok and up.ok, horn_fail is None, chains, details)


def round_trip_ok(x: SimplicialObject, c) -> bool:
    return complexes_isomorphic(normalized_chains(x), c)


# thinness

def lambda_pullback_simplex(x: SimplicialObject, n: int) -> PosetDiagram:
    """I -> X_I over nonempty subsets of [n], arrows deleting one vertex."""
    if n > x.N:
        raise TruncationTooLow(f"level {n} exceeds truncation {x.N}")
    elements = [s for k in range(1, n + 2) for s in combinations(range(n + 1), k)]
    arrows = {}
    for s in elements:
        if len(s) > 1:
            for i in range(len(s)):
                t = s[:i] + s[i + 1:]
                arrows[(s, t)] = x.restriction(s, t)
    return PosetDiagram(x.backend, tuple(elements), {s: x.evaluate_on_subset(s) for s in elements}, arrows)


def thinness(diagram: PosetDiagram, admit=None) -> tuple[bool, bool, dict]:
    """(lower thin, upper thin, witnesses) of a diagram on the nonempty subsets of [n]."""
    top = max(diagram.elements, key=len)
    n = len(top) - 1
    be = diagram.backend
    paths = diagram.reach(top)
    out = []
    wit = {}
    for side in (Side.LOWER, Side.UPPER):
        k = boundary_complex(n, n - 1, side)
        sub = diagram.restrict(lambda e: e in k)
        if be.NAME == "groupoid":
            v = be.cone_iso(diagram.objects[top], lambda e: paths[e], sub, admit)
        else:
            v = be.cone_iso(diagram.objects[top], lambda e: paths[e], sub)
        out.append(v.ok)
        if not v.ok:
            wit[side.name.lower()] = v.witness
    return out[0], out[1], wit
