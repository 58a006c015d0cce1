"""Triangulation independence and excision steps."""
from __future__ import annotations

from dataclasses import dataclass, field

from ..complexes import Complex, Simplex, closure, generated_complex, lower_facets, upper_facets
from ..errors import NotAnExcision
from ..orientals import AdmissibleCell, atomic_decomposition, excise_top
from ..simplicial_objects import SimplicialObject
from ..triangulations import Triangulation, flip_graph


@dataclass
class IndependenceReport:
    n: int
    d: int
    name: str
    verdicts: list[dict] = field(default_factory=list)
    steps: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(v["ok"] for v in self.verdicts) and all(s["ok"] for s in self.steps)

    @property
    def count(self) -> int:
        return len(self.verdicts)

    def to_json(self) -> dict:
        return {"n": self.n, "d": self.d, "object": self.name, "ok": self.ok, "triangulations": self.verdicts,
                "flip_steps": self.steps}


def _as_complex(k: Complex | AdmissibleCell) -> Complex:
    return k.complex if isinstance(k, AdmissibleCell) else k


def validate_excision(k: Complex | AdmissibleCell, l: Complex | AdmissibleCell, i: Simplex) -> None:
    """K = L glued to the simplex I along the lower hemisphere of I."""
    kc, lc = _as_complex(k), _as_complex(l)
    i = tuple(i)
    if i not in kc.facets:
        raise NotAnExcision(f"{i} is not a facet of {kc!r}")
    if len(i) < 2:
        raise NotAnExcision("a vertex cannot be excised")
    full = closure([i])
    if kc.simplices != lc.simplices | full:
        raise NotAnExcision("K is not the union of L and the simplex")
    if lc.simplices & full != closure(lower_facets(i)):
        raise NotAnExcision("L meets the simplex outside its lower hemisphere")


def check_excision_step(x: SimplicialObject, k: Complex | AdmissibleCell, l: Complex | AdmissibleCell,
                        i: Simplex) -> bool:
    """Restriction X_K -> X_L is an iso for a valid excision triple."""
    validate_excision(k, l, i)
    return x.restriction_verdict(_as_complex(k), _as_complex(l)).ok


def excision_chain(x: SimplicialObject, c: AdmissibleCell) -> list[dict]:
    """Peel top simplices off ``c`` one at a time, checking each restriction."""
    out = []
    cur = c
    d = c.dim
    while cur.dim == d:
        rest, s = excise_top(cur)
        ok = check_excision_step(x, cur, rest, s)
        out.append({"K": cur.complex.facets, "L": rest.complex.facets, "I": s, "ok": ok})
        cur = rest
    return out


def atomic_excision_chain(x: SimplicialObject, c: AdmissibleCell) -> list[dict]:
    """Excision steps along the atomic decomposition, bottom atom first."""
    atoms = atomic_decomposition(c)
    out = []
    below = c.s(c.dim - 1).complex
    for atom in atoms:
        for s in atom.tops():
            k = Complex(c.n, below.simplices | closure([s]))
            out.append({"I": s, "ok": check_excision_step(x, k, below, s)})
            below = Complex(c.n, k.simplices)
    return out


def flip_excisions(t: Triangulation, s: Simplex) -> tuple[Complex, Complex, Complex]:
    """(K, T, T') for an upward flip of T through the (d+1)-simplex s."""
    n = t.n
    k = Complex(n, t.complex.simplices | closure([s]))
    new = [f for f in t.facets if f not in set(lower_facets(s))] + upper_facets(s)
    return k, t.complex, generated_complex(new, n)


def check_triangulation_independence(x: SimplicialObject, n: int, d: int, steps: bool = True,
                                     guards: dict[int, int] | None = None) -> IndependenceReport:
    """X_n -> X_T is an iso for every triangulation T; optionally also along every flip."""
    g = flip_graph(n, d, guards)
    rep = IndependenceReport(n, d, x.name)
    for t in g.nodes:
        v = x.segal_verdict(t.complex)
        rep.verdicts.append({"triangulation": t.label(), "ok": v.ok, "witness": v.witness})
    if steps:
        for a, b, s in g.edges:
            t = g.nodes[a]
            k, lo, hi = flip_excisions(t, s)
            down = check_excision_step(x, k, lo, s)
            up = x.restriction_verdict(k, hi).ok
            rep.steps.append({"from": t.label(), "to": g.nodes[b].label(), "simplex": list(s), "ok": down and up,
                              "lower": down, "upper": up})
    return rep
