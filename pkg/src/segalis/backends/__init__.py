"""Value categories for Segal limits: finite sets, vector spaces, groupoids."""
from __future__ import annotations

from types import ModuleType

from . import finset, groupoid, vect
from .diagram import PosetDiagram
from .verdict import IsoVerdict

BACKENDS: dict[str, ModuleType] = {"finset": finset, "vect": vect, "groupoid": groupoid}


def get_backend(name: str) -> ModuleType:
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"unknown backend {name!r}") from None


def poset_limit(d: PosetDiagram, check: bool = False):
    """Limit (pseudo-limit for groupoids) of a poset diagram."""
    if check:
        d.check_coherent()
    return d.backend.limit(d)


def is_iso(m) -> bool:
    if isinstance(m, finset.FinSetMap):
        return finset.is_iso(m)
    if isinstance(m, vect.LinearMap):
        return vect.is_iso(m)
    if isinstance(m, groupoid.GroupoidFunctor):
        return bool(groupoid.is_equivalence(m))
    raise TypeError(f"not a backend morphism: {m!r}")


def iso_verdict(m) -> IsoVerdict:
    if isinstance(m, finset.FinSetMap):
        return finset.iso_verdict(m)
    if isinstance(m, vect.LinearMap):
        return vect.iso_verdict(m)
    if isinstance(m, groupoid.GroupoidFunctor):
        return groupoid.is_equivalence(m)
    raise TypeError(f"not a backend morphism: {m!r}")


def is_equivalence(f: groupoid.GroupoidFunctor) -> bool:
    return bool(groupoid.is_equivalence(f))


__all__ = ["BACKENDS", "IsoVerdict", "PosetDiagram", "finset", "get_backend", "groupoid",
           "is_equivalence", "is_iso", "iso_verdict", "poset_limit", "vect"]
