"""JSON round-trips for simplicial objects."""
from __future__ import annotations

import json
from typing import Any

from ..backends import finset, groupoid, vect
from ..backends.groupoid import GroupoidFunctor
from ..backends.vect import Field
from ..errors import SchemaError, SimplicialIdentityError
from .core import SimplicialObject

SCHEMA_VERSION = 1


def to_json(x: SimplicialObject) -> dict[str, Any]:
    be = x.backend_name
    out: dict[str, Any] = {"schema": SCHEMA_VERSION, "backend": be, "truncation": x.N, "name": x.name}
    if be == "finset":
        out["objects"] = [finset.to_json_object(o) for o in x.objects]
        enc = finset.to_json_map
    elif be == "vect":
        out["field"] = str(x.objects[0].field)
        out["objects"] = [vect.to_json_object(o) for o in x.objects]
        enc = vect.to_json_map
    elif be == "groupoid":
        tables, names, objs = [], [], []
        for g in x.objects:
            t, mn, on = groupoid.to_json_tables(g)
            tables.append(t)
            names.append(mn)
            objs.append(on)
        out["objects"] = tables
        level_of = {}
        for n, g in enumerate(x.objects):
            level_of[id(g)] = n

        def enc(f: GroupoidFunctor) -> dict:
            s, t = level_of[id(f.source)], level_of[id(f.target)]
            return {"objects": {objs[s][a]: objs[t][b] for a, b in f.obj.items()},
                    "morphisms": {names[s][a]: names[t][b] for a, b in f.mor.items()}}
    else:
        raise SchemaError(f"unknown backend {be!r}")
    if x.meta.get("generator") == "sdot":
        out["generator"] = {"kind": "sdot", "p": x.meta["p"], "cutoff": x.meta["cutoff"]}
    out["faces"] = [[enc(f) for f in row] for row in x.faces]
    out["degeneracies"] = [[enc(s) for s in row] for row in x.degeneracies]
    return out


def from_json(data: dict[str, Any], check: bool = True) -> SimplicialObject:
    try:
        be = data["backend"]
        N = int(data["truncation"])
        raw_objs = data["objects"]
        raw_faces = data["faces"]
        raw_degs = data["degeneracies"]
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"missing or malformed field: {exc}") from None
    if len(raw_objs) != N + 1:
        raise SchemaError("number of objects does not match the truncation")
    if be == "finset":
        objs = [finset.from_json_object(o) for o in raw_objs]

        def dec(m, s, t):
            return finset.from_json_map(m, objs[s], objs[t])
    elif be == "vect":
        field = Field.parse(data.get("field", "QQ"))
        objs = [vect.from_json_object(o, field) for o in raw_objs]

        def dec(m, s, t):
            return vect.from_json_map(m, objs[s], objs[t])
    elif be == "groupoid":
        objs = [groupoid.from_json_object(o) for o in raw_objs]

        def dec(m, s, t):
            return GroupoidFunctor(objs[s], objs[t], dict(m["objects"]), dict(m["morphisms"]))
    else:
        raise SchemaError(f"unknown backend {be!r}")
    try:
        faces = [[]] + [[dec(m, n, n - 1) for m in raw_faces[n]] for n in range(1, N + 1)]
        degs = [[dec(m, n, n + 1) for m in raw_degs[n]] for n in range(N)]
    except (KeyError, IndexError, TypeError) as exc:
        raise SchemaError(f"malformed structure maps: {exc}") from None
    if be == "groupoid":
        for row in faces + degs:
            for f in row:
                f.check()
    try:
        x = SimplicialObject(be, objs, faces, degs, name=data.get("name", ""), check=check)
    except SimplicialIdentityError:
        raise
    except Exception as exc:  # malformed maps surface as schema errors
        raise SchemaError(str(exc)) from None
    gen = data.get("generator")
    if isinstance(gen, dict) and gen.get("kind") == "sdot":
        return _regenerate_sdot(data, gen)
    return x


def _regenerate_sdot(data: dict[str, Any], gen: dict) -> SimplicialObject:
    """Rebuild an array-model object so that its cutoff metadata is available."""
    from .s_construction import s_construction

    try:
        y = s_construction(int(gen["p"]), int(data["truncation"]), int(gen["cutoff"]), check=False)
    except Exception as exc:
        raise SchemaError(f"cannot rebuild generator data: {exc}") from None
    if to_json(y)["objects"] != data["objects"]:
        raise SchemaError("objects do not match the stated generator")
    return y


def dumps(x: SimplicialObject) -> str:
    return json.dumps(to_json(x), sort_keys=True, indent=1)


def loads(text: str, check: bool = True) -> SimplicialObject:
    return from_json(json.loads(text), check)
