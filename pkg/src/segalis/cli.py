"""Command-line entry point: ``segalis <command> ...``.

Exit codes: 0 when every requested check passes, 1 when a check fails, 2 on
usage errors and exceeded guards.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable

from .complexes import boundary_complex
from .config import FORMATS, Config
from .errors import SegalisError, TooLarge
from .orientals import check_omega_axioms, oriental
from .simplicial_objects import (PartialMonoid, chain_complex, cyclic_group, disjoint_union_monoid,
                                 dold_kan_inverse, dumps, loads, nerve_of_category, partial_monoid_object,
                                 poset_category, random_chain_complex, s_construction, total_monoid)
from .backends.vect import Field
from .triangulations import flip_graph, stasheff_tamari_poset

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _emit_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=1) + "\n"


def _facet_str(f) -> str:
    return "{" + ",".join(map(str, f)) + "}"


# boundary

def cmd_boundary(args, cfg: Config) -> tuple[str, int]:
    k = boundary_complex(args.n, args.d, args.side)
    if cfg.format == "json":
        return _emit_json({"n": args.n, "d": args.d, "side": args.side, "facets": [list(f) for f in k.facets]}), 0
    return "\n".join(_facet_str(f) for f in k.facets) + "\n", 0


# triangulations

def cmd_triangulations(args, cfg: Config) -> tuple[str, int]:
    if args.n > cfg.max_n or args.d > cfg.max_d:
        raise TooLarge(f"n={args.n}, d={args.d} exceeds --max-n/--max-d")
    emit = args.emit
    if emit == "hasse":
        return stasheff_tamari_poset(args.n, args.d, cfg.flip_guards).hasse_dot(), 0
    g = flip_graph(args.n, args.d, cfg.flip_guards)
    if emit == "count":
        return (_emit_json({"n": args.n, "d": args.d, "count": len(g.nodes), "connected": g.is_connected()})
                if cfg.format == "json" else f"{len(g.nodes)}\n"), 0
    if emit == "dot" or cfg.format == "dot":
        return g.to_dot(), 0
    if cfg.format == "json":
        return _emit_json(g.to_json()), 0
    return "".join(t.label() + "\n" for t in g.nodes), 0


# orientals

def cmd_oriental(args, cfg: Config) -> tuple[str, int]:
    if args.axioms:
        rep = check_omega_axioms(args.n, args.d)
        if cfg.format == "json":
            out = {"n": rep.n, "max_dim": rep.max_dim, "cells": rep.cells, "checks": dict(sorted(rep.checks.items())),
                   "violations": [list(map(str, v)) for v in rep.violations[:20]], "ok": rep.ok}
            return _emit_json(out), EXIT_OK if rep.ok else EXIT_FAIL
        return rep.summary() + "\n", EXIT_OK if rep.ok else EXIT_FAIL
    d = args.n if args.d is None else args.d
    o = oriental(args.n, d, max_n=min(cfg.max_n, 5))
    if args.emit == "dot" or cfg.format == "dot":
        return o.to_dot(), 0
    if args.emit == "count":
        by_dim = {k: len(o.of_dim(k)) for k in range(d + 1)}
        if cfg.format == "json":
            return _emit_json({"n": args.n, "d": d, "cells": len(o), "by_dim": by_dim}), 0
        return f"{len(o)}\n", 0
    if cfg.format == "json":
        return _emit_json([c.to_json() for c in o]), 0
    return "".join(f"{c.dim} {' '.join(''.join(map(str, f)) for f in c.complex.facets)}\n" for c in o), 0


# generators

def _category(spec: str):
    kind, _, arg = spec.partition(":")
    k = int(arg or 2)
    if kind == "cyclic":
        return cyclic_group(k)
    if kind == "chain":
        els = list(range(k))
        return poset_category(els, [(a, b) for a in els for b in els if a <= b])
    raise SegalisError(f"unknown category {spec!r} (use cyclic:K or chain:K)")


def _monoid(spec: str):
    kind, _, arg = spec.partition(":")
    k = int(arg or 2)
    if kind == "disjoint":
        return disjoint_union_monoid(k)
    if kind == "cyclic":
        return total_monoid(cyclic_group(k))
    if kind == "truncated":
        # {0..k} with a+b defined when a+b <= k
        els = list(range(k + 1))
        return PartialMonoid(tuple(els), 0, {(a, b): a + b for a in els for b in els if a + b <= k}, f"N<={k}")
    raise SegalisError(f"unknown monoid {spec!r} (use disjoint:K, cyclic:K or truncated:K)")


def cmd_gen(args, cfg: Config) -> tuple[str, int]:
    N = args.truncation
    if N > cfg.max_n:
        raise TooLarge(f"truncation {N} exceeds --max-n {cfg.max_n}")
    kind = args.kind
    if kind == "nerve":
        x = nerve_of_category(_category(args.category), N)
    elif kind == "pmonoid":
        x = partial_monoid_object(_monoid(args.monoid), N)
    elif kind == "doldkan":
        field = Field.parse(cfg.field)
        if args.dims:
            c = chain_complex([int(v) for v in args.dims.split(",")], {}, field)
        else:
            c = random_chain_complex(random.Random(cfg.seed), field=field)
        x = dold_kan_inverse(c, N)
        x.name = f"doldkan(dims={','.join(map(str, c.dims))})"
    elif kind == "sdot":
        x = s_construction(args.p, N, cfg.cutoff)
    else:  # argparse restricts the choices
        raise SegalisError(f"unknown generator {kind!r}")
    return dumps(x) + "\n", 0


# checks

def _load(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return loads(text)


def _check_tasks(args, x) -> list[tuple[str, Callable[[], dict]]]:
    from . import segal_checker as sc

    tasks: list[tuple[str, Callable[[], dict]]] = []
    for d in args.lower or []:
        tasks.append((f"lower {d}-Segal", lambda d=d: sc.is_lower_d_segal(x, d).to_json()))
    for d in args.upper or []:
        tasks.append((f"upper {d}-Segal", lambda d=d: sc.is_upper_d_segal(x, d).to_json()))
    if args.dk is not None:
        tasks.append((f"Dold-Kan triple m={args.dk}", lambda: sc.dk_equivalence_report(x, args.dk).to_json()))
    if args.independence:
        _need(args, "n", "d")
        tasks.append((f"triangulation independence n={args.n} d={args.d}",
                      lambda: sc.check_triangulation_independence(x, args.n, args.d).to_json()))
    if args.pathspace:
        _need(args, "d")
        tasks.append((f"path spaces d={args.d}", lambda: sc.pathspace_report(x, args.d, strict=False).to_json()))
    if args.excision:
        _need(args, "d")
        tasks.append((f"higher excision d={args.d}", lambda: sc.check_higher_excision(x, args.d).to_json()))
    if args.thin:
        _need(args, "n")

        def thin() -> dict:
            lo, up, wit = sc.thinness(sc.lambda_pullback_simplex(x, args.n))
            lseg = x.segal_verdict(sc.segal_complex(args.n, args.n - 1, "lower")).ok
            useg = x.segal_verdict(sc.segal_complex(args.n, args.n - 1, "upper")).ok
            return {"n": args.n, "lower_thin": lo, "upper_thin": up, "lower_segal": lseg, "upper_segal": useg,
                    "ok": lo == lseg and up == useg, "witnesses": wit}

        tasks.append((f"thinness n={args.n}", thin))
    if args.constant:
        tasks.append(("essentially constant", lambda: {"ok": sc.is_essentially_constant(x),
                                                       **sc.essentially_constant_chain(x)}))
    return tasks


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise SegalisError(f"this check needs {' '.join(missing)}")


def cmd_check(args, cfg: Config) -> tuple[str, int]:
    x = _load(args.input)
    if x.N > cfg.max_n:
        raise TooLarge(f"truncation {x.N} exceeds --max-n {cfg.max_n}")
    tasks = _check_tasks(args, x)
    if not tasks:
        raise SegalisError("no check requested")
    if cfg.jobs > 1:
        with ThreadPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(lambda t: t[1](), tasks))
    else:
        results = [fn() for _, fn in tasks]
    ok = all(r["ok"] for r in results)
    if cfg.format == "json":
        out = {"object": x.name, "truncation": x.N, "ok": ok,
               "checks": [{"check": name, **r} for (name, _), r in zip(tasks, results)]}
        return _emit_json(out), EXIT_OK if ok else EXIT_FAIL
    lines = [f"{x.name or 'object'} (truncation {x.N})"]
    for (name, _), r in zip(tasks, results):
        lines.append(f"{name}: {'pass' if r['ok'] else 'FAIL'}{_witness_hint(r)}")
    return "\n".join(lines) + "\n", EXIT_OK if ok else EXIT_FAIL


def _witness_hint(r: dict) -> str:
    if r["ok"]:
        return ""
    for lv in r.get("levels", []):
        if not lv["ok"]:
            return f" at n={lv['n']} ({lv['witness']})"
    for key in ("segal_witness", "horn_witness"):
        if key in r:
            return f" ({json.dumps(r[key], sort_keys=True)})"
    return ""


# parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-n", type=int, default=8)
    common.add_argument("--max-d", type=int, default=4)
    common.add_argument("--cutoff", type=int, default=1)
    common.add_argument("--field", default="QQ")
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = argparse.ArgumentParser(prog="segalis", description="Higher Segal conditions on finite data.")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("boundary", parents=[common], help="lower/upper boundary complex")
    b.add_argument("--n", type=int, required=True)
    b.add_argument("--d", type=int, required=True)
    b.add_argument("--side", choices=("lower", "upper"), default="lower")
    b.set_defaults(func=cmd_boundary)

    t = sub.add_parser("triangulations", parents=[common], help="triangulations of C([n],d)")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--emit", choices=("count", "list", "dot", "hasse"), default="list")
    t.set_defaults(func=cmd_triangulations)

    o = sub.add_parser("oriental", parents=[common], help="cells of the oriental")
    o.add_argument("--n", type=int, required=True)
    o.add_argument("--d", type=int)
    o.add_argument("--emit", choices=("count", "list", "dot"), default="count")
    o.add_argument("--axioms", action="store_true")
    o.set_defaults(func=cmd_oriental)

    g = sub.add_parser("gen", parents=[common], help="generate a simplicial object as JSON")
    g.add_argument("kind", choices=("nerve", "pmonoid", "doldkan", "sdot"))
    g.add_argument("--truncation", "--N", type=int, default=4)
    g.add_argument("--category", default="cyclic:2")
    g.add_argument("--monoid", default="disjoint:2")
    g.add_argument("--dims", help="comma-separated chain dimensions (zero differentials)")
    g.add_argument("--p", type=int, default=2)
    g.set_defaults(func=cmd_gen)

    c = sub.add_parser("check", parents=[common], help="check Segal conditions of a JSON object")
    c.add_argument("--input", required=True, help="JSON file, or - for stdin")
    c.add_argument("--lower", type=int, action="append")
    c.add_argument("--upper", type=int, action="append")
    c.add_argument("--dk", type=int)
    c.add_argument("--independence", action="store_true")
    c.add_argument("--pathspace", action="store_true")
    c.add_argument("--excision", action="store_true")
    c.add_argument("--thin", action="store_true")
    c.add_argument("--constant", action="store_true")
    c.add_argument("--n", type=int)
    c.add_argument("--d", type=int)
    c.set_defaults(func=cmd_check)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = Config(max_n=args.max_n, max_d=args.max_d, cutoff=args.cutoff, field=args.field, seed=args.seed,
                     format=args.format, verbosity=args.verbose, jobs=args.jobs)
        text, code = args.func(args, cfg)
    except (SegalisError, ValueError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
