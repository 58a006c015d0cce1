"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion K: PASS|FAIL`` line; the collected
lines are repeated in the terminal summary (see conftest.py).  Run
``pytest tests/test_acceptance.py -s`` to see them inline as well.
"""
from __future__ import annotations

import functools
import io
import random
import time
from collections import deque
from contextlib import redirect_stdout
from fractions import Fraction
from itertools import combinations
from pathlib import Path

import networkx as nx
import pytest

from segalis.cli import main as cli_main
from segalis.complexes import Parity, boundary_complex, gap_parity
from segalis.geometry_oracle import SideVerdict, moment_point, side_of_hyperplane
from segalis.orientals import atomic_decomposition, brute_force_cells, cells, check_omega_axioms, excise_top, fold
from segalis.segal_checker import (check_higher_excision, check_triangulation_independence, cube_from_subsets,
                                   dk_equivalence_report, enumerate_strongly_bicartesian_cubes, is_d_segal,
                                   is_lower_d_segal, is_upper_d_segal, lambda_pullback_simplex, pathspace_report,
                                   thinness)
from segalis.simplicial_objects import (cyclic_group, disjoint_union_monoid, dold_kan_inverse, nerve_of_category,
                                        partial_monoid_object, path_space, random_chain_complex, s_construction)
from segalis.triangulations import epsilon_key, flip_graph, rambau_less

from oracles import catalan, vandermonde_sign

ROOT = Path(__file__).resolve().parents[1]
RESULTS: dict[int, str] = {}

POOL_SIZE = 100
TRUNCATION = 6
EXCISION_BOUND = 5
EIGHT_VERTEX_CUBE = [{0, 1, 2, 3, 4}, {1, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 3}, {1, 3, 4}, {1, 2, 3}, {0, 1, 3}, {1, 3}]


def criterion(k: int, title: str):
    def wrap(fn):
        @functools.wraps(fn)
        def run(*args, **kwargs):
            t0 = time.perf_counter()
            status, detail = "FAIL", ""
            try:
                detail = fn(*args, **kwargs) or ""
                status = "PASS"
            except AssertionError as exc:
                detail = str(exc).splitlines()[0] if str(exc) else "assertion failed"
                raise
            finally:
                line = f"criterion {k:2d}: {status}  {title} ({time.perf_counter() - t0:.1f}s) {detail}".rstrip()
                RESULTS[k] = line
                print(line)
        return run
    return wrap


# shared instance pool

@pytest.fixture(scope="module")
def dk_pool():
    return [dold_kan_inverse(random_chain_complex(random.Random(seed)), TRUNCATION) for seed in range(POOL_SIZE)]


@pytest.fixture(scope="module")
def pool(dk_pool):
    extra = [partial_monoid_object(disjoint_union_monoid(2), TRUNCATION),
             nerve_of_category(cyclic_group(2), TRUNCATION)]
    return dk_pool + extra


# 1

@criterion(1, "Gale parity agrees with the determinant sign")
def test_gale_agreement():
    cases = 0
    t0 = time.perf_counter()
    for n in range(1, 9):
        for d in range(1, 5):
            for s in combinations(range(n + 1), d):
                for j in range(n + 1):
                    if j in s:
                        continue
                    rows = [[Fraction(1), *moment_point(i, d)] for i in s] + [[Fraction(1), *moment_point(j, d)]]
                    sign = vandermonde_sign(rows)
                    even = gap_parity(s, j) is Parity.EVEN
                    assert sign != 0 and even == (sign > 0), (n, d, s, j)
                    side = side_of_hyperplane(s, moment_point(j, d))
                    assert side is (SideVerdict.ABOVE if even else SideVerdict.BELOW), (n, d, s, j)
                    cases += 1
    assert time.perf_counter() - t0 < 30
    return f"[{cases} cases]"


# 2

@criterion(2, "boundary fixtures")
def test_boundary_fixtures():
    def facets(n, d, side):
        return {"".join(map(str, f)) for f in boundary_complex(n, d, side).facets}

    assert facets(4, 3, "lower") == {"0123", "1234", "0134"}
    assert facets(4, 3, "upper") == {"0234", "0124"}
    for n in range(2, 9):
        assert set(boundary_complex(n, 1, "lower").facets) == {(i, i + 1) for i in range(n)}
        assert set(boundary_complex(n, 1, "upper").facets) == {(0, n)}
    for n in range(3, 9):
        assert set(boundary_complex(n, 2, "lower").facets) == {(0, i, i + 1) for i in range(1, n)}


# 3

@criterion(3, "epsilon order extends the Rambau relation, which is acyclic")
def test_rambau_lemma():
    relations = 0
    for n in range(1, 9):
        for d in range(1, min(n, 4) + 1):
            simplices = list(combinations(range(n + 1), d + 1))
            g = nx.DiGraph()
            g.add_nodes_from(simplices)
            for s in simplices:
                for t in simplices:
                    if s != t and rambau_less(s, t, d):
                        assert epsilon_key(s, n) < epsilon_key(t, n), (n, d, s, t)
                        g.add_edge(s, t)
                        relations += 1
            assert nx.is_directed_acyclic_graph(g), (n, d)
            keys = [epsilon_key(s, n) for s in simplices]
            assert len(set(keys)) == len(keys)
    return f"[{relations} relations]"


# 4

def _bfs_connected(g) -> bool:
    adj = {i: set() for i in range(len(g.nodes))}
    for a, b, _ in g.edges:
        adj[a].add(b)
        adj[b].add(a)
    seen, todo = {0}, deque([0])
    while todo:
        for b in adj[todo.popleft()] - seen:
            seen.add(b)
            todo.append(b)
    return len(seen) == len(g.nodes)


@criterion(4, "triangulation counts and flip connectivity")
def test_triangulation_counts():
    t0 = time.perf_counter()
    graphs = []
    for n in range(4, 9):
        g = flip_graph(n, 2)
        assert len(g.nodes) == catalan(n - 1), n
        graphs.append(g)
        top = flip_graph(n, n - 1)
        assert len(top.nodes) == 2, n
        graphs.append(top)
    graphs += [flip_graph(n, d) for n, d in ((5, 3), (6, 3), (7, 3), (6, 4), (7, 4))]
    for g in graphs:
        assert g.is_connected() and _bfs_connected(g), (g.n, g.d)
    assert time.perf_counter() - t0 < 120
    return f"[{len(graphs)} flip graphs]"


# 5

@criterion(5, "oriental soundness")
def test_oriental_soundness():
    for n in range(4):
        for d in range(n + 1):
            assert {c.complex for c in cells(n, d)} == brute_force_cells(n, d), (n, d)
    for n in range(1, 5):
        rep = check_omega_axioms(n)
        assert rep.ok and not rep.violations, (n, rep.violations[:3])
    checked = 0
    for n in range(1, 6):
        for c in cells(n, min(n, 4)):
            if c.dim == 0:
                continue
            rest, s = excise_top(c)
            assert s in c.tops() and rest.complex.simplices <= c.complex.simplices
            atoms = atomic_decomposition(c)
            assert len(atoms) == len(c.tops()) and fold(atoms, c.dim - 1) == c
            checked += 1
    return f"[{checked} cells round-tripped]"


# 6

@criterion(6, "Dold-Kan triple equivalence on the random pool")
def test_dold_kan_triple(dk_pool):
    assert len(dk_pool) >= 100
    seen = {True: 0, False: 0}
    for seed, x in enumerate(dk_pool):
        for m in range(3):
            rep = dk_equivalence_report(x, m)
            assert rep.ok, (seed, m, rep.to_json())
            seen[rep.segal] += 1
    assert seen[True] and seen[False]
    return f"[{seen[True]} Segal, {seen[False]} not]"


# 7

@criterion(7, "interplay of lower, upper and higher Segal conditions")
def test_interplay(pool):
    hits = {"lower->d": 0, "one side->k": 0, "triangulations": 0}
    for i, x in enumerate(pool):
        lower = {d: is_lower_d_segal(x, d, strict=False).ok for d in range(1, TRUNCATION)}
        upper = {d: is_upper_d_segal(x, d, strict=False).ok for d in range(1, TRUNCATION)}
        for d in range(2, TRUNCATION):
            if lower[d - 1]:
                assert lower[d] and upper[d], (i, d)
                hits["lower->d"] += 1
        for d in range(1, TRUNCATION - 1):
            if lower[d] or upper[d]:
                for k in range(d + 1, 6):
                    assert is_d_segal(x, k), (i, d, k)
                hits["one side->k"] += 1
        for d in (1, 2, 3):
            if lower[d] and upper[d]:
                for n in range(d + 1, 6):
                    rep = check_triangulation_independence(x, n, d, steps=False)
                    assert rep.ok, (i, n, d)
                    hits["triangulations"] += 1
    assert all(hits.values()), hits
    return f"{hits}"


# 8

@criterion(8, "path-space criteria")
def test_pathspace(pool):
    rows = 0
    for i, x in enumerate(pool):
        for d in range(1, TRUNCATION):
            rep = pathspace_report(x, d)
            for r in rep.rows:
                assert r["agree"] and r["levelwise_agree"], (i, d, r)
                rows += 1
    return f"[{rows} comparisons]"


# 9

@criterion(9, "higher excision on strongly biCartesian cubes")
def test_higher_excision(pool):
    squares = enumerate_strongly_bicartesian_cubes(2, EXCISION_BOUND)
    cubes = enumerate_strongly_bicartesian_cubes(3, EXCISION_BOUND)
    assert frozenset(frozenset(s) for s in EIGHT_VERTEX_CUBE) in {c.image_sets() for c in cubes}
    assert cube_from_subsets(EIGHT_VERTEX_CUBE).is_strongly_bicartesian(EXCISION_BOUND)
    outcomes = set()
    for i, x in enumerate(pool):
        for d in (1, 2):
            rep = check_higher_excision(x, d, EXCISION_BOUND)
            assert rep.ok, (i, d, rep.to_json())
            outcomes.add(rep.segal)
    assert outcomes == {True, False}
    return f"[{len(squares)} squares, {len(cubes)} cubes]"


# 10

@criterion(10, "thinness dictionary")
def test_thinness(pool):
    compared = 0
    for i, x in enumerate(pool):
        for n in range(2, 6):
            lo, up, _ = thinness(lambda_pullback_simplex(x, n))
            assert lo == is_lower_d_segal(x, n - 1, max_n=n).levels[-1].ok, (i, n)
            assert up == is_upper_d_segal(x, n - 1, max_n=n).levels[-1].ok, (i, n)
            compared += 1
    return f"[{compared} simplices]"


# 11

@criterion(11, "S-construction over F2 with cutoff 1")
def test_s_construction():
    t0 = time.perf_counter()
    x = s_construction(2, 3, 1)
    assert is_lower_d_segal(x, 2).ok and is_upper_d_segal(x, 2).ok
    for side in ("initial", "final"):
        assert is_lower_d_segal(path_space(x, side), 1).ok, side
    assert time.perf_counter() - t0 < 300


# 12

def _cli(argv: list[str]) -> tuple[str, int]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = cli_main(argv)
    return buf.getvalue(), code


@criterion(12, "CLI golden files are deterministic")
def test_determinism():
    import importlib.util

    spec = importlib.util.spec_from_file_location("make_fixtures", ROOT / "scripts" / "make_fixtures.py")
    mk = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mk)
    for name, argv in mk.FIXTURES.items():
        assert _cli(argv)[0] == (ROOT / "tests" / "fixtures" / name).read_text(encoding="utf-8"), name
    for name in mk.GOLDEN:
        want = (ROOT / "tests" / "golden" / name).read_text(encoding="utf-8")
        argv = mk.golden_argv(name)
        outs = {_cli(argv)[0], _cli(argv)[0]}
        if argv[0] == "check":
            outs |= {_cli(argv + ["--jobs", j])[0] for j in ("2", "4")}
        assert outs == {want}, name
    return f"[{len(mk.GOLDEN)} golden files]"
