import json
import random
from itertools import combinations, permutations
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segalis.backends import finset, vect
from segalis.backends.finset import FinSet, FinSetMap
from segalis.backends.vect import Field, VectSpace
from segalis.errors import NoPaths, NotPartialMonoid, SchemaError, SimplicialIdentityError, TooLarge, TruncationTooLow
from segalis.simplicial_objects import (PartialMonoid, SimplicialObject, chain_complex, complexes_isomorphic,
                                        constant, cyclic_group, disjoint_union_monoid, dold_kan_inverse, dumps,
                                        from_json, iso_classes, join_initial, loads, monoid_category,
                                        nerve_of_category, normalized_chains, partial_monoid_object, path_space,
                                        poset_category, random_chain_complex, s_construction, surjection_count,
                                        to_json, total_monoid)

from oracles import count_surjections, gaussian_binomial, gl_order, monotone, partial_monoid_arrays


def size(o) -> int:
    return o.size if isinstance(o, FinSet) else o.dim if isinstance(o, VectSpace) else len(o.objects)


def test_evaluate_on_subset():
    x = nerve_of_category(cyclic_group(2), 4)
    assert x.evaluate_on_subset((0, 1, 2, 3, 4)) is x.level(4)
    assert x.evaluate_on_subset((3,)) is x.level(0)
    assert x.restriction(tuple(range(5)), tuple(range(5))) == finset.identity(x.level(4))
    with pytest.raises(TruncationTooLow):
        x.evaluate_on_subset(tuple(range(6)))


def test_restriction_is_the_face_composite_in_any_order():
    x = dold_kan_inverse(chain_complex([1, 2, 1], {1: [[1], [0]], 2: [[0, 1]]}), 4)
    want = x.restriction(tuple(range(5)), (1, 3))
    for order in permutations([0, 2, 4]):
        verts = list(range(5))
        f = vect.identity(x.level(4))
        for v in order:
            i = verts.index(v)
            f = vect.compose(x.faces[len(verts) - 1][i], f)
            verts.pop(i)
        assert vect.equal(f, want)


def test_operator_factorization_matches_brute_composites():
    x = nerve_of_category(poset_category([0, 1, 2], {(0, 1), (1, 2), (0, 2)}), 3)
    for n in range(4):
        for m in range(4):
            for theta in monotone(m, n):
                op = x.operator(theta, n)
                for i, chain in enumerate(x.level(n).labels):
                    x0, fs = chain
                    verts = [x0] + [f[1] for f in fs]
                    got = x.level(m).labels[op(i)]
                    gv = [got[0]] + [f[1] for f in got[1]]
                    assert gv == [verts[t] for t in theta]


def test_nerve_sizes():
    pt = monoid_category(["e"], {("e", "e"): "e"}, "e")
    assert [size(o) for o in nerve_of_category(pt, 3).objects] == [1, 1, 1, 1]
    arrow = nerve_of_category(poset_category([0, 1], {(0, 1)}), 3)
    assert [size(o) for o in arrow.objects] == [2, 3, 4, 5]
    for k in (2, 3, 5):
        x = nerve_of_category(cyclic_group(k), 4)
        assert [size(o) for o in x.objects] == [k ** n for n in range(5)]


def test_partial_monoid_against_brute_force():
    m = disjoint_union_monoid(2)
    x = partial_monoid_object(m, 3)
    for n in range(4):
        assert size(x.level(n)) == partial_monoid_arrays(m.elements, m.unit, m.mult, n)
    assert size(x.level(1)) == 4 and size(x.level(2)) == 9


def test_total_monoid_matches_the_nerve():
    c = cyclic_group(3)
    x, y = partial_monoid_object(total_monoid(c), 4), nerve_of_category(c, 4)
    assert [size(o) for o in x.objects] == [size(o) for o in y.objects]


def test_bad_partial_monoid():
    with pytest.raises(NotPartialMonoid):
        partial_monoid_object(PartialMonoid(("e", "a"), "e", {("e", "e"): "e", ("a", "e"): "a"}), 2)


@pytest.mark.parametrize("dims, want", [
    ([1], [1, 1, 1, 1, 1]),
    ([1, 1], [1, 2, 3, 4, 5]),
    ([0, 0, 1], [0, 0, 1, 3, 6]),
])
def test_dold_kan_dimensions(dims, want):
    x = dold_kan_inverse(chain_complex(dims), 4)
    assert [o.dim for o in x.objects] == want


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dold_kan_dimensions_count_surjections(seed):
    c = random_chain_complex(random.Random(seed))
    x = dold_kan_inverse(c, 4)
    for n in range(5):
        want = sum(count_surjections(n, k) * c.dims[k] for k in range(min(n, len(c.dims) - 1) + 1))
        assert x.level(n).dim == want
        assert all(surjection_count(n, k) == count_surjections(n, k) for k in range(n + 1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([0, 2, 3]))
def test_dold_kan_round_trip(seed, p):
    c = random_chain_complex(random.Random(seed), field=Field(p))
    assert c.is_complex()
    back = normalized_chains(dold_kan_inverse(c, 4))
    assert complexes_isomorphic(back, c)


def test_normalized_chains_of_simple_objects():
    x = constant("vect", VectSpace(2), 3)
    assert normalized_chains(x).trimmed().dims == [2]
    y = dold_kan_inverse(chain_complex([0, 0, 1]), 4)
    assert normalized_chains(y).trimmed().dims == [0, 0, 1]


def test_bad_chain_complex():
    with pytest.raises(SchemaError):
        chain_complex([1, 1, 1], {1: [[1]], 2: [[1]]})


def test_path_space_reindexing():
    x = nerve_of_category(cyclic_group(2), 4)
    p = path_space(x, "initial")
    assert p.N == 3 and [size(o) for o in p.objects] == [size(o) for o in x.objects[1:]]
    p.check_identities()
    for n in range(4):
        for m in range(4):
            for theta in monotone(m, n):
                assert finset.equal(p.operator(theta, n), x.operator(join_initial(theta), n + 1))
    q = path_space(x, "final")
    q.check_identities()
    for theta in monotone(1, 2):
        assert finset.equal(q.operator(theta, 2), x.operator(tuple(theta) + (3,), 3))


def test_path_space_of_constant_and_truncation_guard():
    c = constant("finset", FinSet(3), 3)
    assert all(size(o) == 3 for o in path_space(c).objects)
    with pytest.raises(NoPaths):
        path_space(constant("finset", FinSet(1), 0))


def test_simplicial_identities_are_enforced():
    x = FinSet(2)
    swap = FinSetMap(x, x, (1, 0))
    ident = finset.identity(x)
    with pytest.raises(SimplicialIdentityError):
        SimplicialObject("finset", [x, x], [[], [swap, ident]], [[ident]])


@pytest.mark.parametrize("make", [
    lambda: nerve_of_category(cyclic_group(3), 3),
    lambda: partial_monoid_object(disjoint_union_monoid(2), 3),
    lambda: dold_kan_inverse(chain_complex([1, 2, 1], {1: [[1], [0]], 2: [[0, 1]]}, Field(3)), 3),
    lambda: s_construction(2, 3, 1),
])
def test_json_round_trip(make):
    x = make()
    text = dumps(x)
    y = loads(text)
    assert y.N == x.N and [size(o) for o in y.objects] == [size(o) for o in x.objects]
    assert json.loads(dumps(y)) == json.loads(text)
    assert y.meta.get("cutoff") == x.meta.get("cutoff")


def test_json_schema_errors():
    with pytest.raises(SchemaError):
        from_json({"backend": "finset"})
    data = to_json(nerve_of_category(cyclic_group(2), 2))
    data["faces"][2][0] = [0, 0, 0, 0]
    with pytest.raises((SchemaError, SimplicialIdentityError)):
        from_json(data)


# S-construction

def flag_types(n: int, cutoff: int) -> list[tuple[int, ...]]:
    """Dimension sequences 0 = d_0 <= d_1 <= ... <= d_n <= cutoff."""
    return [(0,) + t for t in _weak(n, cutoff)]


def _weak(n, top):
    if n == 0:
        return [()]
    return [t + (k,) for t in _weak(n - 1, top) for k in range(t[-1] if t else 0, top + 1)]


def parabolic_order(dims: tuple[int, ...], p: int) -> int:
    flags = 1
    for a, b in zip(dims, dims[1:]):
        flags *= gaussian_binomial(b, a, p)
    return gl_order(dims[-1], p) // flags


@pytest.mark.parametrize("p, cutoff, n_max", [(2, 1, 3), (3, 1, 3), (5, 1, 2), (2, 2, 2), (3, 2, 2)])
def test_s_construction_iso_classes_and_automorphisms(p, cutoff, n_max):
    x = s_construction(p, n_max, cutoff)
    for n, g in enumerate(x.objects):
        assert iso_classes(g) == comb(n + cutoff, cutoff)
        auts = sorted(len(g.aut(r)) for r in g.reps())
        assert auts == sorted(parabolic_order(t, p) for t in flag_types(n, cutoff))


def test_s_construction_small_levels():
    x = s_construction(2, 3, 1)
    assert len(x.level(0).objects) == 1
    assert [len(g.objects) for g in x.objects] == [1, 2, 3, 4]
    x.check_identities()


def test_s_construction_guards():
    with pytest.raises(TooLarge):
        s_construction(7, 2, 1)
    with pytest.raises(TooLarge):
        s_construction(2, 4, 1)
    with pytest.raises(TooLarge):
        s_construction(2, 2, 3)


def test_s_construction_faces_are_strict():
    x = s_construction(3, 3, 1)
    be = x.backend
    for n in range(2, 4):
        for i, j in combinations(range(n + 1), 2):
            # d_i d_j = d_{j-1} d_i for i < j
            lhs = be.compose(x.faces[n - 1][i], x.faces[n][j])
            rhs = be.compose(x.faces[n - 1][j - 1], x.faces[n][i])
            assert be.equal(lhs, rhs)
