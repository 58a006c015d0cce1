from itertools import product

import pytest

from segalis.backends.finset import FinSet
from segalis.errors import TooLarge
from segalis.segal_checker import (check_higher_excision, cube_from_subsets, enumerate_strongly_bicartesian_cubes,
                                   is_cartesian, is_lower_d_segal)
from segalis.segal_checker.cubes import (Square, bicartesian_square, hom_count, is_pullback, is_pushout,
                                         monotone_maps, poset_pushout)
from segalis.simplicial_objects import (chain_complex, constant, cyclic_group, disjoint_union_monoid,
                                        dold_kan_inverse, nerve_of_category, partial_monoid_object)

from oracles import brute_pullback, brute_pushouts, monotone

EIGHT_VERTEX_CUBE = [{0, 1, 2, 3, 4}, {1, 2, 3, 4}, {0, 1, 3, 4}, {0, 1, 2, 3}, {1, 3, 4}, {1, 2, 3}, {0, 1, 3}, {1, 3}]
SQUARE = [{0, 1, 2}, {1, 2}, {0, 1}, {1}]


def test_hom_counts():
    for a in range(4):
        for b in range(4):
            assert hom_count(a, b) == len(monotone(a, b)) == len(monotone_maps(a, b))


def spans(max_a: int, max_bc: int):
    for a, b, c in product(range(max_a + 1), range(max_bc + 1), range(max_bc + 1)):
        for f in monotone(a, b):
            for g in monotone(a, c):
                yield a, b, c, f, g


def test_bicartesian_squares_against_brute_force():
    bound = 3
    seen = 0
    for a, b, c, f, g in spans(2, 2):
        got = bicartesian_square(b, c, f, g, bound)
        want = []
        for d, u, v in brute_pushouts(b, c, f, g, bound, bound + 1):
            sq = Square(a, b, c, d, f, g, u, v)
            if sq.non_identity() and brute_pullback(a, f, g, b, c, u, v, bound + 1):
                want.append(sq)
        assert len(want) <= 1
        assert (got is None) == (not want), (f, g)
        if got is not None:
            seen += 1
            assert got == want[0]
    assert seen > 0


def test_pushout_candidate_is_the_brute_cocone():
    for a, b, c, f, g in spans(1, 2):
        cands = brute_pushouts(b, c, f, g, 4, 5)
        po = poset_pushout(b, c, f, g)
        if cands:
            assert po == cands[0]
            sq = Square(a, b, c, *po[:1], f, g, po[1], po[2])
            assert is_pushout(sq, 4)


def test_pullback_criterion_against_brute_force():
    for a, b, c, f, g in spans(2, 2):
        for d in range(3):
            for u in monotone(b, d):
                for v in monotone(c, d):
                    sq = Square(a, b, c, d, f, g, u, v)
                    if sq.commutes():
                        assert is_pullback(sq) == brute_pullback(a, f, g, b, c, u, v, 3)


def test_square_example_is_strongly_bicartesian():
    sq = cube_from_subsets(SQUARE)
    assert sq.k == 2 and sq.is_strongly_bicartesian(4)
    found = {c.image_sets() for c in enumerate_strongly_bicartesian_cubes(2, 4)}
    assert frozenset(frozenset(s) for s in SQUARE) in found


def test_eight_vertex_cube_is_enumerated():
    cube = cube_from_subsets(EIGHT_VERTEX_CUBE)
    assert cube.k == 3 and cube.is_functorial() and cube.is_strongly_bicartesian(4)
    found = {c.image_sets() for c in enumerate_strongly_bicartesian_cubes(3, 4)}
    assert frozenset(frozenset(s) for s in EIGHT_VERTEX_CUBE) in found


def test_identity_directions_are_excluded():
    for k, bound in ((2, 4), (3, 4)):
        for cube in enumerate_strongly_bicartesian_cubes(k, bound):
            for (s, t), m in cube.maps.items():
                assert not (cube.dims[s] == cube.dims[t] and m == tuple(range(len(m))))
            assert cube.is_strongly_bicartesian(bound)


def test_square_enumeration_is_stable_under_raising_the_bound():
    def key(cubes, top):
        return {tuple(sorted((tuple(sorted(s)), c.dims[s], c.to_top(s)) for s in c.dims))
                for c in cubes if max(c.dims.values()) <= top}

    lo = enumerate_strongly_bicartesian_cubes(2, 3)
    hi = enumerate_strongly_bicartesian_cubes(2, 4)
    assert key(lo, 3) == key(hi, 3)


def test_guards():
    with pytest.raises(TooLarge):
        enumerate_strongly_bicartesian_cubes(4, 3)
    with pytest.raises(TooLarge):
        enumerate_strongly_bicartesian_cubes(2, 7)


def test_cube_json_and_shape():
    cube = cube_from_subsets(EIGHT_VERTEX_CUBE)
    js = cube.to_json()
    assert len(js["vertices"]) == 8 and js["vertices"][-1]["ordinal"] == 4
    with pytest.raises(ValueError):
        cube_from_subsets([{0}, {0, 1}, {0, 2}])


@pytest.fixture(scope="module")
def pool():
    return {
        "nerve": nerve_of_category(cyclic_group(2), 4),
        "pmonoid": partial_monoid_object(disjoint_union_monoid(2), 4),
        "dk1": dold_kan_inverse(chain_complex([1, 1]), 4),
        "dk2": dold_kan_inverse(chain_complex([1, 1, 1]), 4),
        "dk3": dold_kan_inverse(chain_complex([0, 0, 1, 1]), 4),
        "const": constant("finset", FinSet(2), 4),
    }


@pytest.mark.parametrize("d", [1, 2])
def test_higher_excision_agreement(pool, d):
    outcomes = set()
    for name, x in pool.items():
        rep = check_higher_excision(x, d, 4)
        assert rep.ok, (name, rep.to_json())
        assert rep.cubes > 0
        outcomes.add(rep.segal)
    assert outcomes == {True, False}


def test_eight_vertex_cube_is_cartesian_for_lower_three_segal_objects(pool):
    cube = cube_from_subsets(EIGHT_VERTEX_CUBE)
    for x in pool.values():
        assert bool(is_cartesian(x, cube)) == is_lower_d_segal(x, 3).levels[0].ok
