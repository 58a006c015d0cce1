from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segalis.complexes import (Complex, Parity, Side, boundary_complex, closure, gap_parity, generated_complex,
                               is_even_subset, is_odd_subset, simplex_hemispheres)
from segalis.errors import BadVertex, DimensionTooLarge, EmptyComplex, NoBoundary, NotAGap
from segalis.geometry_oracle import SideVerdict, moment_point, side_of_hyperplane


def facets(k: Complex) -> set:
    return set(k.facets)


def test_generated_full_simplex():
    k = generated_complex([(0, 1, 2)], 2)
    assert len(k) == 7
    assert k.facets == ((0, 1, 2),)


def test_generated_named_complexes():
    lo = generated_complex([(0, 1, 2, 3), (1, 2, 3, 4), (0, 1, 3, 4)], 4)
    assert lo == boundary_complex(4, 3, "lower")
    up = generated_complex([(0, 2, 3, 4), (0, 1, 2, 4)], 4)
    assert up == boundary_complex(4, 3, "upper")


def test_generated_errors():
    with pytest.raises(EmptyComplex):
        generated_complex([], 3)
    with pytest.raises(BadVertex):
        generated_complex([(0, 5)], 3)


@pytest.mark.parametrize("s, j, parity", [
    ((0, 1, 2, 3), 4, Parity.EVEN),
    ((0, 2, 3, 4), 1, Parity.ODD),
    ((0, 6), 3, Parity.ODD),
])
def test_gap_parity(s, j, parity):
    assert gap_parity(s, j) is parity


def test_gap_parity_rejects_members():
    with pytest.raises(NotAGap):
        gap_parity((0, 1, 2), 1)


def test_even_and_odd_subsets():
    for n in range(2, 7):
        for i in range(n):
            assert is_even_subset((i, i + 1), n)
        assert is_odd_subset((0, n), n)
    assert is_even_subset((0, 1, 3, 4), 4)
    assert is_even_subset((0, 1, 2), 2) and is_odd_subset((0, 1, 2), 2)


def test_boundary_examples():
    assert facets(boundary_complex(4, 2, "lower")) == {(0, 1, 2), (0, 2, 3), (0, 3, 4)}
    assert facets(boundary_complex(4, 3, "upper")) == {(0, 2, 3, 4), (0, 1, 2, 4)}
    both = facets(boundary_complex(3, 2, "lower")) | facets(boundary_complex(3, 2, "upper"))
    assert both == set(combinations(range(4), 3))
    with pytest.raises(DimensionTooLarge):
        boundary_complex(2, 2, "lower")


@pytest.mark.parametrize("n", range(2, 9))
def test_low_dimensional_boundaries(n):
    assert facets(boundary_complex(n, 1, "lower")) == {(i, i + 1) for i in range(n)}
    assert facets(boundary_complex(n, 1, "upper")) == {(0, n)}
    if n >= 3:
        assert facets(boundary_complex(n, 2, "lower")) == {(0, i, i + 1) for i in range(1, n)}


@pytest.mark.parametrize("s, lower, upper", [
    ((0, 1), {(0,)}, {(1,)}),
    ((0, 1, 2, 3), {(0, 1, 2), (0, 2, 3)}, {(1, 2, 3), (0, 1, 3)}),
    ((0, 1, 3, 4), {(0, 3, 4), (0, 1, 3)}, {(1, 3, 4), (0, 1, 4)}),
])
def test_hemispheres(s, lower, upper):
    lo, up = simplex_hemispheres(s)
    assert facets(lo) == lower and facets(up) == upper


def test_hemisphere_of_vertex():
    with pytest.raises(NoBoundary):
        simplex_hemispheres((3,))


@pytest.mark.parametrize("n", range(2, 8))
def test_top_boundaries_partition_the_simplex_boundary(n):
    lo = facets(boundary_complex(n, n - 1, "lower"))
    up = facets(boundary_complex(n, n - 1, "upper"))
    assert not lo & up
    assert lo | up == set(combinations(range(n + 1), n))


@given(st.lists(st.integers(0, 6), min_size=2, max_size=7, unique=True))
def test_hemispheres_meet_in_the_equator(vs):
    s = tuple(sorted(vs))
    lo, up = simplex_hemispheres(s)
    assert lo | up == Complex(s[-1], closure(combinations(s, len(s) - 1)))
    if len(s) >= 3:
        # the shared ridges are exactly the boundary of either hemisphere
        ridges = lambda k: {r for r in combinations(s, len(s) - 2)  # noqa: E731
                            if sum(1 for f in k.facets if set(r) <= set(f)) == 1}
        shared = set((lo & up).of_size(len(s) - 2))
        assert shared == ridges(lo) == ridges(up)


@given(st.lists(st.lists(st.integers(0, 6), min_size=1, max_size=4, unique=True), min_size=1, max_size=5))
def test_generated_complex_idempotent_and_monotone(gens):
    k = generated_complex(gens, 6)
    assert generated_complex(k.facets, 6) == k
    assert generated_complex(gens[:1], 6) <= k


@settings(max_examples=60)
@given(st.integers(2, 7).flatmap(lambda n: st.tuples(st.just(n), st.integers(1, min(n, 4)))),
       st.data())
def test_gale_parity_matches_determinant(nd, data):
    n, d = nd
    s = tuple(sorted(data.draw(st.lists(st.integers(0, n), min_size=d, max_size=d, unique=True))))
    gaps = [j for j in range(n + 1) if j not in s]
    if not gaps:
        return
    j = data.draw(st.sampled_from(gaps))
    above = side_of_hyperplane(s, moment_point(j, d)) is SideVerdict.ABOVE
    assert above == (gap_parity(s, j) is Parity.EVEN)


def test_json_round_trip():
    k = boundary_complex(6, 3, Side.UPPER)
    assert Complex.from_json(k.to_json()) == k
    assert k.to_json()["facets"] == sorted(k.to_json()["facets"])
