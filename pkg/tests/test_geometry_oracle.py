from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segalis.complexes import boundary_complex, generated_complex
from segalis.errors import NotFullDimensional, TooManyVertices, ZeroDimension
from segalis.geometry_oracle import (SideVerdict, cyclic_volume, fiber_profile, moment_point,
                                     oracle_check_admissible, proper_intersection, proper_intersection_circuit,
                                     proper_intersection_lp, side_of_hyperplane, simplex_volume)

from oracles import vandermonde_sign


def test_moment_points():
    assert moment_point(0, 3) == (0, 0, 0)
    assert moment_point(2, 3) == (2, 4, 8)
    assert moment_point(5, 1) == (5,)
    with pytest.raises(ZeroDimension):
        moment_point(1, 0)
    assert all(isinstance(c, Fraction) for c in moment_point(3, 4))


def test_side_examples():
    assert side_of_hyperplane((0, 1, 2), moment_point(3, 3)) is SideVerdict.ABOVE
    assert side_of_hyperplane((0, 2), moment_point(1, 2)) is SideVerdict.BELOW
    assert side_of_hyperplane((1,), (Fraction(1),)) is SideVerdict.ON


def test_side_matches_leibniz_determinant():
    for d in (2, 3):
        for s in combinations(range(6), d):
            for j in range(6):
                if j in s:
                    continue
                rows = [[Fraction(1), *moment_point(i, d)] for i in s] + [[Fraction(1), *moment_point(j, d)]]
                sign = vandermonde_sign(rows)
                want = {1: SideVerdict.ABOVE, -1: SideVerdict.BELOW, 0: SideVerdict.ON}[sign]
                assert side_of_hyperplane(s, moment_point(j, d)) is want


def test_proper_intersection_examples():
    assert proper_intersection((0, 2, 3), (0, 3, 4), 2, verify=True)
    assert not proper_intersection((0, 2, 4), (1, 3, 4), 2, verify=True)
    assert proper_intersection((0, 1, 2), (0, 1, 2), 2, verify=True)
    with pytest.raises(TooManyVertices):
        proper_intersection((0, 1, 2, 3), (0, 1), 2)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_circuit_and_lp_agree_exhaustively(d):
    n = 6 if d == 3 else 7
    simplices = [s for k in range(1, d + 2) for s in combinations(range(n + 1), k)]
    for a, b in combinations(simplices, 2):
        assert proper_intersection_circuit(a, b, d) == proper_intersection_lp(a, b, d), (a, b)


def test_fiber_profiles():
    k = generated_complex([(0, 1, 2, 3)], 3)
    bary = tuple(sum(moment_point(i, 2)[c] for i in range(4)) / 4 for c in range(2))
    prof = fiber_profile(k, 3, bary)
    assert len(prof) == 1 and prof[0][0] < prof[0][1]
    point = fiber_profile(generated_complex([(2,)], 2), 1, ())
    assert len(point) == 1 and point[0][0] == point[0][1]
    two = generated_complex([(0, 1, 2), (2, 3, 4)], 4)
    x = tuple(sum(moment_point(i, 1)[0] for i in (0, 1, 2)) / 3 for _ in range(1))
    assert len(fiber_profile(two, 2, x)) == 1


@settings(max_examples=40)
@given(st.lists(st.integers(0, 6), min_size=2, max_size=4, unique=True), st.data())
def test_single_simplex_fiber_is_an_interval(vs, data):
    s = tuple(sorted(vs))
    d = len(s) - 1
    if d < 1:
        return
    w = data.draw(st.lists(st.integers(1, 9), min_size=len(s), max_size=len(s)))
    tot = sum(w)
    x = tuple(sum(Fraction(wi, tot) * moment_point(v, d)[c] for wi, v in zip(w, s)) for c in range(d - 1))
    assert len(fiber_profile(generated_complex([s], 6), d, x)) == 1


def test_oracle_verdicts():
    assert oracle_check_admissible(generated_complex([(0, 1), (3, 4)], 4), 1).rejected
    assert not oracle_check_admissible(boundary_complex(4, 3, "lower"), 3).rejected
    assert not oracle_check_admissible(generated_complex([(0, 1)], 1), 1).rejected


def test_volumes():
    assert simplex_volume((0, 1), 1) == 1
    assert simplex_volume((0, 1, 2), 2) == 1
    assert simplex_volume((0, 2, 3), 2) == 3
    with pytest.raises(NotFullDimensional):
        simplex_volume((0, 1), 2)


@pytest.mark.parametrize("n, d", [(n, d) for n in range(2, 9) for d in range(1, 5) if d < n])
def test_lower_and_upper_volumes_agree(n, d):
    lo = sum(simplex_volume(f, d) for f in boundary_complex(n, d, "lower").facets)
    up = sum(simplex_volume(f, d) for f in boundary_complex(n, d, "upper").facets)
    assert lo == up == cyclic_volume(n, d)
