import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from segalis.backends.finset import FinSet, FinSetMap
from segalis.complexes import Complex, closure, generated_complex
from segalis.errors import NotAnExcision, SchemaError, TruncationTooLow
from segalis.orientals import cell, cells
from segalis.segal_checker import (atomic_excision_chain, check_excision_step, check_triangulation_independence,
                                   dk_equivalence_report, essentially_constant_chain, excision_chain,
                                   is_d_segal, is_essentially_constant, is_lower_d_segal, is_upper_d_segal,
                                   lambda_pullback_simplex, outer_horn, outer_horn_map, pathspace_report,
                                   thinness)
from segalis.simplicial_objects import (SimplicialObject, chain_complex, constant, cyclic_group,
                                        disjoint_union_monoid, dold_kan_inverse, nerve_of_category,
                                        partial_monoid_object, path_space, poset_category, random_chain_complex,
                                        s_construction)


@pytest.fixture(scope="module")
def objs():
    return {
        "nerve": nerve_of_category(cyclic_group(2), 5),
        "pmonoid": partial_monoid_object(disjoint_union_monoid(2), 5),
        "dk1": dold_kan_inverse(chain_complex([1, 1]), 5),
        "dk2": dold_kan_inverse(chain_complex([1, 1, 1]), 5),
        "const": constant("finset", FinSet(3), 5),
    }


def verdicts(x, d):
    return is_lower_d_segal(x, d).ok, is_upper_d_segal(x, d).ok


def test_named_examples(objs):
    assert verdicts(objs["nerve"], 1) == (True, False)
    assert verdicts(objs["pmonoid"], 1) == (False, False)
    assert verdicts(objs["pmonoid"], 2) == (True, True)
    assert verdicts(objs["dk1"], 2) == (True, True)
    assert verdicts(objs["dk2"], 2) == (False, False)
    assert verdicts(objs["const"], 1) == (True, True)


def test_one_truncated_dold_kan_is_one_segal(objs):
    # Gamma of a two-term complex is the nerve of a category object in vector spaces
    assert is_lower_d_segal(objs["dk1"], 1).ok


def test_report_witnesses(objs):
    rep = is_lower_d_segal(objs["dk2"], 1)
    bad = rep.first_failure()
    assert bad.n == 2 and "dimension 4 vs limit dimension 3" in bad.witness
    assert "FAIL at n=2" in rep.summary()
    rep = is_lower_d_segal(objs["pmonoid"], 1)
    assert rep.first_failure().witness
    js = rep.to_json()
    assert js["ok"] is False and js["range"] == [2, 5]


def test_truncation_guard():
    x = nerve_of_category(cyclic_group(2), 2)
    with pytest.raises(TruncationTooLow):
        is_lower_d_segal(x, 2)
    rep = is_lower_d_segal(x, 2, strict=False)
    assert rep.vacuous and rep.ok and "vacuous" in rep.summary()


def test_essentially_constant(objs):
    assert is_essentially_constant(objs["const"])
    assert not is_essentially_constant(objs["nerve"])
    assert all(essentially_constant_chain(objs["const"]).values())


def relabeled_constant(k: int, N: int, rng: random.Random) -> SimplicialObject:
    """A constant object transported along random bijections at each level."""
    perms = [tuple(rng.sample(range(k), k)) for _ in range(N + 1)]
    inv = [tuple(sorted(range(k), key=p.__getitem__)) for p in perms]
    x = FinSet(k)

    def iso(a, b):
        return FinSetMap(x, x, tuple(perms[b][inv[a][i]] for i in range(k)))

    faces = [[]] + [[iso(n, n - 1)] * (n + 1) for n in range(1, N + 1)]
    degs = [[iso(n, n + 1)] * (n + 1) for n in range(N)]
    return SimplicialObject("finset", [x] * (N + 1), faces, degs, name="relabeled")


def random_poset_nerve(rng: random.Random, N: int) -> SimplicialObject:
    k = rng.randint(1, 3)
    rel = {(a, b) for a in range(k) for b in range(a + 1, k) if rng.random() < 0.5}
    rel |= {(a, c) for a, b in rel for b2, c in rel if b == b2}
    return nerve_of_category(poset_category(list(range(k)), rel), N)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_upper_one_segal_objects_are_essentially_constant(seed):
    rng = random.Random(seed)
    for x in (relabeled_constant(rng.randint(1, 4), 4, rng), random_poset_nerve(rng, 4)):
        if is_upper_d_segal(x, 1).ok:
            chain = essentially_constant_chain(x)
            assert chain["s0_iso"] and chain["X0_to_X1_iso"] and chain["faces_iso"]
            assert is_essentially_constant(x)
        else:
            assert not is_essentially_constant(x)


def test_interplay_on_small_pool(objs):
    for x in objs.values():
        for d in range(1, 4):
            lo, up = verdicts(x, d)
            if is_lower_d_segal(x, d - 1, strict=False).ok and d > 1:
                assert lo and up
            if lo or up:
                assert all(is_d_segal(x, k) for k in range(d + 1, 5))


def test_triangulation_independence(objs):
    rep = check_triangulation_independence(objs["pmonoid"], 4, 2)
    assert rep.ok and rep.count == 5 and len(rep.steps) == 5
    rep = check_triangulation_independence(objs["dk1"], 5, 2)
    assert rep.ok and rep.count == 14
    bad = check_triangulation_independence(objs["dk2"], 4, 2, steps=False)
    assert not bad.ok


def test_excision_steps(objs):
    two = generated_complex([(0, 1, 2), (0, 2, 3)], 3)
    one = generated_complex([(0, 1, 2), (2, 3)], 3)
    assert check_excision_step(objs["nerve"], two, one, (0, 2, 3))
    with pytest.raises(NotAnExcision):
        check_excision_step(objs["nerve"], two, one, (0, 1, 2))
    with pytest.raises(NotAnExcision):
        check_excision_step(objs["nerve"], two, generated_complex([(0, 1, 2)], 3), (0, 2, 3))
    # a single simplex against its lower hemisphere is the lower (d-1)-Segal map itself
    tri = generated_complex([(0, 1, 2)], 2)
    horn = Complex(2, closure([(0, 1), (1, 2)]))
    assert check_excision_step(objs["nerve"], tri, horn, (0, 1, 2)) == is_lower_d_segal(objs["nerve"], 1).levels[0].ok


@pytest.mark.parametrize("n", [3, 4])
def test_excision_chains_for_lower_segal_objects(objs, n):
    for c in cells(n, 2):
        if c.dim == 2:
            assert all(s["ok"] for s in excision_chain(objs["nerve"], c))
            assert all(s["ok"] for s in atomic_excision_chain(objs["nerve"], c))
    low = cell([(0, 1, 2, 3), (0, 1, 3, 4), (1, 2, 3, 4)], 4)
    assert all(s["ok"] for s in excision_chain(objs["pmonoid"], low))


def test_pathspace_criteria(objs):
    rep = pathspace_report(objs["pmonoid"], 2)
    assert rep.ok and all(r["levelwise_agree"] for r in rep.rows)
    assert is_lower_d_segal(path_space(objs["pmonoid"], "initial"), 1).ok
    assert is_lower_d_segal(path_space(objs["pmonoid"], "final"), 1).ok
    assert pathspace_report(objs["const"], 2).ok and pathspace_report(objs["const"], 3).ok
    for x in objs.values():
        for d in (1, 2, 3):
            assert pathspace_report(x, d).ok


def test_even_pathspace_criterion_at_four():
    x = dold_kan_inverse(chain_complex([1, 1, 1]), 6)
    rep = pathspace_report(x, 4)
    assert rep.ok
    assert all(v for r in rep.rows for v in r["verdicts"].values())


def test_outer_horns(objs):
    assert outer_horn(1, 0).facets == ((0,),)
    assert outer_horn(3, 3).facets == ((0, 1, 3), (0, 2, 3), (1, 2, 3))
    x = objs["dk1"]
    assert all(outer_horn_map(x, n, e).ok for n in range(2, 6) for e in (0, n))
    v = outer_horn_map(objs["dk2"], 2, 0)
    assert not v.ok and v.witness


def test_dold_kan_report_examples(objs):
    assert dk_equivalence_report(objs["dk1"], 1).segal
    r = dk_equivalence_report(objs["dk1"], 1)
    assert r.ok and r.segal and r.horns and r.chains
    r = dk_equivalence_report(objs["dk1"], 0)
    assert r.ok and not (r.segal or r.horns or r.chains)
    c0 = dold_kan_inverse(chain_complex([2]), 4)
    r = dk_equivalence_report(c0, 0)
    assert r.ok and r.segal and is_essentially_constant(c0)
    with pytest.raises(SchemaError):
        dk_equivalence_report(objs["nerve"], 1)


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_dold_kan_triple_equivalence(seed):
    x = dold_kan_inverse(random_chain_complex(random.Random(seed)), 5)
    for m in range(3):
        assert dk_equivalence_report(x, m).ok


def test_lambda_pullback_shapes(objs):
    assert len(lambda_pullback_simplex(objs["nerve"], 1).elements) == 3
    assert len(lambda_pullback_simplex(objs["nerve"], 2).elements) == 7
    with pytest.raises(TruncationTooLow):
        lambda_pullback_simplex(objs["nerve"], 6)


def test_thinness_examples(objs):
    lo, up, _ = thinness(lambda_pullback_simplex(objs["const"], 3))
    assert lo and up
    lo, up, _ = thinness(lambda_pullback_simplex(objs["pmonoid"], 4))
    assert lo and up
    lo, up, wit = thinness(lambda_pullback_simplex(objs["dk2"], 2))
    assert not lo and "lower" in wit


@pytest.mark.parametrize("name", ["nerve", "pmonoid", "dk1", "dk2", "const"])
def test_thinness_dictionary(objs, name):
    x = objs[name]
    for n in range(2, 6):
        lo, up, _ = thinness(lambda_pullback_simplex(x, n))
        assert lo == is_lower_d_segal(x, n - 1, max_n=n).levels[-1].ok
        assert up == is_upper_d_segal(x, n - 1, max_n=n).levels[-1].ok


def test_s_construction_segal_and_path_spaces():
    x = s_construction(2, 3, 1)
    lo, up = is_lower_d_segal(x, 2), is_upper_d_segal(x, 2)
    assert lo.ok and up.ok and "total dimension" in lo.note
    for side in ("initial", "final"):
        assert is_lower_d_segal(path_space(x, side), 1).ok
    # with one dimension every extension is trivial, so the 1-Segal map is an equivalence too
    assert is_lower_d_segal(x, 1).ok
    assert not is_lower_d_segal(s_construction(2, 2, 2), 1).ok
