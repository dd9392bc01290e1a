import pytest
from hypothesis import given, settings, strategies as st

from wellpointed.builders import chain, idempotent_monoid, monotone_functor, unique_point
from wellpointed.core import CategoryError, Functor, NatTransformation, identity_functor
from wellpointed.corpus import corpus_instance, lemma_suite
from wellpointed.localise import WellPointedEndo
from wellpointed.orbit import (GradedMorphism, OrbitCategory, check_composition, grade_zero, orbit_compose,
                               orbit_factorisation_probe, orbit_hom, orbit_well_pointing)

from conftest import SHIFT

SET_SUITE = [i for i in lemma_suite(seed=5) if i.category.enrichment == "set"]


def naive_grade(F, x, y, n):
    """Morphisms F^n x -> y, found by applying F n times."""
    for _ in range(n):
        x = F.obj(x)
    return tuple(F.src.hom(x, y))


def test_identity_functor_repeats_c():
    M = idempotent_monoid()
    h = orbit_hom(identity_functor(M), "*", "*", 4)
    assert h.sizes() == [2] * 5
    assert all(h.carrier(n) == ("1", "e") for n in range(12))


def test_chain3_grades(chain3):
    F = monotone_functor(chain3, SHIFT)
    assert orbit_hom(F, "0", "1", 3).sizes() == [1, 1, 0, 0]
    assert orbit_hom(F, "0", "2", 3).sizes() == [1, 1, 1, 1]


def test_carriers_repeat_past_the_period(chain3):
    F = monotone_functor(chain3, SHIFT)
    h = orbit_hom(F, "0", "2", 3)
    assert (h.preperiod, h.period) == (2, 1)
    assert h.carrier(50) == h.carrier(2) == ("id_2",)


@given(st.sampled_from(SET_SUITE), st.data())
@settings(max_examples=60, deadline=None)
def test_graded_carriers_match_naive(inst, data):
    F = inst.omega
    objs = list(F.src.objects)
    x, y = data.draw(st.sampled_from(objs)), data.draw(st.sampled_from(objs))
    h = orbit_hom(F, x, y, 5)
    for n in range(5):
        assert tuple(m.carrier for m in h.grades[n]) == naive_grade(F, x, y, n)
    n = data.draw(st.integers(0, 40))
    assert h.carrier(n) == naive_grade(F, x, y, n)


def test_grade_zero_composition_is_ordinary(chain3):
    F = monotone_functor(chain3, SHIFT)
    f = GradedMorphism("0", "1", 0, "0<1")
    g = GradedMorphism("1", "2", 0, "1<2")
    assert orbit_compose(F, g, f) == GradedMorphism("0", "2", 0, "0<2")
    assert grade_zero(OrbitCategory(F)).ok


def test_theta_squared(chain3):
    A = OrbitCategory(monotone_functor(chain3, SHIFT))
    t = A.compose(A.theta("1"), A.theta("0"))
    assert t == GradedMorphism("0", "2", 2, "id_2")


def test_composition_adds_grades_and_applies_f():
    M = idempotent_monoid()
    A = OrbitCategory(identity_functor(M))
    t = A.compose(GradedMorphism("*", "*", 2, "e"), GradedMorphism("*", "*", 1, "1"))
    assert t == GradedMorphism("*", "*", 3, "e")


def test_morphism_checks_source(chain3):
    A = OrbitCategory(monotone_functor(chain3, SHIFT))
    with pytest.raises(CategoryError):
        A.morphism("0", "1", 2, "0<1")
    with pytest.raises(CategoryError):
        A.hom("0", "1", -1)


def test_vect_is_refused():
    with pytest.raises(CategoryError):
        OrbitCategory(corpus_instance("vect-scalar").omega)


@pytest.mark.parametrize("name", ["chain3", "monoid-e", "collapse2", "loop3"])
def test_composition_laws_on_corpus(name):
    r = check_composition(OrbitCategory(corpus_instance(name).omega), triples=500)
    assert r.ok


@given(st.sampled_from(SET_SUITE), st.integers(0, 10 ** 6))
@settings(max_examples=30, deadline=None)
def test_composition_laws_on_suite(inst, seed):
    assert check_composition(OrbitCategory(inst.omega), triples=100, seed=seed).ok


@pytest.mark.parametrize("name", ["chain3", "monoid-e", "collapse2", "loop3"])
def test_theta_is_well_pointed_in_orbit_category(name):
    w = orbit_well_pointing(corpus_instance(name).omega)
    assert w.ok
    assert all(b >= 0 for b in w.checked_to.values())


@given(st.sampled_from(SET_SUITE))
@settings(max_examples=40, deadline=None)
def test_orbit_point_is_well_pointed_for_any_f(inst):
    # no point on C is needed: (1, id) is always natural and well pointed
    assert orbit_well_pointing(inst.omega, max_grade=4).ok


def test_factorisation_probe_into_well_pointed_target(chain3_wp):
    F = chain3_wp.omega
    H = identity_functor(chain3_wp.category)
    assert orbit_factorisation_probe(F, chain3_wp, H, 4).ok


def test_factorisation_probe_into_terminal(chain3):
    F = monotone_functor(chain3, SHIFT)
    T = chain(1)
    G = identity_functor(T)
    target = WellPointedEndo(G, unique_point(T, G))
    H = Functor(chain3, T, {x: "0" for x in chain3.objects}, {m: "id_0" for m in chain3.labels})
    assert orbit_factorisation_probe(F, target, H, 3).ok


def test_factorisation_probe_reports_non_intertwining(chain3):
    F = monotone_functor(chain3, SHIFT)
    M = idempotent_monoid()
    G = identity_functor(M)
    target = WellPointedEndo(G, NatTransformation(G, G, {"*": "e"}))
    H = Functor(chain3, M, {x: "*" for x in chain3.objects}, {m: "1" for m in chain3.labels})
    assert orbit_factorisation_probe(F, target, H, 3).ok
    H2 = Functor(chain3, M, {x: "*" for x in chain3.objects},
                 {m: ("e" if m == "0<1" else "1") for m in chain3.labels})
    assert not orbit_factorisation_probe(F, target, H2, 3).ok
