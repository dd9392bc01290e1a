import pytest
from hypothesis import given, settings, strategies as st

from wellpointed.builders import chain, disjoint_union, idempotent_monoid, monoid
from wellpointed.core import (CategoryError, Functor, NatTransformation, check_equivalence, identity_functor, inverse,
                              is_iso, validate_nat)
from wellpointed.corpus import corpus_instance, lemma_suite
from wellpointed.ind import IndCategory, find_ind_iso, stage_leg
from wellpointed.localise import (LocalisedCategory, WellPointedEndo, algebra_structure, check_well_pointed,
                                  hom_formula_agreement, idempotence, localisation_category, omega_infinity,
                                  omega_infinity_ind, omega_infinity_ind_mor, retractions, theta_inverted,
                                  verify_localisation_universal)

SUITE = lemma_suite()


def naive_local_hom(wp, x, y, stages=8):
    """Oracle for colim_m C(x, Omega^m y) in set mode: push every element well past its stage."""
    C = wp.category
    out = set()
    for m in range(stages // 2 + 1):
        target = wp.power(y, m)
        lift = wp.theta_power(target, stages - m)
        out |= {C.compose(lift, f) for f in C.homs[(x, target)]}
    return len(out)


def planted():
    """Point plus M = {1, e} with Omega(e) = 1 and theta = e: natural, not well-pointed."""
    M = idempotent_monoid()
    U = disjoint_union([chain(1), M])
    p, s = U.objects
    om = Functor(U, U, {p: p, s: s}, {"0.id_0": "0.id_0", "1.1": "1.1", "1.e": "1.1"})
    th = NatTransformation(identity_functor(U), om, {p: "0.id_0", s: "1.e"})
    return om, th


def test_well_pointed_examples(chain3_wp, monoid_wp):
    assert check_well_pointed(chain3_wp.omega, chain3_wp.theta).ok
    assert check_well_pointed(monoid_wp.omega, monoid_wp.theta).ok


def test_planted_failure_has_witness():
    om, th = planted()
    assert validate_nat(th).ok
    r = check_well_pointed(om, th)
    assert not r.ok
    v = r.violations[0]
    assert v.law == "well-pointed" and v.witness["object"] == "1.*"
    with pytest.raises(CategoryError):
        WellPointedEndo(om, th)


def test_localisation_refuses_non_well_pointed():
    om, th = planted()
    with pytest.raises(CategoryError):
        localisation_category(WellPointedEndo(om, th, check=False))


def test_algebra_structure_chain3(chain3_wp):
    assert algebra_structure(chain3_wp, "2") == "id_2"
    assert algebra_structure(chain3_wp, "0") is None


def test_algebra_structure_monoid(monoid_wp):
    assert algebra_structure(monoid_wp, "*") is None
    # oracle: e.x = 1 has no solution
    M = monoid_wp.category
    assert not any(M.compose(x, "e") == "1" for x in "1e")


def test_omega_infinity_of_algebra_is_embedded(chain3_wp):
    I = IndCategory(chain3_wp.category)
    assert find_ind_iso(I, omega_infinity(chain3_wp, "2"), I.embed("2")) is not None


def test_omega_infinity_chain3(chain3_wp):
    X = omega_infinity(chain3_wp, "0")
    assert X.levels == ("0", "1", "2") and (X.preperiod, X.period) == (2, 1)
    I = IndCategory(chain3_wp.category)
    assert find_ind_iso(I, X, I.embed("2")) is not None


def test_omega_infinity_telescope(monoid_wp):
    X = omega_infinity(monoid_wp, "*")
    assert X.maps == ("e",)
    I = IndCategory(monoid_wp.category)
    assert find_ind_iso(I, X, I.embed("*")) is None


def test_theta_invertible_on_omega_infinity(corpus_wp):
    from wellpointed.localise import theta_hat
    I = IndCategory(corpus_wp.category)
    for x in corpus_wp.category.objects:
        assert is_iso(I, theta_hat(corpus_wp, I, omega_infinity(corpus_wp, x)))


def test_identity_localisation(chain3):
    om = identity_functor(chain3)
    wp = WellPointedEndo(om, NatTransformation(om, om, {x: chain3.identity(x) for x in chain3.objects}))
    mat = localisation_category(wp).materialise()
    assert check_equivalence(mat.gamma()).ok


def test_monoid_localises_to_trivial(monoid_wp):
    loc = localisation_category(monoid_wp)
    assert loc.hom("*", "*").size == 1 == naive_local_hom(monoid_wp, "*", "*")
    assert loc.gamma("1") == loc.gamma("e")


def test_chain3_localises_to_a_point(chain3_wp):
    loc = localisation_category(chain3_wp)
    mat = loc.materialise(loc.skeleton_objects())
    assert mat.category.objects == ("2",) and mat.category.size == 1
    for x in "012":
        for y in "012":
            assert loc.hom(x, y).size == 1 == naive_local_hom(chain3_wp, x, y)


def test_local_homs_match_naive_colimit():
    for name in ("chain3", "monoid-e", "collapse2"):
        wp = corpus_instance(name).wp
        loc = localisation_category(wp)
        for x in wp.category.objects:
            for y in wp.category.objects:
                assert loc.hom(x, y).size == naive_local_hom(wp, x, y)


def test_linear_local_homs():
    assert localisation_category(corpus_instance("vect-scalar").wp).hom("*", "*").dim == 0
    # multiplication by e on Q{1, e} has image span{e}
    assert localisation_category(corpus_instance("vect-idempotent").wp).hom("*", "*").dim == 1


def test_universal_terminal_target(corpus_wp):
    if corpus_wp.enrichment != "set":
        return
    r = verify_localisation_universal(corpus_wp, chain(1))
    assert r.ok and r.inverting == r.functors == 1


def test_universal_monoid_to_trivial(monoid_wp):
    T = monoid(["1"], "1", lambda g, f: "1", name="1")
    r = verify_localisation_universal(monoid_wp, T)
    assert r.ok and r.inverting == 1
    assert r.factorisations[0].competitors == 1


def test_universal_chain3_to_chain3(chain3_wp):
    r = verify_localisation_universal(chain3_wp, chain(3))
    assert r.functors == 10
    # inverting means F(0) = F(1) = F(2): the three constant maps
    assert r.inverting == 3 and r.ok
    for f in r.factorisations:
        assert f.factor.src.objects == tuple("012") and f.unique


def test_theta_inverted_and_reflection_unit(corpus_wp):
    loc = localisation_category(corpus_wp)
    assert theta_inverted(loc).ok
    if corpus_wp.enrichment != "set":
        return
    I = loc.ind
    for x in corpus_wp.category.objects:
        T = loc.towers[x]
        unit = stage_leg(I, T, 0)
        image = omega_infinity_ind_mor(corpus_wp, I, unit, omega_infinity_ind(corpus_wp, I.embed(x)),
                                       omega_infinity_ind(corpus_wp, T))
        assert inverse(I, image) is not None


def test_hom_formula_agreement(corpus_wp):
    rows = hom_formula_agreement(corpus_wp)
    assert rows and all(r.ok and r.ind_size == r.colim_size for r in rows)


def test_idempotence(corpus_wp):
    assert idempotence(corpus_wp).ok


@given(st.sampled_from(SUITE))
@settings(max_examples=150, deadline=None)
def test_lemma_on_suite(inst):
    wp = inst.wp
    C = wp.category
    for x in C.objects:
        a = algebra_structure(wp, x)
        t = wp.theta[x]
        assert (a is not None) == is_iso(C, t)
        sols, free = retractions(wp, x)
        if a is not None:
            assert C.compose(a, t) == C.identity(x) and C.compose(t, a) == C.identity(wp.omega.obj(x))
            assert sols == [a] and free == 0
        else:
            assert sols == []


def test_loc_materialise_round_trip(chain3_wp):
    loc = LocalisedCategory(chain3_wp)
    mat = loc.materialise()
    for m in mat.category.labels:
        assert mat.label(mat.morphism(m)) == m
