import random

import pytest
from hypothesis import given, settings, strategies as st

from wellpointed.builders import chain, idempotent_monoid, monotone_functor
from wellpointed.core import (CategoryError, FinSet, Functor, NatTransformation, find_natural_iso, identity_functor,
                              validate_functor)
from wellpointed.corpus import corpus_instance, discrete, lemma_suite
from wellpointed.localise import WellPointedEndo
from wellpointed.stabilise import (StabObject, check_degree_shift, check_proposition_equivalence,
                                   eventual_image_duality_check, loop_duality, omega_autoequivalence, stable_category,
                                   verify_heller_universal)

SET_SUITE = [i for i in lemma_suite(seed=3) if i.category.enrichment == "set" and len(i.category.objects) <= 3]


def naive_stable_hom_size(omega, c, i, d, j, start=8, far=16):
    """Classes of C(O^(k+i) c, O^(k+j) d) as k grows: the image of a late stage in a much later one."""
    C = omega.src

    def power(x, n):
        for _ in range(n):
            x = omega.obj(x)
        return x

    def push(f, n):
        for _ in range(n):
            f = omega.mor(f)
        return f

    here = C.hom(power(c, start + i), power(d, start + j))
    return len({push(f, far) for f in here})


def orbit_oracle(g, carrier):
    """Elements on a cycle of g, by iterating |X| times."""
    xs = set(carrier)
    for _ in range(len(carrier)):
        xs = {g(x) for x in xs}
    return xs


# -- examples ---------------------------------------------------------------------------

def test_identity_endofunctor_gives_c_in_each_degree():
    M = idempotent_monoid()
    S = stable_category(identity_functor(M), 2)
    for i in range(-2, 3):
        for j in range(-2, 3):
            assert S.hom(StabObject("*", i), StabObject("*", j)).size == 2


def test_chain3_shift_is_equivalent_to_terminal():
    C = chain(3)
    S = stable_category(monotone_functor(C, {"0": "1", "1": "2", "2": "2"}), 1)
    assert all(S.hom(a, b).size == 1 for a in S.objects for b in S.objects)


def test_monoid_hom_across_degrees():
    M = idempotent_monoid()
    S = stable_category(identity_functor(M), 1)
    h = S.hom(StabObject("*", 0), StabObject("*", 1))
    assert h.size == 2
    e = S.normalise(StabObject("*", 0), StabObject("*", 0), "e", 0)
    assert S.compose(e, e) == e != S.identity(StabObject("*", 0))


@given(st.sampled_from(SET_SUITE), st.data())
@settings(max_examples=40, deadline=None)
def test_stable_hom_sizes_match_naive_colimit(inst, data):
    om = inst.omega
    S = stable_category(om, 1)
    objs = list(om.src.objects)
    c, d = data.draw(st.sampled_from(objs)), data.draw(st.sampled_from(objs))
    i, j = data.draw(st.integers(-1, 1)), data.draw(st.integers(-1, 1))
    assert S.hom(StabObject(c, i), StabObject(d, j)).size == naive_stable_hom_size(om, c, i, d, j)


@pytest.mark.parametrize("name", ["chain3", "monoid-e", "collapse2", "vect-scalar"])
def test_degree_shift_and_omega_autoequivalence(name):
    S = stable_category(corpus_instance(name).omega, 1)
    assert check_degree_shift(S).ok
    assert omega_autoequivalence(S).ok


@given(st.sampled_from(SET_SUITE))
@settings(max_examples=25, deadline=None)
def test_shift_and_omega_invariants_on_suite(inst):
    S = stable_category(inst.omega, 1)
    objs = [x for x in S.objects if x.degree == 0]
    assert check_degree_shift(S, objects=objs).ok
    assert omega_autoequivalence(S).ok


def test_stable_composition_is_associative_on_monoid():
    M = idempotent_monoid()
    S = stable_category(identity_functor(M), 1)
    xs = S.objects
    rng = random.Random(0)
    for _ in range(50):
        a, b, c, d = (rng.choice(xs) for _ in range(4))
        f, g, h = (rng.choice(list(S.hom(p, q))) for p, q in ((a, b), (b, c), (c, d)))
        assert S.compose(h, S.compose(g, f)) == S.compose(S.compose(h, g), f)


def test_universal_functor_materialises():
    C = chain(3)
    S = stable_category(monotone_functor(C, {"0": "1", "1": "2", "2": "2"}), 1)
    P = S.materialise()
    assert len(P.category.objects) == 9
    assert validate_functor(P.universal()).ok


# -- comparison of spectra and the stable category -----------------------------------------

def test_identity_point_makes_everything_agree():
    M = idempotent_monoid()
    om = identity_functor(M)
    r = check_proposition_equivalence(WellPointedEndo(om, NatTransformation(om, om, {"*": "1"})))
    assert r.ok and r.phi_is_equivalence and r.phi_inverse_psi and r.via_local


def test_chain3_comparison_holds(chain3_wp):
    r = check_proposition_equivalence(chain3_wp)
    assert r.ok and r.phi_inverse_psi and r.agree


def test_idempotent_point_breaks_phi_psi_inverse(monoid_wp):
    r = check_proposition_equivalence(monoid_wp)
    assert r.ok and r.phi_is_equivalence
    assert not r.phi_inverse_psi and not r.via_local and r.agree
    w = r.witnesses["phi_inverse_psi"]
    assert (w["stable_endomorphisms"], w["local_endomorphisms"]) == (2, 1)


def test_coreflections_hold_on_corpus(corpus_wp):
    r = check_proposition_equivalence(corpus_wp)
    for key in ("local_inclusion_fully_faithful", "eta_coreflection", "spectra_inclusion_fully_faithful",
                "epsilon_coreflection", "phi_psi_is_eta", "psi_phi_is_epsilon"):
        assert r.items[key], key


# -- eventual image duality ----------------------------------------------------------------

def test_permutation_has_duality():
    C = chain(1)
    D = discrete(3)
    perm = {"0": "1", "1": "2", "2": "0"}
    om = Functor(D, D, perm, {f"id_{k}": f"id_{v}" for k, v in perm.items()})
    assert validate_functor(om).ok
    assert eventual_image_duality_check(om).holds
    assert eventual_image_duality_check(identity_functor(C)).holds


def test_loop_into_fixed_point():
    r = loop_duality(FinSet(("1", "2", "3")), {"1": "2", "2": "3", "3": "3"}.get)
    assert r.holds and r.limit_size == r.colimit_size == 1


def test_loop3_corpus_duality():
    inst = corpus_instance("loop3")
    r = eventual_image_duality_check(inst.omega)
    assert r.holds and r.limit_size == r.colimit_size == 1


def test_duality_refuses_vect():
    with pytest.raises(CategoryError):
        eventual_image_duality_check(corpus_instance("vect-scalar").omega)


@given(st.integers(1, 8), st.data())
@settings(max_examples=200, deadline=None)
def test_loop_duality_sizes_match_cycle_count(n, data):
    xs = tuple(range(n))
    table = data.draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    r = loop_duality(FinSet(xs), table.__getitem__)
    cyc = orbit_oracle(table.__getitem__, xs)
    assert r.holds
    assert r.limit_size == r.colimit_size == len(cyc)


@given(st.sampled_from(SET_SUITE))
@settings(max_examples=12, deadline=None)
def test_duality_agrees_with_phi_verdict(inst):
    d = eventual_image_duality_check(inst.omega)
    p = check_proposition_equivalence(inst.wp)
    assert d.holds == p.phi_is_equivalence


def test_no_finite_duality_failure_among_small_endofunctors():
    # Omega permutes its eventual images, so finite examples always satisfy the duality
    for inst in SET_SUITE[:60]:
        assert eventual_image_duality_check(inst.omega).holds, inst.name


# -- universal property of S --------------------------------------------------------------------

def test_chain3_to_terminal_is_unique():
    C, T = chain(3), chain(1)
    om = monotone_functor(C, {"0": "1", "1": "2", "2": "2"})
    F = Functor(C, T, {x: "0" for x in C.objects}, {m: "id_0" for m in C.labels})
    h = verify_heller_universal(om, T, identity_functor(T), F)
    assert h.ok and h.unique and h.competitors == 1


def test_monoid_to_itself_is_unique():
    M = idempotent_monoid()
    I = identity_functor(M)
    h = verify_heller_universal(I, M, I, I)
    assert h.ok and h.unique


def test_self_case_is_identity_and_uniqueness_is_refused():
    C = chain(3)
    om = monotone_functor(C, {"0": "1", "1": "2", "2": "2"})
    S = stable_category(om, 1)
    P = S.materialise()
    D = P.category
    h = verify_heller_universal(om, D, P.functor(S.omega_functor()), P.universal(), 1)
    assert h.report.ok and h.refused and h.unique is None
    assert find_natural_iso(h.factor, identity_functor(D), D.objects) is not None


def test_non_intertwining_functor_is_reported():
    C, T = chain(3), chain(2)
    om = monotone_functor(C, {"0": "1", "1": "2", "2": "2"})
    F = Functor(C, T, {"0": "0", "1": "0", "2": "1"}, {m: T.homs[(("0", "0", "1")[int(C.src(m))],
                                                                   ("0", "0", "1")[int(C.dst(m))])][0]
                                                           for m in C.labels})
    h = verify_heller_universal(om, T, identity_functor(T), F)
    assert not h.ok and h.report.violations[0].law == "intertwine"

