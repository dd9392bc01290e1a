import random

import pytest
from hypothesis import given, settings, strategies as st

from wellpointed.builders import chain, disjoint_union, idempotent_monoid, monoid, monotone_functor
from wellpointed.core import CategoryError, Functor, NatTransformation, find_left_adjoint, identity_functor
from wellpointed.corpus import corpus_instance
from wellpointed.ind import IndCategory, find_ind_iso, transit
from wellpointed.localise import WellPointedEndo, omega_infinity
from math import lcm
from wellpointed.spectra import (ColimitRefused, SpectrumCategory, check_sp_morphism, classical_spectrification,
                                 free_loop, is_omega_spectrum, join_oracle, make_spectrum, representable_oracle,
                                 sigma_infinity, sigma_infinity_morphism, sp_morphism, spectrify, spectrify_morphism,
                                 spectrum_endofunctors, theta_embedding, theta_morphism, Shift)

from conftest import SHIFT


def naive_spectra_hom(K, omega, X, Y):
    """Oracle: stage-q components reachable from a far stage by restriction (Y an Omega-spectrum)."""
    q, p = max(X.preperiod, Y.preperiod), lcm(X.period, Y.period)
    inv = {}
    for n in range(q + p):
        s = Y.sigma(n)
        inv[n] = next(t for t in K.hom(K.dst(s), K.src(s)) if K.compose(t, s) == K.identity(K.src(s)))
    top = q + p * (len(K.labels) + 2)
    current = set(K.hom(X.level(top), Y.level(top)))
    for n in range(top - 1, q - 1, -1):
        i = n if n < q else q + (n - q) % p
        current = {K.compose(inv[i], K.compose(omega.mor(f), X.sigma(n))) for f in current}
    return len(current)


def left_zero_monoid():
    """{1, a, b} with x y = x for x != 1."""
    return monoid(["1", "a", "b"], "1", lambda g, f: f if g == "1" else g, name="LZ")


def swap_pair():
    """Two copies of M = {1, e} exchanged by Omega."""
    M = idempotent_monoid()
    U = disjoint_union([M, M])
    a, b = U.objects
    om = Functor(U, U, {a: b, b: a}, {"0.1": "1.1", "0.e": "1.e", "1.1": "0.1", "1.e": "0.e"})
    X = make_spectrum(U, om, [a, b], ["0.1", "1.1"], 0, 2)
    return U, om, X


def test_identity_case_sigma_is_structure_map(monoid_wp):
    M = monoid_wp.category
    X = theta_embedding(monoid_wp, "*")
    cat = SpectrumCategory(M, monoid_wp.omega, [X])
    end = spectrum_endofunctors(cat, [X])
    assert end.shift.obj(X) == X
    assert end.sigma(X).comps == X.sigmas and end.certificate.ok


def test_endofunctor_certificate_chain3(chain3_wp):
    C = chain3_wp.category
    spectra = {x: theta_embedding(chain3_wp, x) for x in C.objects}
    cat = SpectrumCategory(C, chain3_wp.omega, list(spectra.values()))
    maps = [theta_morphism(spectra[C.src(u)], spectra[C.dst(u)], u) for u in C.labels]
    assert all(check_sp_morphism(C, chain3_wp.omega, f).ok for f in maps)
    assert spectrum_endofunctors(cat, list(spectra.values()), maps).certificate.ok


def test_planted_sigma_fails_naturality():
    L = left_zero_monoid()
    om = identity_functor(L)
    wp = WellPointedEndo(om, NatTransformation(om, om, {"*": "1"}))
    X = theta_embedding(wp, "*")
    cat = SpectrumCategory(L, om, [X])
    f = theta_morphism(X, X, "b")
    planted = lambda S: sp_morphism(S, S, lambda n: "a", 0, 1)
    cert = spectrum_endofunctors(cat, [X], [f], sigma=planted).certificate
    assert not cert.ok and any(v.law == "naturality" for v in cert.violations)


def test_hom_constant_on_fixed_object(chain3):
    om = identity_functor(chain3)
    wp = WellPointedEndo(om, NatTransformation(om, om, {x: chain3.identity(x) for x in chain3.objects}))
    cat = SpectrumCategory(chain3, om)
    for x in chain3.objects:
        X = theta_embedding(wp, x)
        assert cat.hom(X, X).size == len(chain3.homs[(x, x)])


def test_hom_identity_point_on_monoid():
    M = idempotent_monoid()
    om = identity_functor(M)
    wp = WellPointedEndo(om, NatTransformation(om, om, {"*": "1"}))
    X = theta_embedding(wp, "*")
    assert SpectrumCategory(M, om).hom(X, X).size == 2


def test_hom_theta0_to_theta2(chain3_wp):
    cat = SpectrumCategory(chain3_wp.category, chain3_wp.omega)
    X, Y = theta_embedding(chain3_wp, "0"), theta_embedding(chain3_wp, "2")
    assert cat.hom(X, Y).size == 1 == naive_spectra_hom(chain3_wp.category, chain3_wp.omega, X, Y)


def test_hom_into_non_omega_spectrum_refused(chain3_wp):
    cat = SpectrumCategory(chain3_wp.category, chain3_wp.omega)
    X = theta_embedding(chain3_wp, "0")
    with pytest.raises(CategoryError):
        cat.hom(X, X)


def test_hom_after_shift_by_reindexing():
    U, om, X = swap_pair()
    cat = SpectrumCategory(U, om, [X])
    S = Shift(cat)
    SX = S.obj(X)
    assert SX.levels == (X.level(1), X.level(2))
    assert cat.hom(SX, SX).size == cat.hom(X, X).size == naive_spectra_hom(U, om, X, X) == 2
    assert cat.hom(X, SX).size == 0 == naive_spectra_hom(U, om, X, SX)
    f = next(iter(cat.hom(X, X)))
    assert S.mor(f).component(0) == f.component(1)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_hom_matches_naive_on_monoid_spectra(seed):
    rng = random.Random(seed)
    U, om, X = swap_pair()
    # a second Omega-spectrum: sigma components may be 1 only (the only units), levels shifted
    Y = make_spectrum(U, om, [X.level(1), X.level(0)], ["1.1", "0.1"], 0, 2)
    src = rng.choice([X, Y])
    dst = rng.choice([X, Y])
    assert SpectrumCategory(U, om).hom(src, dst).size == naive_spectra_hom(U, om, src, dst)


def test_spectrify_omega_spectrum_is_itself():
    U, om, X = swap_pair()
    Xs, I, _ = spectrify(om, X)
    assert is_omega_spectrum(I, Xs)
    for n in range(4):
        assert find_ind_iso(I, Xs.level(n), I.embed(X.level(n))) is not None


def test_spectrify_theta0_is_constant_on_localisation(chain3_wp):
    Xs, I, _ = spectrify(chain3_wp.omega, theta_embedding(chain3_wp, "0"))
    assert is_omega_spectrum(I, Xs)
    for n in range(5):
        assert find_ind_iso(I, Xs.level(n), I.embed("2")) is not None


def test_spectrify_monoid_gives_telescope(monoid_wp):
    Xs, I, _ = spectrify(monoid_wp.omega, theta_embedding(monoid_wp, "*"))
    T = omega_infinity(monoid_wp, "*")
    assert is_omega_spectrum(I, Xs)
    assert find_ind_iso(I, Xs.level(0), T) is not None
    assert find_ind_iso(I, Xs.level(0), I.embed("*")) is None


def naive_level_size(omega, X, n, c, stages=10):
    """Oracle for hom(embed c, (spectrify X)_n): push C(c, Omega^k X_(n+k)) well past its stage."""
    C = omega.src
    levels, maps = [], []
    F = identity_functor(C)
    for k in range(stages + 1):
        levels.append(F.obj(X.level(n + k)))
        maps.append(F.mor(X.sigma(n + k)))
        F = F.then(omega)
    out = set()
    for k in range(stages // 2 + 1):
        for f in C.homs[(c, levels[k])]:
            for j in range(k, stages):
                f = C.compose(maps[j], f)
            out.add(f)
    return len(out)


@pytest.mark.parametrize("name", ["chain3", "monoid-e", "collapse2"])
def test_level_formula_against_naive_colimit(name):
    wp = corpus_instance(name).wp
    C = wp.category
    for x in C.objects:
        X = theta_embedding(wp, x)
        Xs, I, _ = spectrify(wp.omega, X)
        for n in range(3):
            for c in C.objects:
                assert I.hom(I.embed(c), Xs.level(n)).size == naive_level_size(wp.omega, X, n, c)


def test_spectrify_output_is_omega_spectrum(corpus_wp):
    for x in corpus_wp.category.objects:
        Xs, I, _ = spectrify(corpus_wp.omega, theta_embedding(corpus_wp, x))
        assert is_omega_spectrum(I, Xs)


def test_classical_spectrification_with_joins(chain3_wp):
    C = chain3_wp.category
    out = classical_spectrification(chain3_wp.omega, theta_embedding(chain3_wp, "0"), join_oracle(C))
    assert set(out.levels) == {"2"} and is_omega_spectrum(C, out)


def test_classical_spectrification_of_omega_spectrum():
    U, om, X = swap_pair()
    out = classical_spectrification(om, X, representable_oracle(IndCategory(U)))
    assert out.levels == X.levels


def test_classical_spectrification_refusals(monoid_wp):
    X = theta_embedding(monoid_wp, "*")
    with pytest.raises(ColimitRefused):
        classical_spectrification(monoid_wp.omega, X, None)
    with pytest.raises(ColimitRefused):
        classical_spectrification(monoid_wp.omega, X, representable_oracle(IndCategory(monoid_wp.category)))


def test_theta_embedding_identity_case(chain3):
    om = identity_functor(chain3)
    wp = WellPointedEndo(om, NatTransformation(om, om, {x: chain3.identity(x) for x in chain3.objects}))
    assert all(is_omega_spectrum(chain3, theta_embedding(wp, x)) for x in chain3.objects)


def test_theta_embedding_levels(chain3_wp, monoid_wp):
    X = theta_embedding(chain3_wp, "1")
    assert X.levels == ("1",) and X.sigmas == ("1<2",)
    assert theta_embedding(monoid_wp, "*").sigmas == ("e",)


def test_free_loop_examples(chain3):
    adj = find_left_adjoint(monotone_functor(chain3, SHIFT))
    I = IndCategory(chain3)
    assert find_ind_iso(I, free_loop(adj, "2"), I.embed("2")) is not None
    F0 = free_loop(adj, "0")
    assert F0.level(0) == "0" and F0.level(1) == "1"
    ident = find_left_adjoint(identity_functor(chain3))
    for x in chain3.objects:
        assert find_ind_iso(I, free_loop(ident, x), I.embed(x)) is not None


def test_sigma_infinity_levels(chain3):
    adj = find_left_adjoint(monotone_functor(chain3, SHIFT))
    X = sigma_infinity(adj, "2")
    assert [X.level(n) for n in range(4)] == ["2", "1", "0", "0"]


@given(st.integers(1, 4), st.data())
@settings(max_examples=30, deadline=None)
def test_spectrify_sigma_infinity_levels_are_free_loops(n, data):
    C = chain(n)
    import itertools
    maps = [f for f in itertools.product(range(n), repeat=n) if all(f[i] <= f[j] for i in range(n) for j in range(i, n))]
    f = data.draw(st.sampled_from(maps))
    om = monotone_functor(C, {str(i): str(v) for i, v in enumerate(f)})
    adj = find_left_adjoint(om)
    if adj is None:
        return
    for x in C.objects:
        Xs, I, _ = spectrify(om, sigma_infinity(adj, x))
        y = x
        for level in range(7):
            assert find_ind_iso(I, Xs.level(level), free_loop(adj, y)) is not None
            y = adj.left.obj(y)


def test_sigma_infinity_naturality_and_functoriality(chain3):
    om = monotone_functor(chain3, SHIFT)
    adj = find_left_adjoint(om)
    spectra = {x: sigma_infinity(adj, x) for x in chain3.objects}
    I = IndCategory(chain3)
    rich = {x: spectrify(om, spectra[x], I)[0] for x in chain3.objects}
    maps = {}
    for u in chain3.labels:
        x, y = chain3.src(u), chain3.dst(u)
        f = sigma_infinity_morphism(adj, u, spectra[x], spectra[y])
        assert check_sp_morphism(chain3, om, f).ok
        maps[u] = spectrify_morphism(om, f, rich[x], rich[y], I)
    cat = SpectrumCategory(I, None)
    for (g, f), h in chain3.table.items():
        lhs = maps[h]
        rhs = cat.compose(maps[g], maps[f])
        assert all(lhs.component(n) == rhs.component(n) for n in range(6))
    for x in chain3.objects:
        idx = maps[chain3.identity(x)]
        assert all(I.compose(idx.component(n), idx.component(n)) == idx.component(n) for n in range(4))
        assert all(idx.component(n) == I.identity(rich[x].level(n)) for n in range(4))


def test_transit_helper_consistency(chain3_wp):
    X = omega_infinity(chain3_wp, "0")
    assert transit(chain3_wp.category, X, 0, 2) == "0<2"
