import random

from hypothesis import given, settings, strategies as st

from wellpointed.builders import chain, idempotent_monoid, monotone_functor
from wellpointed.core import compose_functors, identity_functor
from wellpointed.corpus import inflationary_maps, random_preorder
from wellpointed.ind import (IndCategory, embed, extend_functor, find_ind_iso, make_ind, sequence_ind, stage_leg,
                             transit, truncated_hom_classes)

from conftest import SHIFT


def random_ind(rng, C, f):
    """The ind-object x -> f x -> f^2 x -> ... on a thin category."""
    x = rng.choice(C.objects)
    return sequence_ind(C, f.__getitem__, lambda y: C.homs[(y, f[y])][0], x)


def naive_colimit_size(C, x, Y, stages=12):
    """Oracle for hom(embed x, Y): distinct images of every C(x, Y_j) pushed to a late stage."""
    out = set()
    for j in range(stages):
        for f in C.homs[(x, Y.level(j))]:
            out.add(C.compose(transit(C, Y, j, stages), f))
    return len(out)


def test_embed_is_constant(chain3):
    X = embed(chain3, "2")
    assert X.levels == ("2",) and X.maps == ("id_2",) and (X.preperiod, X.period) == (0, 1)


def test_embed_fully_faithful(chain3):
    I = IndCategory(chain3)
    for x in chain3.objects:
        for y in chain3.objects:
            h = I.hom(I.embed(x), I.embed(y))
            assert h.size == len(chain3.homs[(x, y)])
            assert {m.rep for m in h} == set(chain3.homs[(x, y)])


def test_embed_fully_faithful_monoid():
    M = idempotent_monoid()
    I = IndCategory(M)
    assert I.hom(I.embed("*"), I.embed("*")).size == 2


def test_stage_legs_form_a_cocone(chain3):
    I = IndCategory(chain3)
    X = sequence_ind(chain3, SHIFT.__getitem__, lambda y: chain3.homs[(y, SHIFT[y])][0], "0")
    for n in range(5):
        step = I.from_stage(I.embed(X.level(n)), I.embed(X.level(n + 1)), 0, 0, X.transition(n))
        assert I.compose(stage_leg(I, X, n + 1), step) == stage_leg(I, X, n)


def test_sequential_colimit_is_the_ind_object(chain3):
    # maps out of X are exactly compatible families out of its levels
    I = IndCategory(chain3)
    X = sequence_ind(chain3, SHIFT.__getitem__, lambda y: chain3.homs[(y, SHIFT[y])][0], "0")
    for y in chain3.objects:
        Y = I.embed(y)
        restrict = {tuple(I.compose(r, stage_leg(I, X, n)) for n in range(4)) for r in I.hom(X, Y)}
        assert len(restrict) == I.hom(X, Y).size


def test_point_into_telescope_is_singleton():
    M = idempotent_monoid()
    I = IndCategory(M)
    T = sequence_ind(M, lambda x: x, lambda x: "e", "*")
    assert I.hom(I.embed("*"), T).size == 1 == naive_colimit_size(M, "*", T)


def test_tower_into_constant_matches_truncation(chain3):
    I = IndCategory(chain3)
    X = sequence_ind(chain3, SHIFT.__getitem__, lambda y: chain3.homs[(y, SHIFT[y])][0], "0")
    for y in chain3.objects:
        got = I.hom(X, I.embed(y)).size
        assert got == truncated_hom_classes(chain3, X, I.embed(y), stages=6, at=3)
        assert got == len(chain3.homs[("2", y)])


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_hom_from_embedded_is_sequential_colimit(seed):
    rng = random.Random(seed)
    C = random_preorder(rng, rng.randint(1, 4))
    f = rng.choice(list(inflationary_maps(C)))
    I = IndCategory(C)
    Y = random_ind(rng, C, f)
    for x in C.objects:
        assert I.hom(I.embed(x), Y).size == naive_colimit_size(C, x, Y)


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_hom_matches_truncation(seed):
    rng = random.Random(seed)
    C = random_preorder(rng, rng.randint(1, 4))
    maps = list(inflationary_maps(C))
    I = IndCategory(C)
    X, Y = random_ind(rng, C, rng.choice(maps)), random_ind(rng, C, rng.choice(maps))
    assert I.hom(X, Y).size == truncated_hom_classes(C, X, Y, stages=12, at=6)


def test_extend_identity_and_shift(chain3):
    X = sequence_ind(chain3, SHIFT.__getitem__, lambda y: chain3.homs[(y, SHIFT[y])][0], "0")
    assert extend_functor(identity_functor(chain3), X) == X
    assert extend_functor(monotone_functor(chain3, SHIFT), embed(chain3, "0")) == embed(chain3, "1")


@given(st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_hat_functoriality(seed):
    rng = random.Random(seed)
    C = random_preorder(rng, rng.randint(1, 4))
    maps = list(inflationary_maps(C))
    F = monotone_functor(C, rng.choice(maps))
    G = monotone_functor(C, rng.choice(maps))
    X = random_ind(rng, C, rng.choice(maps))
    GF = compose_functors(F, G)
    assert extend_functor(GF, X) == extend_functor(G, extend_functor(F, X))


def monoid_telescope(M, word):
    """* -> * -> ... with transitions cycling through ``word``."""
    return make_ind(M, ["*"] * len(word), list(word), 0, len(word))


@given(st.lists(st.sampled_from("1e"), min_size=1, max_size=3), st.lists(st.sampled_from("1e"), min_size=1, max_size=3),
       st.lists(st.sampled_from("1e"), min_size=1, max_size=3), st.integers(0, 10 ** 6))
@settings(max_examples=60, deadline=None)
def test_composition_associative(w1, w2, w3, seed):
    rng = random.Random(seed)
    M = idempotent_monoid()
    I = IndCategory(M)
    A, B, C, D = (monoid_telescope(M, w) for w in (w1, w2, w3, w1 + w3))
    hs = [list(I.hom(A, B)), list(I.hom(B, C)), list(I.hom(C, D))]
    if not all(hs):
        return
    f, g, h = (rng.choice(x) for x in hs)
    assert I.compose(h, I.compose(g, f)) == I.compose(I.compose(h, g), f)
    assert I.compose(I.identity(B), f) == f == I.compose(f, I.identity(A))


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_extension_preserves_isomorphisms(seed):
    rng = random.Random(seed)
    C = random_preorder(rng, rng.randint(1, 4))
    maps = list(inflationary_maps(C))
    I = IndCategory(C)
    X, Y = random_ind(rng, C, rng.choice(maps)), random_ind(rng, C, rng.choice(maps))
    F = monotone_functor(C, rng.choice(maps))
    if find_ind_iso(I, X, Y) is not None:
        assert find_ind_iso(I, extend_functor(F, X), extend_functor(F, Y)) is not None


def test_chain4_tower_reaches_top():
    C = chain(4)
    step = {"0": "1", "1": "2", "2": "3", "3": "3"}
    X = sequence_ind(C, step.__getitem__, lambda y: C.homs[(y, step[y])][0], "0")
    I = IndCategory(C)
    assert find_ind_iso(I, X, I.embed("3")) is not None
