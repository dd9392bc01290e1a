import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from wellpointed import linalg
from wellpointed.builders import chain, idempotent_monoid, monotone_functor, preorder
from wellpointed.core import Functor, identity_functor
from wellpointed.hom import FinSet, FinVec, same_carrier
from wellpointed.periodic import (EPSequence, EventualImage, SequenceError, constant_loop_sequence,
                                  constant_loop_tower, detect_orbit, find_cycle, sequential_colimit, sequential_limit,
                                  stage_index)

from conftest import SHIFT


def plain_space(n):
    return FinVec(tuple(linalg.unit(n, i) for i in range(n)), n, lambda v: tuple(v), lambda c: tuple(c))


def stable_image(elems, g):
    """Oracle: the image of g^|X|."""
    out = set(elems)
    for _ in range(len(elems)):
        out = {g(x) for x in out}
    return out


loops = st.integers(1, 6).flatmap(lambda n: st.lists(st.integers(0, n - 1), min_size=n, max_size=n))


def test_detect_orbit_chain3(chain3):
    r = detect_orbit(monotone_functor(chain3, SHIFT), "0")
    assert (r.preperiod, r.period) == (2, 1) and r.morphisms_close


def test_detect_orbit_identity(chain3):
    for x in chain3.objects:
        r = detect_orbit(identity_functor(chain3), x)
        assert (r.preperiod, r.period) == (0, 1)


def test_detect_orbit_swap():
    D = preorder(["a", "b"], lambda x, y: x == y)
    swap = Functor(D, D, {"a": "b", "b": "a"}, {"id_a": "id_b", "id_b": "id_a"})
    r = detect_orbit(swap, "a")
    assert (r.preperiod, r.period) == (0, 2)


def test_detect_orbit_sees_morphism_level_loop():
    M = idempotent_monoid()
    # identity on objects but swapping nothing: pair orbit closes at once
    r = detect_orbit(identity_functor(M), "*")
    assert (r.pair_preperiod, r.pair_period) == (0, 1)


@given(st.integers(0, 30), st.integers(0, 5), st.integers(1, 5))
def test_stage_index_semantics(n, q, p):
    i = stage_index(n, q, p)
    assert i == min(n, q + (n - q) % p) if n >= q else i == n
    assert 0 <= i < q + p


@given(st.lists(st.integers(0, 7), min_size=8, max_size=8), st.integers(0, 7))
def test_find_cycle_matches_naive(table, x0):
    q, p = find_cycle(lambda x: table[x], x0)
    seen, x, n = {}, x0, 0
    while x not in seen:
        seen[x] = n
        x, n = table[x], n + 1
    assert (q, p) == (seen[x], n - seen[x])


def test_constant_identity_sequence():
    X = FinSet(("a", "b"))
    c = sequential_colimit(constant_loop_sequence(X, lambda x: x))
    assert same_carrier(c.carrier, X)


def test_colimit_of_planted_loop():
    X = FinSet((1, 2, 3))
    g = {1: 2, 2: 3, 3: 3}.get
    assert c_elements(sequential_colimit(constant_loop_sequence(X, g))) == {3}


def c_elements(c):
    return set(c.carrier.elements)


def test_monoid_telescope_collapses():
    M = idempotent_monoid()
    X = FinSet(M.homs[("*", "*")])
    c = sequential_colimit(constant_loop_sequence(X, lambda f: M.compose("e", f)))
    assert c.carrier.size == 1
    assert c.leg(0, "1") == c.leg(0, "e")


def test_constant_tower_identity():
    X = FinSet(("a", "b"))
    assert same_carrier(sequential_limit(constant_loop_tower(X, lambda x: x)).carrier, X)


def test_limit_of_planted_loop_equals_colimit():
    X = FinSet((1, 2, 3))
    g = {1: 2, 2: 3, 3: 3}.get
    lim = sequential_limit(constant_loop_tower(X, g))
    col = sequential_colimit(constant_loop_sequence(X, g))
    assert set(lim.carrier.elements) == {3} and same_carrier(lim.carrier, col.carrier)


def test_projection_limit_is_one_dimensional():
    V = plain_space(2)
    P = ((Fraction(1), Fraction(0)), (Fraction(0), Fraction(0)))
    lim = sequential_limit(constant_loop_tower(V, lambda v: linalg.matvec(P, v)))
    assert lim.carrier.dim == 1


def test_mismatched_sequence_refused():
    X, Y = FinSet((1, 2)), FinSet(("a",))
    seq = EPSequence([X, Y], [lambda x: "zzz", lambda y: "a"], 1, 1)
    with pytest.raises(SequenceError):
        sequential_colimit(seq)


def test_bad_presentation_refused():
    with pytest.raises(SequenceError):
        EPSequence([FinSet((1,))], [lambda x: x], 0, 0)


@given(loops)
@settings(max_examples=200)
def test_eventual_image_against_oracle(table):
    X = FinSet(tuple(range(len(table))))
    g = table.__getitem__
    E = EventualImage(X, g)
    assert set(E.image.elements) == stable_image(X.elements, g)
    assert E.index <= X.size
    assert all(E.h_inv(E.h(e)) == e for e in E.image.elements)


@given(loops)
@settings(max_examples=200)
def test_limit_and_colimit_carriers_agree(table):
    X = FinSet(tuple(range(len(table))))
    g = table.__getitem__
    col = sequential_colimit(constant_loop_sequence(X, g))
    lim = sequential_limit(constant_loop_tower(X, g))
    assert same_carrier(col.carrier, lim.carrier)


@given(loops, st.integers(0, 4))
@settings(max_examples=100)
def test_cocone_laws(table, n):
    X = FinSet(tuple(range(len(table))))
    g = table.__getitem__
    col = sequential_colimit(constant_loop_sequence(X, g))
    assert all(col.leg(n + 1, g(x)) == col.leg(n, x) for x in X)


@given(loops, st.integers(0, 4))
@settings(max_examples=100)
def test_cone_laws(table, n):
    X = FinSet(tuple(range(len(table))))
    g = table.__getitem__
    lim = sequential_limit(constant_loop_tower(X, g))
    assert all(g(lim.leg(n + 1, e)) == lim.leg(n, e) for e in lim.carrier)


@given(loops)
@settings(max_examples=60, deadline=None)
def test_colimit_universal_by_brute_force(table):
    """Every cocone into a two-element set factors uniquely through the colimit."""
    X = tuple(range(len(table)))
    g = table.__getitem__
    col = sequential_colimit(constant_loop_sequence(FinSet(X), g))
    E = col.carrier.elements
    for c in itertools.product((0, 1), repeat=len(X)):
        if any(c[g(x)] != c[x] for x in X):
            continue
        factors = [u for u in itertools.product((0, 1), repeat=len(E))
                   if all(u[E.index(col.leg(0, x))] == c[x] for x in X)]
        assert len(factors) == 1


@given(loops)
@settings(max_examples=60, deadline=None)
def test_limit_universal_by_brute_force(table):
    """Every cone from a two-element set factors uniquely through the limit."""
    X = tuple(range(len(table)))
    g = table.__getitem__
    lim = sequential_limit(constant_loop_tower(FinSet(X), g))
    E = lim.carrier.elements
    for d in itertools.product(X, repeat=2):
        # a cone is a compatible family d_n with g d_(n+1) = d_n; lift it through g-preimages
        families = cone_families(X, g, d)
        for fam in families:
            hits = [u for u in itertools.product(E, repeat=2) if all(lim.leg(0, u[t]) == fam[t] for t in (0, 1))]
            assert len(hits) == 1


def cone_families(X, g, d):
    """Stage-0 values of cones from {0, 1}: each must have an infinite backward g-orbit."""
    infinite = stable_image(X, g)
    return [d] if all(x in infinite for x in d) else []


@given(st.integers(1, 4), st.data())
@settings(max_examples=60, deadline=None)
def test_linear_eventual_image_rank(n, data):
    entries = data.draw(st.lists(st.integers(-2, 2), min_size=n * n, max_size=n * n))
    G = tuple(tuple(Fraction(entries[i * n + j]) for j in range(n)) for i in range(n))
    E = EventualImage(plain_space(n), lambda v: linalg.matvec(G, v))
    A = np.array(entries, dtype=float).reshape(n, n)
    assert E.image.dim == np.linalg.matrix_rank(np.linalg.matrix_power(A, n))
    assert E.index <= n


def test_chain_iteration_periodic_past_preperiod():
    C = chain(4)
    om = monotone_functor(C, {"0": "1", "1": "2", "2": "3", "3": "3"})
    r = detect_orbit(om, "0")
    pts = [r.object_orbit[k] for k in range(8)]
    assert pts == ["0", "1", "2", "3", "3", "3", "3", "3"]
