import pytest

from wellpointed.builders import chain, idempotent_monoid, monotone_functor, unique_point
from wellpointed.core import NatTransformation, identity_functor
from wellpointed.corpus import corpus_instance
from wellpointed.localise import WellPointedEndo


SHIFT = {"0": "1", "1": "2", "2": "2"}


@pytest.fixture
def chain3():
    return chain(3)


@pytest.fixture
def chain3_wp():
    C = chain(3)
    om = monotone_functor(C, SHIFT, "Om")
    return WellPointedEndo(om, unique_point(C, om))


@pytest.fixture
def monoid_wp():
    M = idempotent_monoid()
    om = identity_functor(M)
    return WellPointedEndo(om, NatTransformation(om, om, {"*": "e"}, "th"))


@pytest.fixture(params=["chain3", "monoid-e", "collapse2", "vect-scalar", "vect-idempotent"])
def corpus_wp(request):
    return corpus_instance(request.param).wp
