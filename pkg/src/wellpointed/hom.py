"""Hom-objects in the two shipped enrichments.

``FinSet`` is a finite set of hashable morphism values. ``FinVec`` is a finite
dimensional subspace of some ambient rational coordinate space: it carries a
basis of morphism values together with ``coords`` (value -> ambient coordinate
tuple) and ``build`` (ambient coordinates -> value). Maps between hom-objects
are plain callables on morphism values; linear ones are expected in FinVec mode.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Optional, Sequence

from . import linalg


@dataclass(frozen=True)
class FinSet:
    elements: tuple

    enrichment = "set"

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, x):
        return x in self._members

    @property
    def _members(self) -> frozenset:
        m = self.__dict__.get("_m")
        if m is None:
            m = frozenset(self.elements)
            object.__setattr__(self, "_m", m)
        return m

    @property
    def size(self) -> int:
        return len(self.elements)

    def canonical(self) -> frozenset:
        return self._members


@dataclass(frozen=True, eq=False)
class FinVec:
    basis: tuple
    ambient: int
    coords: Callable[[Any], tuple]
    build: Callable[[tuple], Any]

    enrichment = "vect"

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "_coord", linalg.Coordinates([self.coords(b) for b in self.basis], self.ambient))

    @property
    def dim(self) -> int:
        return len(self.basis)

    size = dim

    def __len__(self):
        return self.dim

    def zero(self):
        return self.build(linalg.zeros(self.ambient))

    def coordinates(self, x) -> tuple:
        c = self._coord.coords(self.coords(x))
        if c is None:
            raise ValueError(f"{x!r} does not lie in this hom-object")
        return c

    def __contains__(self, x):
        try:
            return self._coord.coords(self.coords(x)) is not None
        except (AttributeError, TypeError):
            return False

    def element(self, c: Sequence) -> Any:
        return self.build(self._coord.vector(c))

    def add(self, x, y):
        return self.build(linalg.add(self.coords(x), self.coords(y)))

    def scale(self, c, x):
        return self.build(linalg.scale(linalg.frac(c), self.coords(x)))

    def combination(self, coeffs: Sequence, values: Sequence):
        return self.build(linalg.combine([linalg.frac(c) for c in coeffs], [self.coords(v) for v in values], self.ambient))

    def canonical(self) -> tuple:
        """Subspace identity: RREF of the basis in ambient coordinates."""
        return linalg.canonical_basis([self.coords(b) for b in self.basis], self.ambient)

    def sub(self, values: Iterable) -> "FinVec":
        """The subspace spanned by ``values`` (canonical basis)."""
        basis = linalg.canonical_basis([self.coords(v) for v in values], self.ambient)
        return FinVec(tuple(self.build(v) for v in basis), self.ambient, self.coords, self.build)

    def matrix_of(self, f: Callable, target: "FinVec") -> linalg.Matrix:
        """Matrix (target.dim x self.dim) of a linear map into ``target``."""
        cols = [target.coordinates(f(b)) for b in self.basis]
        return tuple(tuple(col[i] for col in cols) for i in range(target.dim))


HomObject = FinSet | FinVec


def same_carrier(a: HomObject, b: HomObject) -> bool:
    """Exact equality of carriers after normalisation."""
    if isinstance(a, FinSet) and isinstance(b, FinSet):
        return a.canonical() == b.canonical()
    if isinstance(a, FinVec) and isinstance(b, FinVec):
        return a.ambient == b.ambient and a.canonical() == b.canonical()
    return False


def map_is_bijective(f: Callable, src: HomObject, dst: HomObject) -> bool:
    """True iff f restricts to a bijection (FinSet) or linear iso (FinVec)."""
    if isinstance(src, FinSet):
        image = [f(x) for x in src]
        return len(set(image)) == len(src) == len(dst) and all(y in dst for y in image)
    if src.dim != dst.dim:
        return False
    m = src.matrix_of(f, dst)
    return linalg.rank(m, src.dim) == src.dim if src.dim else True


def linear_inverse(f: Callable, src: FinVec, dst: FinVec) -> Optional[Callable]:
    m = src.matrix_of(f, dst)
    inv = linalg.inverse(m)
    if inv is None:
        return None
    return lambda y: src.element(linalg.matvec(inv, dst.coordinates(y)))
