"""Sequential ind-objects over a finite category.

An ind-object is an eventually periodic sequence ``X_0 -> X_1 -> ...`` of
objects and transition morphisms. Morphisms are computed with the formula
``hom(X, Y) = lim_i colim_j C(X_i, Y_j)``. Both the colimit and the limit
reduce to eventual images inside the single hom-object ``C(X_q, Y_q')`` at
the two preperiod stages, so an ind-morphism is stored as one morphism of
``C``: its canonical representative ``X_q -> Y_q'``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import ceil
from typing import Any, Iterable, Optional, Sequence

from .core import CategoryError, FiniteCategory, Functor, find_iso
from .hom import FinSet, FinVec
from .periodic import EventualImage, find_cycle, minimal_presentation, stage_index


@dataclass(frozen=True)
class IndObject:
    """Levels ``X_n`` and transitions ``X_n -> X_(n+1)``, stored over q + p stages."""

    levels: tuple
    maps: tuple
    preperiod: int
    period: int

    def index(self, n: int) -> int:
        return stage_index(n, self.preperiod, self.period)

    def level(self, n: int):
        return self.levels[self.index(n)]

    def transition(self, n: int):
        return self.maps[self.index(n)]

    @property
    def length(self) -> int:
        return self.preperiod + self.period

    def __repr__(self):
        head = ", ".join(map(str, self.levels[: self.preperiod]))
        loop = ", ".join(map(str, self.levels[self.preperiod:]))
        return f"Ind({head + '; ' if head else ''}({loop})*)"


def make_ind(cat, levels: Sequence, maps: Sequence, preperiod: int, period: int) -> IndObject:
    """Validated ind-object in its minimal presentation."""
    n = preperiod + period
    if period < 1 or len(levels) != n or len(maps) != n:
        raise CategoryError("an ind-object needs q + p levels and transitions with p >= 1")
    for i, t in enumerate(maps):
        j = i + 1 if i + 1 < n else preperiod
        if (cat.src(t), cat.dst(t)) != (levels[i], levels[j]):
            raise CategoryError(f"transition {i} is not a morphism {levels[i]!r} -> {levels[j]!r}")
    pairs = list(zip(levels, maps))
    q, p = minimal_presentation(pairs, preperiod, period)
    stages = [pairs[stage_index(k, preperiod, period)] for k in range(q + p)]
    return IndObject(tuple(s[0] for s in stages), tuple(s[1] for s in stages), q, p)


def embed(cat, x) -> IndObject:
    return IndObject((x,), (cat.identity(x),), 0, 1)


def sequence_ind(cat, step_object, step_map, x0) -> IndObject:
    """Ind-object x0 -> s(x0) -> ... whose transition at x is ``step_map(x)``.

    The sequence is determined by its current object, so its orbit is the ep
    presentation.
    """
    q, p = find_cycle(step_object, x0)
    levels = [x0]
    for _ in range(q + p - 1):
        levels.append(step_object(levels[-1]))
    return make_ind(cat, levels, [step_map(x) for x in levels], q, p)


def transit(cat, X: IndObject, a: int, b: int):
    """Composite transition ``X_a -> X_b`` for a <= b."""
    f = cat.identity(X.level(a))
    for n in range(a, b):
        f = cat.compose(X.transition(n), f)
    return f


def extend_functor(F, X: IndObject) -> IndObject:
    """Levelwise image of X under F, re-presented minimally."""
    return make_ind(F.dst, [F.obj(x) for x in X.levels], [F.mor(t) for t in X.maps], X.preperiod, X.period)


@dataclass(frozen=True)
class IndMorphism:
    src: IndObject
    dst: IndObject
    rep: Any

    def __repr__(self):
        return f"[{self.rep!r}]"


class _PairData:
    """Eventual images for one pair (X, Y): colimit in j, then limit in i."""

    def __init__(self, cat, X: IndObject, Y: IndObject):
        a, b = X.level(X.preperiod), Y.level(Y.preperiod)
        self.base = cat.hom(a, b)
        TY = transit(cat, Y, Y.preperiod, Y.preperiod + Y.period)
        TX = transit(cat, X, X.preperiod, X.preperiod + X.period)
        self.col = EventualImage(self.base, lambda f: cat.compose(TY, f))
        self.lim = EventualImage(self.col.image, lambda e: cat.compose(e, TX))


class IndCategory:
    """The ind-completion of a finite category, on a chosen list of objects.

    ``objects`` only matters to algorithms that iterate over objects; hom and
    composition work for any pair of ind-objects over ``base``.
    """

    def __init__(self, base: FiniteCategory, objects: Iterable[IndObject] = (), name: Optional[str] = None):
        self.base = base
        self.enrichment = base.enrichment
        self.objects = tuple(objects)
        self.name = name or (f"Ind({base.name})" if base.name else None)
        self._pairs = {}
        self._homs = {}

    def with_objects(self, objects: Iterable[IndObject]) -> "IndCategory":
        out = IndCategory(self.base, objects, self.name)
        out._pairs, out._homs = self._pairs, self._homs
        return out

    def embed(self, x) -> IndObject:
        return embed(self.base, x)

    def pair(self, X: IndObject, Y: IndObject) -> _PairData:
        key = (X, Y)
        d = self._pairs.get(key)
        if d is None:
            d = self._pairs[key] = _PairData(self.base, X, Y)
        return d

    # -- representatives --------------------------------------------------
    def colim_normalise(self, X: IndObject, Y: IndObject, f, b: int):
        """Canonical representative of the class of ``f: X_q -> Y_b`` in colim_j C(X_q, Y_j)."""
        C = self.base
        q, p = Y.preperiod, Y.period
        if b < q:
            f, k = C.compose(transit(C, Y, b, q), f), 0
        else:
            k, r = divmod(b - q, p)
            if r:
                k += 1
                f = C.compose(transit(C, Y, b, q + k * p), f)
        return self.pair(X, Y).col.normalise(f, k)

    def from_stage(self, X: IndObject, Y: IndObject, a: int, b: int, f) -> IndMorphism:
        """The ind-morphism whose stage-a component is the class of ``f: X_a -> Y_b``."""
        if a < X.preperiod:
            raise CategoryError(f"stage {a} lies before the preperiod {X.preperiod}; the component does not determine the morphism")
        C = self.base
        g = C.compose(f, transit(C, X, X.preperiod, a))
        rep = self.colim_normalise(X, Y, g, b)
        if rep not in self.pair(X, Y).lim.image:
            raise CategoryError("the given component is not part of a compatible family")
        return IndMorphism(X, Y, rep)

    def component(self, m: IndMorphism, a: int):
        """A representative ``X_a -> Y_q`` of the stage-a component of m."""
        C = self.base
        X = m.src
        q, p = X.preperiod, X.period
        if a <= q:
            return C.compose(m.rep, transit(C, X, a, q))
        k = ceil((a - q) / p)
        top = self.pair(X, m.dst).lim.h_inv(m.rep, k)
        return C.compose(top, transit(C, X, a, q + k * p))

    # -- category protocol -------------------------------------------------
    def hom(self, X: IndObject, Y: IndObject):
        key = (X, Y)
        h = self._homs.get(key)
        if h is not None:
            return h
        image = self.pair(X, Y).lim.image
        if isinstance(image, FinSet):
            h = FinSet(tuple(IndMorphism(X, Y, r) for r in image))
        else:
            base = image
            h = FinVec(tuple(IndMorphism(X, Y, r) for r in image.basis), base.ambient,
                       lambda m, base=base: base.coords(m.rep),
                       lambda c, base=base, X=X, Y=Y: IndMorphism(X, Y, base.build(c)))
        self._homs[key] = h
        return h

    def identity(self, X: IndObject) -> IndMorphism:
        return IndMorphism(X, X, self.colim_normalise(X, X, self.base.identity(X.level(X.preperiod)), X.preperiod))

    def compose(self, s: IndMorphism, r: IndMorphism) -> IndMorphism:
        if r.dst != s.src:
            raise CategoryError("ind-morphisms are not composable")
        X, Z = r.src, s.dst
        return IndMorphism(X, Z, self.colim_normalise(X, Z, self.base.compose(s.rep, r.rep), Z.preperiod))

    def src(self, m: IndMorphism) -> IndObject:
        return m.src

    def dst(self, m: IndMorphism) -> IndObject:
        return m.dst


def ind_hom(cat: IndCategory, X: IndObject, Y: IndObject):
    return cat.hom(X, Y)


def stage_leg(cat: IndCategory, X: IndObject, n: int) -> IndMorphism:
    """Colimit leg ``embed(X_n) -> X``."""
    E = cat.embed(X.level(n))
    return cat.from_stage(E, X, 0, n, cat.base.identity(X.level(n)))


class HatFunctor:
    """Extension of a functor C -> D to ind-objects."""

    def __init__(self, F: Functor, src: IndCategory, dst: Optional[IndCategory] = None):
        self.base = F
        self.src = src
        self.dst = dst if dst is not None else (src if F.dst is F.src else IndCategory(F.dst))
        self.name = F.name
        self._objects = {}

    def obj(self, X: IndObject) -> IndObject:
        Y = self._objects.get(X)
        if Y is None:
            Y = self._objects[X] = extend_functor(self.base, X)
        return Y

    def mor(self, m: IndMorphism) -> IndMorphism:
        FX, FY = self.obj(m.src), self.obj(m.dst)
        a = max(m.src.preperiod, FX.preperiod)
        f = self.src.component(m, a)
        return self.dst.from_stage(FX, FY, a, m.dst.preperiod, self.base.mor(f))

    __call__ = mor


def find_ind_iso(cat: IndCategory, X: IndObject, Y: IndObject, seed: int = 0) -> Optional[IndMorphism]:
    """Two-sided inverse search inside the finite ind-hom carriers."""
    return find_iso(cat, X, Y, seed)


def truncated_hom_classes(C: FiniteCategory, X: IndObject, Y: IndObject, stages: int, at: int) -> int:
    """Size of lim_i colim_j C(X_i, Y_j) estimated from the first ``stages`` stages (set mode).

    A slow, independent cross-check. Colimit classes are compared after pushing
    to the last stage; the limit is read off as the image of the top stage in
    stage ``at``. Correct once ``at`` is past the preperiod of X and both gaps are
    longer than the stabilisation of the hom-sets involved.
    """
    if C.enrichment != "set":
        raise CategoryError("truncation count is set-mode only")
    last = stages - 1

    def push(f, j):
        for n in range(j, last):
            f = C.compose(Y.transition(n), f)
        return f

    top = {push(f, j) for j in range(stages) for f in C.homs[(X.level(last), Y.level(j))]}
    down = transit(C, X, at, last)
    return len({C.compose(c, down) for c in top})
