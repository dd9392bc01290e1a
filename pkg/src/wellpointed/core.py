"""Finite enriched categories, functors and natural transformations.

Two enrichments are supported. In ``"set"`` mode morphisms are globally unique
string labels and composition is a lookup table. In ``"vect"`` mode every
hom-object is a finite dimensional rational vector space with a basis of unique
labels; morphisms are :class:`Vec` values and composition is the bilinear
extension of a table of structure constants.

Most algorithms here are written against a small duck-typed protocol so they
also run on the derived categories built elsewhere (ind-objects, stabilisation,
spectra)::

    cat.enrichment            "set" | "vect"
    cat.hom(a, b)             FinSet | FinVec
    cat.compose(g, f)         g after f
    cat.identity(a)
    cat.src(f), cat.dst(f)
"""
from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Hashable, Iterable, Iterator, Mapping, Optional, Sequence

from . import linalg
from .hom import FinSet, FinVec, map_is_bijective


class CategoryError(ValueError):
    pass


class EnumerationRefused(CategoryError):
    """Raised when an exhaustive search would exceed the configured limits."""

    def __init__(self, message: str, estimate: Optional[int] = None):
        super().__init__(message if estimate is None else f"{message} (estimated search size {estimate})")
        self.estimate = estimate


@dataclass(frozen=True)
class Vec:
    """A morphism of a linear category: coordinates in the basis of hom(src, dst)."""

    src: Hashable
    dst: Hashable
    coords: tuple

    def __repr__(self):
        return f"Vec({self.src!r}->{self.dst!r}, {[str(c) for c in self.coords]})"


@dataclass
class Violation:
    law: str
    message: str
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"law": self.law, "message": self.message, "witness": {k: _jsonable(v) for k, v in self.witness.items()}}


@dataclass
class Report:
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def add(self, law: str, message: str, **witness):
        self.violations.append(Violation(law, message, witness))

    def as_dict(self) -> dict:
        return {"ok": self.ok, "violations": [v.as_dict() for v in self.violations]}


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, Vec):
        return {"src": _jsonable(v.src), "dst": _jsonable(v.dst), "coords": [str(c) for c in v.coords]}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    return str(v)


class FiniteCategory:
    """A finite category enriched in FinSet or FinVec.

    Parameters
    ----------
    objects : sequence of hashable
    homs : mapping (a, b) -> tuple of labels
        Elements (set mode) or basis labels (vect mode). Missing pairs are empty.
    table : mapping (g, f) -> value
        ``g o f`` for composable labels. In vect mode the value is the coordinate
        tuple of the composite in the basis of the target hom.
    identities : mapping object -> label (set) or coordinate tuple (vect)
    """

    def __init__(self, objects: Sequence, homs: Mapping, table: Mapping, identities: Mapping,
                 enrichment: str = "set", name: Optional[str] = None):
        if enrichment not in ("set", "vect"):
            raise CategoryError(f"unknown enrichment {enrichment!r}")
        self.enrichment = enrichment
        self.name = name
        self.objects = tuple(objects)
        self.homs = {(a, b): tuple(homs.get((a, b), ())) for a in self.objects for b in self.objects}
        self.table = dict(table)
        self.identities = dict(identities)
        self._src = {}
        self._dst = {}
        self._pos = {}
        for (a, b), labels in self.homs.items():
            for i, m in enumerate(labels):
                # duplicates are reported by validate(); first occurrence wins here
                self._src.setdefault(m, a)
                self._dst.setdefault(m, b)
                self._pos.setdefault(m, i)
        self._hom_cache = {}
        if enrichment == "vect":
            self.identities = {a: linalg.vector(v) for a, v in self.identities.items()}
            self.table = {k: linalg.vector(v) for k, v in self.table.items()}

    # -- structure -------------------------------------------------------
    def __repr__(self):
        return f"FiniteCategory({self.name or '?'}, {self.enrichment}, objects={list(self.objects)}, size={self.size})"

    def __eq__(self, other):
        return isinstance(other, FiniteCategory) and self.data() == other.data()

    def __hash__(self):
        return hash((self.enrichment, self.objects))

    def data(self) -> tuple:
        """Hashable normal form of the category data (names excluded)."""
        return (self.enrichment, self.objects, tuple(sorted(self.homs.items(), key=repr)),
                tuple(sorted(self.table.items(), key=repr)), tuple(sorted(self.identities.items(), key=repr)))

    @property
    def labels(self) -> tuple:
        return tuple(m for a in self.objects for b in self.objects for m in self.homs[(a, b)])

    @property
    def size(self) -> int:
        return len(self.labels)

    def morphisms(self) -> list:
        """All morphisms (set mode) or all basis morphisms (vect mode)."""
        if self.enrichment == "set":
            return list(self.labels)
        return [self.basis_vec(m) for m in self.labels]

    def src(self, f):
        return f.src if isinstance(f, Vec) else self._src[f]

    def dst(self, f):
        return f.dst if isinstance(f, Vec) else self._dst[f]

    def has_object(self, x) -> bool:
        return (x, x) in self.homs

    def basis_vec(self, label) -> Vec:
        a, b = self._src[label], self._dst[label]
        return Vec(a, b, linalg.unit(len(self.homs[(a, b)]), self._pos[label]))

    def hom(self, a, b):
        key = (a, b)
        h = self._hom_cache.get(key)
        if h is None:
            labels = self.homs[key]
            if self.enrichment == "set":
                h = FinSet(labels)
            else:
                n = len(labels)
                h = FinVec(tuple(Vec(a, b, linalg.unit(n, i)) for i in range(n)), n,
                           lambda v: v.coords, lambda c, a=a, b=b: Vec(a, b, tuple(c)))
            self._hom_cache[key] = h
        return h

    def identity(self, a):
        if self.enrichment == "set":
            return self.identities[a]
        return Vec(a, a, self.identities[a])

    def compose(self, g, f):
        """``g o f``."""
        if self.enrichment == "set":
            if self._dst[f] != self._src[g]:
                raise CategoryError(f"cannot compose {g!r} after {f!r}: {self._dst[f]!r} != {self._src[g]!r}")
            return self.table[(g, f)]
        if f.dst != g.src:
            raise CategoryError(f"cannot compose {g!r} after {f!r}")
        a, b, c = f.src, f.dst, g.dst
        gl, fl = self.homs[(b, c)], self.homs[(a, b)]
        n = len(self.homs[(a, c)])
        out = [linalg.ZERO] * n
        for i, gi in enumerate(g.coords):
            if not gi:
                continue
            for j, fj in enumerate(f.coords):
                if not fj:
                    continue
                s = gi * fj
                for k, v in enumerate(self.table[(gl[i], fl[j])]):
                    if v:
                        out[k] += s * v
        return Vec(a, c, tuple(out))

    def vec(self, a, b, coords) -> Vec:
        return Vec(a, b, linalg.vector(coords))


# -- generic helpers over the category protocol ----------------------------

def hom_elements(cat, a, b) -> list:
    h = cat.hom(a, b)
    if isinstance(h, FinSet):
        return list(h)
    return list(h.basis)


def inverse(cat, f) -> Optional[Any]:
    """Two-sided inverse of f, or None."""
    a, b = cat.src(f), cat.dst(f)
    ida, idb = cat.identity(a), cat.identity(b)
    back = cat.hom(b, a)
    if cat.enrichment == "set":
        for g in back:
            if cat.compose(g, f) == ida and cat.compose(f, g) == idb:
                return g
        return None
    end_a = cat.hom(a, a)
    cols = [end_a.coordinates(cat.compose(g, f)) for g in back.basis]
    m = tuple(tuple(col[i] for col in cols) for i in range(end_a.dim))
    c = linalg.solve(m, end_a.coordinates(ida), back.dim)
    if c is None:
        return None
    g = back.element(c)
    if cat.compose(f, g) != idb:
        return None
    return g


def is_iso(cat, f) -> bool:
    return inverse(cat, f) is not None


def _linear_candidates(h: FinVec, rng: random.Random, tries: int = 6) -> Iterator:
    yield from h.basis
    for _ in range(tries):
        yield h.combination([rng.randint(-3, 3) or 1 for _ in h.basis], h.basis)


def candidate_elements(h, seed: int = 0) -> Iterator:
    """All elements of a FinSet; basis vectors and seeded combinations of a FinVec."""
    if isinstance(h, FinSet):
        return iter(h)
    return _linear_candidates(h, random.Random(seed))


def find_iso(cat, a, b, seed: int = 0) -> Optional[Any]:
    """Some isomorphism a -> b, or None.

    Exhaustive in set mode. In vect mode basis vectors and a few seeded random
    combinations are tried; a hit is a certificate, a miss is not a proof.
    """
    h = cat.hom(a, b)
    if isinstance(h, FinSet):
        candidates = iter(h)
    else:
        if h.dim != cat.hom(b, a).dim:
            return None
        candidates = _linear_candidates(h, random.Random(seed))
    for f in candidates:
        if is_iso(cat, f):
            return f
    return None


def present(cat, objects: Sequence, set_label: Callable[[Any], str], vect_label: Callable[[Any, Any, int], str],
            name: Optional[str] = None) -> tuple["FiniteCategory", dict, dict]:
    """Finite presentation of a protocol category on ``objects``.

    Returns the category, the map label -> morphism and, in set mode, the map
    morphism -> label.
    """
    homs, table, ids, to_mor, label_of = {}, {}, {}, {}, {}
    vect = cat.enrichment == "vect"
    for x in objects:
        for y in objects:
            h = cat.hom(x, y)
            labels = []
            for i, m in enumerate(h.basis if vect else h.elements):
                label = vect_label(x, y, i) if vect else set_label(m)
                labels.append(label)
                to_mor[label] = m
                if not vect:
                    label_of[m] = label
            homs[(x, y)] = tuple(labels)
    for x in objects:
        ids[x] = cat.hom(x, x).coordinates(cat.identity(x)) if vect else label_of[cat.identity(x)]
    for (x, y), fl in homs.items():
        for z in objects:
            for g in homs[(y, z)]:
                for f in fl:
                    c = cat.compose(to_mor[g], to_mor[f])
                    table[(g, f)] = cat.hom(x, z).coordinates(c) if vect else label_of[c]
    return FiniteCategory(objects, homs, table, ids, cat.enrichment, name), to_mor, label_of


# -- functors and natural transformations ---------------------------------

class Functor:
    """A functor between finite categories given by explicit tables.

    In set mode ``on_morphisms`` maps every label (identities may be omitted).
    In vect mode it maps every basis label to a :class:`Vec` of the target.
    """

    def __init__(self, src: FiniteCategory, dst: FiniteCategory, on_objects: Mapping, on_morphisms: Mapping,
                 name: Optional[str] = None):
        self.src = src
        self.dst = dst
        self.on_objects = dict(on_objects)
        self.on_morphisms = dict(on_morphisms)
        self.name = name
        if src.enrichment == "set":
            for a in src.objects:
                ida = src.identities.get(a)
                if ida is not None and ida not in self.on_morphisms and a in self.on_objects:
                    self.on_morphisms[ida] = dst.identity(self.on_objects[a])

    def __repr__(self):
        return f"Functor({self.name or '?'}: {self.src.name} -> {self.dst.name})"

    def __eq__(self, other):
        return isinstance(other, Functor) and self.key() == other.key() and self.src == other.src and self.dst == other.dst

    def __hash__(self):
        return hash(self.key())

    def obj(self, x):
        return self.on_objects[x]

    def mor(self, f):
        if self.src.enrichment == "set":
            return self.on_morphisms[f]
        labels = self.src.homs[(f.src, f.dst)]
        a, b = self.obj(f.src), self.obj(f.dst)
        n = len(self.dst.homs[(a, b)])
        images = [self.on_morphisms[l].coords for l in labels]
        return Vec(a, b, linalg.combine(f.coords, images, n))

    __call__ = mor

    def key(self) -> tuple:
        """Fingerprint of the functor data, used for cycle detection."""
        objs = tuple(self.on_objects.get(x) for x in self.src.objects)
        mors = tuple(self.on_morphisms.get(m) for m in self.src.labels)
        return objs, mors

    def then(self, other: "Functor") -> "Functor":
        """``other o self``."""
        objs = {x: other.obj(self.obj(x)) for x in self.src.objects}
        if self.src.enrichment == "set":
            mors = {m: other.mor(self.mor(m)) for m in self.src.labels}
        else:
            mors = {m: other.mor(self.mor(self.src.basis_vec(m))) for m in self.src.labels}
        name = f"{other.name}.{self.name}" if self.name and other.name else None
        return Functor(self.src, other.dst, objs, mors, name)


class MappedFunctor:
    """A functor between protocol categories given by two callables."""

    def __init__(self, src, dst, obj: Callable, mor: Callable, name: Optional[str] = None):
        self.src, self.dst = src, dst
        self._obj, self._mor = obj, mor
        self.name = name

    def __repr__(self):
        return f"MappedFunctor({self.name or '?'})"

    def obj(self, x):
        return self._obj(x)

    def mor(self, f):
        return self._mor(f)

    __call__ = mor


def compose_functors(F, G, name: Optional[str] = None) -> MappedFunctor:
    """``G o F`` for protocol functors."""
    return MappedFunctor(F.src, G.dst, lambda x: G.obj(F.obj(x)), lambda f: G.mor(F.mor(f)),
                         name or f"{G.name}{F.name}")


def protocol_identity(cat, name: str = "id") -> MappedFunctor:
    return MappedFunctor(cat, cat, lambda x: x, lambda f: f, name)


def identity_functor(cat: FiniteCategory) -> Functor:
    if cat.enrichment == "set":
        mors = {m: m for m in cat.labels}
    else:
        mors = {m: cat.basis_vec(m) for m in cat.labels}
    return Functor(cat, cat, {x: x for x in cat.objects}, mors, name="id")


def functor_power(F: Functor, n: int) -> Functor:
    out = identity_functor(F.src)
    for _ in range(n):
        out = out.then(F)
    return out


class NatTransformation:
    """Components ``t_x : source(x) -> target(x)``."""

    def __init__(self, source, target, components: Mapping, name: Optional[str] = None):
        self.source = source
        self.target = target
        self.components = dict(components)
        self.name = name

    def __repr__(self):
        return f"NatTransformation({self.name or '?'})"

    def __getitem__(self, x):
        return self.components[x]

    component = __getitem__


def validate(cat: FiniteCategory) -> Report:
    """Check every category law; the report lists each violation with a witness."""
    r = Report()
    seen = {}
    for (a, b), labels in cat.homs.items():
        for m in labels:
            if m in seen:
                r.add("disjoint-homs", f"label {m!r} occurs in hom{seen[m]} and hom{(a, b)}", label=m)
            seen[m] = (a, b)
    for a in cat.objects:
        if a not in cat.identities:
            r.add("identity", f"object {a!r} has no identity", object=a)
        elif cat.enrichment == "set" and cat.identities[a] not in cat.homs[(a, a)]:
            r.add("identity", f"identity of {a!r} is not in hom({a!r},{a!r})", object=a)
        elif cat.enrichment == "vect" and len(cat.identities[a]) != len(cat.homs[(a, a)]):
            r.add("identity", f"identity of {a!r} has wrong dimension", object=a)
    labels = cat.labels
    for key, v in cat.table.items():
        if len(key) != 2 or key[0] not in cat._src or key[1] not in cat._src:
            r.add("table", f"composition entry {key!r} names unknown morphisms", entry=key)
            continue
        g, f = key
        if cat._dst[f] != cat._src[g]:
            r.add("table", f"entry {g!r} o {f!r} is not composable", entry=key)
            continue
        a, c = cat._src[f], cat._dst[g]
        if cat.enrichment == "set" and v not in cat.homs[(a, c)]:
            r.add("table", f"{g!r} o {f!r} = {v!r} lies outside hom({a!r},{c!r})", entry=key, value=v)
        if cat.enrichment == "vect" and len(v) != len(cat.homs[(a, c)]):
            r.add("table", f"{g!r} o {f!r} has wrong dimension", entry=key)
    for f in labels:
        for g in labels:
            if cat._dst[f] == cat._src[g] and (g, f) not in cat.table:
                r.add("table", f"missing composite {g!r} o {f!r}", entry=(g, f))
    if not r.ok:
        return r
    mors = cat.morphisms()
    for f in mors:
        a, b = cat.src(f), cat.dst(f)
        if cat.compose(cat.identity(b), f) != f:
            r.add("left-identity", f"id o {f!r} != {f!r}", morphism=f)
        if cat.compose(f, cat.identity(a)) != f:
            r.add("right-identity", f"{f!r} o id != {f!r}", morphism=f)
    out_of = {}
    for f in mors:
        out_of.setdefault(cat.src(f), []).append(f)
    for f in mors:
        for g in out_of.get(cat.dst(f), ()):
            gf = cat.compose(g, f)
            for h in out_of.get(cat.dst(g), ()):
                left = cat.compose(h, gf)
                right = cat.compose(cat.compose(h, g), f)
                if left != right:
                    r.add("associativity", f"({h!r} o {g!r}) o {f!r} != {h!r} o ({g!r} o {f!r})",
                          triple=(h, g, f), left=left, right=right)
    return r


def validate_functor(F: Functor) -> Report:
    r = Report()
    C, D = F.src, F.dst
    for x in C.objects:
        if x not in F.on_objects:
            r.add("functor-objects", f"object {x!r} has no image", object=x)
        elif not D.has_object(F.on_objects[x]):
            r.add("functor-objects", f"image of {x!r} is not an object of the target", object=x)
    if not r.ok:
        return r
    for m in C.labels:
        if m not in F.on_morphisms:
            r.add("functor-morphisms", f"morphism {m!r} has no image", morphism=m)
    if not r.ok:
        return r
    for f in C.morphisms():
        Ff = F.mor(f)
        want = (F.obj(C.src(f)), F.obj(C.dst(f)))
        if (D.src(Ff), D.dst(Ff)) != want or (D.enrichment == "set" and Ff not in D.hom(*want)):
            r.add("functor-typing", f"F({f!r}) = {Ff!r} is not a morphism {want[0]!r} -> {want[1]!r}", morphism=f)
    if not r.ok:
        return r
    for x in C.objects:
        if F.mor(C.identity(x)) != D.identity(F.obj(x)):
            r.add("functor-identity", f"F(id_{x}) is not an identity", object=x)
    mors = C.morphisms()
    for f in mors:
        for g in mors:
            if C.dst(f) == C.src(g):
                if F.mor(C.compose(g, f)) != D.compose(F.mor(g), F.mor(f)):
                    r.add("functor-composition", f"F({g!r} o {f!r}) != F({g!r}) o F({f!r})", pair=(g, f))
    return r


def validate_nat(t: NatTransformation, objects: Optional[Iterable] = None, morphisms: Optional[Iterable] = None) -> Report:
    """Typing and naturality of ``t``; works for any category protocol."""
    F, G = t.source, t.target
    C = F.src
    D = F.dst
    r = Report()
    objects = list(C.objects if objects is None else objects)
    for x in objects:
        if x not in t.components:
            r.add("nat-component", f"missing component at {x!r}", object=x)
            continue
        c = t.components[x]
        try:
            typed = (D.src(c), D.dst(c)) == (F.obj(x), G.obj(x)) and c in D.hom(F.obj(x), G.obj(x))
        except (KeyError, AttributeError):
            typed = False
        if not typed:
            r.add("nat-typing", f"component at {x!r} is not a morphism {F.obj(x)!r} -> {G.obj(x)!r}", object=x, component=c)
    if not r.ok:
        return r
    if morphisms is None:
        morphisms = [f for a in objects for b in objects for f in hom_elements(C, a, b)]
    for f in morphisms:
        a, b = C.src(f), C.dst(f)
        left = D.compose(t.components[b], F.mor(f))
        right = D.compose(G.mor(f), t.components[a])
        if left != right:
            r.add("naturality", f"naturality square fails at {f!r}", morphism=f, left=left, right=right)
    return r


# -- opposites ----------------------------------------------------------------

def _op_name(name):
    if name is None:
        return None
    return name[:-3] if name.endswith("^op") else name + "^op"


def opposite(cat: FiniteCategory) -> FiniteCategory:
    homs = {(b, a): labels for (a, b), labels in cat.homs.items()}
    table = {(f, g): v for (g, f), v in cat.table.items()}
    return FiniteCategory(cat.objects, homs, table, cat.identities, cat.enrichment, _op_name(cat.name))


def opposite_functor(F: Functor, src_op: Optional[FiniteCategory] = None, dst_op: Optional[FiniteCategory] = None) -> Functor:
    src_op = src_op or opposite(F.src)
    dst_op = dst_op or (src_op if F.dst is F.src else opposite(F.dst))
    if F.src.enrichment == "set":
        mors = dict(F.on_morphisms)
    else:
        mors = {m: Vec(v.dst, v.src, v.coords) for m, v in F.on_morphisms.items()}
    return Functor(src_op, dst_op, F.on_objects, mors, _op_name(F.name))


def opposite_nat(t: NatTransformation, src_op: Optional[FiniteCategory] = None) -> NatTransformation:
    """A transformation F => G on C read as G^op => F^op on C^op."""
    C = t.source.src
    src_op = src_op or opposite(C)
    F = opposite_functor(t.source, src_op, src_op)
    G = opposite_functor(t.target, src_op, src_op)
    comps = dict(t.components)
    if C.enrichment == "vect":
        comps = {x: Vec(v.dst, v.src, v.coords) for x, v in comps.items()}
    return NatTransformation(G, F, comps, _op_name(t.name))


# -- enumeration ----------------------------------------------------------------

@dataclass(frozen=True)
class EnumerationLimits:
    max_objects: int = 24
    max_morphisms: int = 600
    max_object_maps: int = 10 ** 6

    @classmethod
    def from_env(cls, **kw) -> "EnumerationLimits":
        env = os.environ.get("WELLPOINTED_ENUM_LIMIT")
        if env:
            kw.setdefault("max_morphisms", int(env))
        return cls(**kw)


def generating_set(cat: FiniteCategory) -> list:
    """A generating set of non-identity morphisms (set mode), greedy on irreducibles first."""
    ids = set(cat.identities.values())
    mors = [m for m in cat.labels if m not in ids]
    reducible = set()
    for g in mors:
        for f in mors:
            if cat._dst[f] == cat._src[g]:
                c = cat.table[(g, f)]
                if c != g and c != f:
                    reducible.add(c)
    ordered = [m for m in mors if m not in reducible] + [m for m in mors if m in reducible]
    gens, closure = [], set(ids)
    for m in ordered:
        if m in closure:
            continue
        gens.append(m)
        frontier = [m]
        closure.add(m)
        while frontier:
            x = frontier.pop()
            for y in list(closure):
                for c in ((cat.table.get((y, x)) if cat._src[y] == cat._dst[x] else None),
                          (cat.table.get((x, y)) if cat._src[x] == cat._dst[y] else None)):
                    if c is not None and c not in closure:
                        closure.add(c)
                        frontier.append(c)
    return gens


def enumerate_functors(src: FiniteCategory, dst: FiniteCategory, limits: Optional[EnumerationLimits] = None,
                       generators: Optional[Sequence] = None) -> Iterator[Functor]:
    """Exhaustive, duplicate-free stream of all functors ``src -> dst``.

    Objects are assigned by backtracking, then generator images; the images of
    all other morphisms are forced by composition and checked as they appear.
    """
    limits = limits or EnumerationLimits.from_env()
    for cat in (src, dst):
        if len(cat.objects) > limits.max_objects or cat.size > limits.max_morphisms:
            est = max(1, len(dst.objects)) ** len(src.objects) * max(1, dst.size) ** max(1, src.size)
            raise EnumerationRefused(f"{cat.name or 'category'} exceeds enumeration limits {limits}", est)
    if max(1, len(dst.objects)) ** len(src.objects) > limits.max_object_maps:
        raise EnumerationRefused(f"{len(dst.objects)}^{len(src.objects)} object assignments exceed {limits.max_object_maps}",
                                 len(dst.objects) ** len(src.objects))
    if src.enrichment != dst.enrichment:
        raise CategoryError("source and target enrichments differ")
    if src.enrichment == "vect":
        yield from _enumerate_linear(src, dst)
        return
    gens = list(generators) if generators is not None else generating_set(src)
    out_of, into = {}, {}
    for m in src.labels:
        out_of.setdefault(src._src[m], []).append(m)
        into.setdefault(src._dst[m], []).append(m)

    def objects_assignments(i, assign):
        if i == len(src.objects):
            yield dict(assign)
            return
        x = src.objects[i]
        for y in dst.objects:
            ok = True
            for (x2, y2) in assign.items():
                if src.homs[(x, x2)] and not dst.homs[(y, y2)]:
                    ok = False
                    break
                if src.homs[(x2, x)] and not dst.homs[(y2, y)]:
                    ok = False
                    break
            if ok and src.homs[(x, x)] and not dst.homs[(y, y)]:
                ok = False
            if ok:
                assign[x] = y
                yield from objects_assignments(i + 1, assign)
                del assign[x]

    def propagate(img, start):
        added = []
        work = list(start)
        while work:
            x = work.pop()
            pairs = [(y, x) for y in out_of.get(src._dst[x], ()) if y in img] + \
                    [(x, y) for y in into.get(src._src[x], ()) if y in img]
            for g, f in pairs:
                c = src.table[(g, f)]
                v = dst.table[(img[g], img[f])]
                if c in img:
                    if img[c] != v:
                        for k in added:
                            del img[k]
                        return None
                else:
                    img[c] = v
                    added.append(c)
                    work.append(c)
        return added

    for objs in objects_assignments(0, {}):
        img = {src.identities[x]: dst.identities[objs[x]] for x in src.objects}
        base = propagate(img, list(img))
        if base is None:
            continue

        def assign_gen(i):
            if i == len(gens):
                if len(img) == src.size:
                    yield Functor(src, dst, objs, dict(img))
                return
            g = gens[i]
            if g in img:
                yield from assign_gen(i + 1)
                return
            for v in dst.homs[(objs[src._src[g]], objs[src._dst[g]])]:
                img[g] = v
                added = propagate(img, [g])
                if added is not None:
                    yield from assign_gen(i + 1)
                    for k in added:
                        del img[k]
                del img[g]

        yield from assign_gen(0)


def _enumerate_linear(src: FiniteCategory, dst: FiniteCategory) -> Iterator[Functor]:
    # exhaustive only when src is spanned by identities; anything else has infinitely many candidates over Q
    for (a, b), labels in src.homs.items():
        if (a != b and labels) or len(labels) > 1:
            raise EnumerationRefused("linear functor enumeration needs a source whose homs are spanned by identities")
    for a in src.objects:
        if src.homs[(a, a)] and not any(src.identities[a]):
            raise EnumerationRefused("identity of a one-dimensional endomorphism space must be non-zero")
    for images in itertools.product(dst.objects, repeat=len(src.objects)):
        objs = dict(zip(src.objects, images))
        mors, ok = {}, True
        for a in src.objects:
            ida = dst.identity(objs[a])
            if not src.homs[(a, a)]:
                if any(ida.coords):
                    ok = False
                    break
                continue
            label = src.homs[(a, a)][0]
            c = src.identities[a][0]
            mors[label] = Vec(ida.src, ida.dst, linalg.scale(1 / c, ida.coords))
        if ok:
            yield Functor(src, dst, objs, mors)


# -- equivalence, natural isomorphism, adjoints -----------------------------------

@dataclass
class EquivalenceResult:
    ok: bool
    witness: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def check_equivalence(F, src_objects: Optional[Sequence] = None, dst_objects: Optional[Sequence] = None) -> EquivalenceResult:
    """Fully faithful and essentially surjective, with certificates or a failing hom/object."""
    C, D = F.src, F.dst
    src_objects = list(C.objects if src_objects is None else src_objects)
    dst_objects = list(D.objects if dst_objects is None else dst_objects)
    for a in src_objects:
        for b in src_objects:
            h, k = C.hom(a, b), D.hom(F.obj(a), F.obj(b))
            if not map_is_bijective(F.mor, h, k):
                return EquivalenceResult(False, {"reason": "not fully faithful", "hom": (a, b),
                                                 "source_size": h.size, "target_size": k.size})
    isos = {}
    for d in dst_objects:
        for a in src_objects:
            f = find_iso(D, F.obj(a), d)
            if f is not None:
                isos[d] = (a, f)
                break
        else:
            return EquivalenceResult(False, {"reason": "not essentially surjective", "object": d})
    return EquivalenceResult(True, {"isos": isos})


def find_natural_iso(F, G, objects: Sequence, seed: int = 0) -> Optional[dict]:
    """Components of a natural isomorphism F => G over ``objects``, or None.

    ``F`` and ``G`` share a source category and a target category. Set mode is
    an exhaustive backtracking search. Vect mode solves the linear naturality
    equations and tries seeded combinations for an invertible solution.
    """
    C, D = F.src, F.dst
    objects = list(objects)
    if D.enrichment == "set":
        mors = {(a, b): hom_elements(C, a, b) for a in objects for b in objects}
        options = []
        for x in objects:
            opts = [f for f in D.hom(F.obj(x), G.obj(x)) if is_iso(D, f)]
            if not opts:
                return None
            options.append(opts)
        comps = {}

        def search(i):
            if i == len(objects):
                return True
            x = objects[i]
            for c in options[i]:
                comps[x] = c
                good = True
                for y in objects[: i + 1]:
                    for (a, b) in ((x, y), (y, x)):
                        for f in mors[(a, b)]:
                            if D.compose(comps[b], F.mor(f)) != D.compose(G.mor(f), comps[a]):
                                good = False
                                break
                        if not good:
                            break
                    if not good:
                        break
                if good and search(i + 1):
                    return True
                del comps[x]
            return False

        return dict(comps) if search(0) else None
    homs = [D.hom(F.obj(x), G.obj(x)) for x in objects]
    offsets = list(itertools.accumulate([0] + [h.dim for h in homs]))
    nvars = offsets[-1]
    rows = []
    for i, a in enumerate(objects):
        for j, b in enumerate(objects):
            for f in hom_elements(C, a, b):
                Ff, Gf = F.mor(f), G.mor(f)
                target = D.hom(F.obj(a), G.obj(b))
                cols = []
                for k, e in enumerate(homs[j].basis):
                    cols.append((offsets[j] + k, target.coordinates(D.compose(e, Ff))))
                for k, e in enumerate(homs[i].basis):
                    cols.append((offsets[i] + k, tuple(-x for x in target.coordinates(D.compose(Gf, e)))))
                for r in range(target.dim):
                    row = [linalg.ZERO] * nvars
                    for col, vals in cols:
                        row[col] += vals[r]
                    rows.append(tuple(row))
    space = linalg.nullspace(rows, nvars) if rows else [linalg.unit(nvars, k) for k in range(nvars)]
    rng = random.Random(seed)
    trials = list(space) + [linalg.combine([rng.randint(-4, 4) or 1 for _ in space], space, nvars) for _ in range(8)]
    if nvars == 0:
        trials = [()]
    for v in trials:
        comps = {x: homs[i].element(v[offsets[i]:offsets[i + 1]]) for i, x in enumerate(objects)}
        if all(is_iso(D, comps[x]) for x in objects):
            return comps
    return None


@dataclass
class Adjunction:
    left: Functor
    right: Functor
    unit: NatTransformation
    counit: NatTransformation
    report: Report


def find_left_adjoint(omega: Functor) -> Optional[Adjunction]:
    """Universal-arrow search for a left adjoint of ``omega`` (set mode).

    For each x scan pairs (s, u: x -> omega s) for initiality. Returns None when
    some x has no universal arrow.
    """
    C = omega.src
    if C.enrichment != "set" or omega.dst is not C and omega.dst != C:
        raise CategoryError("left adjoint search needs a set-enriched endofunctor")
    arrows = {}
    for x in C.objects:
        found = None
        for s in C.objects:
            for u in C.homs[(x, omega.obj(s))]:
                if all(map_is_bijective(lambda g, u=u: C.compose(omega.mor(g), u), C.hom(s, y), C.hom(x, omega.obj(y)))
                       for y in C.objects):
                    found = (s, u)
                    break
            if found:
                break
        if found is None:
            return None
        arrows[x] = found
    sigma_obj = {x: s for x, (s, _) in arrows.items()}

    def factor(x, y, f):
        s, u = arrows[x]
        for g in C.homs[(s, y)]:
            if C.compose(omega.mor(g), u) == f:
                return g
        raise CategoryError("universal arrow failed to factor")

    sigma_mor = {}
    for a in C.labels:
        x, x2 = C._src[a], C._dst[a]
        sigma_mor[a] = factor(x, sigma_obj[x2], C.compose(arrows[x2][1], a))
    sigma = Functor(C, C, sigma_obj, sigma_mor, name="Sigma")
    os_ = sigma.then(omega)
    so = omega.then(sigma)
    unit = NatTransformation(identity_functor(C), os_, {x: arrows[x][1] for x in C.objects}, name="unit")
    counit = NatTransformation(so, identity_functor(C),
                               {y: factor(omega.obj(y), y, C.identity(omega.obj(y))) for y in C.objects}, name="counit")
    report = Report()
    report.violations += validate_functor(sigma).violations
    report.violations += validate_nat(unit).violations
    report.violations += validate_nat(counit).violations
    for y in C.objects:
        if C.compose(omega.mor(counit[y]), unit[omega.obj(y)]) != C.identity(omega.obj(y)):
            report.add("triangle", f"Omega(counit) o unit != id at {y!r}", object=y)
    for x in C.objects:
        if C.compose(counit[sigma.obj(x)], sigma.mor(unit[x])) != C.identity(sigma.obj(x)):
            report.add("triangle", f"counit o Sigma(unit) != id at {x!r}", object=x)
    return Adjunction(sigma, omega, unit, counit, report)
