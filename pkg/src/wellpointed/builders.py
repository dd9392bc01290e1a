"""Constructors for the small categories used throughout: preorders, monoids,
disjoint unions, and linear (FinVec) algebras and linearised preorders."""
from __future__ import annotations

import itertools
from typing import Callable, Mapping, Optional, Sequence

from . import linalg
from .core import FiniteCategory, Functor, NatTransformation, Vec


def le_label(a, b) -> str:
    return f"{a}<{b}" if a != b else f"id_{a}"


def preorder(objects: Sequence, relation: Callable[[object, object], bool], name: Optional[str] = None) -> FiniteCategory:
    """Thin category of a preorder; ``relation`` must be reflexive and transitive."""
    homs = {(a, b): (le_label(a, b),) for a in objects for b in objects if relation(a, b)}
    table = {}
    for (a, b) in homs:
        for c in objects:
            if (b, c) in homs:
                table[(le_label(b, c), le_label(a, b))] = le_label(a, c)
    return FiniteCategory(objects, homs, table, {a: le_label(a, a) for a in objects}, "set", name)


def chain(n: int, name: Optional[str] = None) -> FiniteCategory:
    objs = [str(i) for i in range(n)]
    return preorder(objs, lambda a, b: int(a) <= int(b), name or f"chain{n}")


def monotone_functor(P: FiniteCategory, f: Mapping, name: Optional[str] = None) -> Functor:
    """Functor of a thin category induced by an order-preserving map of objects."""
    mors = {}
    for (a, b), labels in P.homs.items():
        for m in labels:
            mors[m] = P.homs[(f[a], f[b])][0]
    return Functor(P, P, dict(f), mors, name)


def unique_point(P: FiniteCategory, omega: Functor, name: str = "theta") -> NatTransformation:
    """The only possible transformation id -> omega on a thin category with x <= omega(x)."""
    from .core import identity_functor
    return NatTransformation(identity_functor(P), omega, {x: P.homs[(x, omega.obj(x))][0] for x in P.objects}, name)


def monoid(elements: Sequence[str], unit: str, mul: Callable[[str, str], str], obj: str = "*",
           name: Optional[str] = None) -> FiniteCategory:
    """One-object category; ``mul(g, f)`` is ``g o f``."""
    table = {(g, f): mul(g, f) for g in elements for f in elements}
    return FiniteCategory([obj], {(obj, obj): tuple(elements)}, table, {obj: unit}, "set", name)


def monoid_from_table(elements: Sequence[str], unit: str, table: Mapping, obj: str = "*", name=None) -> FiniteCategory:
    return monoid(elements, unit, lambda g, f: table[(g, f)], obj, name)


def idempotent_monoid(name: str = "M") -> FiniteCategory:
    """M = {1, e} with e.e = e."""
    return monoid(["1", "e"], "1", lambda g, f: "e" if "e" in (g, f) else "1", "*", name)


def disjoint_union(cats: Sequence[FiniteCategory], name: Optional[str] = None) -> FiniteCategory:
    """Coproduct of categories; objects and labels are prefixed with the summand index."""
    enrichment = cats[0].enrichment
    objects, homs, table, ids = [], {}, {}, {}
    for k, C in enumerate(cats):
        p = f"{k}."
        objects += [p + str(x) for x in C.objects]
        for (a, b), labels in C.homs.items():
            if labels:
                homs[(p + str(a), p + str(b))] = tuple(p + str(m) for m in labels)
        for (g, f), v in C.table.items():
            table[(p + str(g), p + str(f))] = v if enrichment == "vect" else p + str(v)
        for a, i in C.identities.items():
            ids[p + str(a)] = i if enrichment == "vect" else p + str(i)
    return FiniteCategory(objects, homs, table, ids, enrichment, name)


def disjoint_functor(functors: Sequence[Functor], union: FiniteCategory, name: Optional[str] = None) -> Functor:
    objs, mors = {}, {}
    for k, F in enumerate(functors):
        p = f"{k}."
        for x in F.src.objects:
            objs[p + str(x)] = p + str(F.obj(x))
        for m, v in F.on_morphisms.items():
            if isinstance(v, Vec):
                mors[p + str(m)] = Vec(p + str(v.src), p + str(v.dst), v.coords)
            else:
                mors[p + str(m)] = p + str(v)
    return Functor(union, union, objs, mors, name)


def disjoint_nat(nats: Sequence[NatTransformation], source: Functor, target: Functor, name=None) -> NatTransformation:
    comps = {}
    for k, t in enumerate(nats):
        p = f"{k}."
        for x, c in t.components.items():
            comps[p + str(x)] = Vec(p + str(c.src), p + str(c.dst), c.coords) if isinstance(c, Vec) else p + str(c)
    return NatTransformation(source, target, comps, name)


def linear_algebra(basis: Sequence[str], unit: Sequence, mul: Mapping, obj: str = "*", name=None) -> FiniteCategory:
    """One-object linear category from structure constants ``mul[(g, f)] = coords of g.f``."""
    return FiniteCategory([obj], {(obj, obj): tuple(basis)}, dict(mul), {obj: linalg.vector(unit)}, "vect", name)


def diagonal_algebra(k: int, obj: str = "*", name=None) -> FiniteCategory:
    """Q^k with coordinatewise product, basis of orthogonal idempotents."""
    basis = [f"p{i}" for i in range(k)]
    mul = {(basis[i], basis[j]): linalg.unit(k, i) if i == j else linalg.zeros(k) for i in range(k) for j in range(k)}
    return linear_algebra(basis, [1] * k, mul, obj, name or f"Q^{k}")


def truncated_polynomials(n: int, obj: str = "*", name=None) -> FiniteCategory:
    """Q[x]/(x^n) with basis 1, x, ..., x^(n-1)."""
    basis = ["1"] + [f"x{i}" for i in range(1, n)]
    mul = {}
    for i in range(n):
        for j in range(n):
            mul[(basis[i], basis[j])] = linalg.unit(n, i + j) if i + j < n else linalg.zeros(n)
    return linear_algebra(basis, linalg.unit(n, 0), mul, obj, name or f"Q[x]/x^{n}")


def linearise(P: FiniteCategory, name=None) -> FiniteCategory:
    """Free linear category on a thin category: hom = Q or 0."""
    homs = {k: v for k, v in P.homs.items() if v}
    table = {k: (1,) for k in P.table}
    ids = {a: (1,) for a in P.objects}
    return FiniteCategory(P.objects, homs, table, ids, "vect", name or (P.name and f"Q[{P.name}]"))


def linearise_functor(F: Functor, L: FiniteCategory, name=None) -> Functor:
    mors = {}
    for m, v in F.on_morphisms.items():
        mors[m] = Vec(F.dst._src[v], F.dst._dst[v], (linalg.ONE,))
    return Functor(L, L, F.on_objects, mors, name or F.name)


def vect_functor(C: FiniteCategory, on_objects: Mapping, images: Mapping, name=None) -> Functor:
    """Endofunctor of a linear category from basis images given as coordinate lists."""
    mors = {}
    for m, coords in images.items():
        a, b = on_objects[C._src[m]], on_objects[C._dst[m]]
        mors[m] = Vec(a, b, linalg.vector(coords))
    return Functor(C, C, on_objects, mors, name)


def all_monoids(order: int) -> list[FiniteCategory]:
    """Every monoid structure on {u, m1, ...} with unit u, up to relabelling of the non-units."""
    elems = ["u"] + [f"m{i}" for i in range(1, order)]
    rest = elems[1:]
    found, seen = [], set()
    for values in itertools.product(range(order), repeat=len(rest) ** 2):
        tab = {}
        it = iter(values)
        for g in rest:
            for f in rest:
                tab[(g, f)] = elems[next(it)]
        for x in elems:
            tab[("u", x)] = x
            tab[(x, "u")] = x
        if not all(tab[(tab[(h, g)], f)] == tab[(h, tab[(g, f)])] for h in elems for g in elems for f in elems):
            continue
        canon = min(
            tuple(sorted(((r[g], r[f]), r[tab[(g, f)]]) for g in elems for f in elems))
            for r in (dict(zip(elems, ["u", *p])) for p in itertools.permutations(rest))
        )
        if canon in seen:
            continue
        seen.add(canon)
        found.append(monoid_from_table(elems, "u", tab, "*", f"Mon{order}.{len(found)}"))
    return found
