"""The shipped example specs and random generators of well-pointed instances."""
from __future__ import annotations

import itertools
import random
from functools import lru_cache
from dataclasses import dataclass
from importlib import resources
from typing import Iterator, Optional

from . import linalg
from .builders import (all_monoids, diagonal_algebra, disjoint_functor, disjoint_nat, disjoint_union, linear_algebra,
                       linearise, linearise_functor, monoid_from_table, monotone_functor, preorder,
                       truncated_polynomials, unique_point)
from .core import FiniteCategory, Functor, NatTransformation, Vec, identity_functor
from .dsl import Model, load
from .localise import WellPointedEndo, check_well_pointed

CORPUS = ("chain3", "monoid-e", "collapse2", "vect-scalar", "vect-idempotent", "loop3")
# linear functor enumeration is exhaustive only from scalar-like sources
UNIVERSAL_CORPUS = ("chain3", "monoid-e", "collapse2", "vect-scalar")


@dataclass
class Instance:
    name: str
    category: FiniteCategory
    omega: Functor
    theta: Optional[NatTransformation]

    @property
    def wp(self) -> WellPointedEndo:
        return WellPointedEndo(self.omega, self.theta)


def corpus_text(name: str) -> str:
    return resources.files("wellpointed").joinpath(f"corpus/{name}.cat").read_text(encoding="utf-8")


def pick(model: Model, endo: Optional[str] = None, point: Optional[str] = None) -> tuple[Functor, Optional[NatTransformation]]:
    """The named endofunctor and point, or the only ones present."""
    if endo is None:
        endos = [F for F in model.functors.values() if F.src == F.dst]
        if len(endos) != 1:
            raise KeyError("name the endofunctor with --endo")
        omega = endos[0]
    else:
        omega = model.functors[endo]
    if point is None:
        pts = [t for t in model.nats.values() if t.target is omega]
        theta = pts[0] if len(pts) == 1 else None
    else:
        theta = model.nats[point]
    return omega, theta


def corpus_instance(name: str) -> Instance:
    model = load(corpus_text(name))
    omega, theta = pick(model)
    return Instance(name, omega.src, omega, theta)


def corpus(pointed_only: bool = True) -> list[Instance]:
    out = [corpus_instance(n) for n in CORPUS]
    return [i for i in out if i.theta is not None] if pointed_only else out


# -- generators -----------------------------------------------------------------

def random_preorder(rng: random.Random, n: int) -> FiniteCategory:
    objs = [str(i) for i in range(n)]
    rel = {(a, a) for a in objs}
    for a in objs:
        for b in objs:
            if a != b and rng.random() < 0.35:
                rel.add((a, b))
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return preorder(objs, lambda a, b: (a, b) in rel, f"P{n}")


def inflationary_maps(P: FiniteCategory) -> Iterator[dict]:
    """Monotone maps with x <= f(x)."""
    objs = list(P.objects)
    le = {(a, b) for (a, b), h in P.homs.items() if h}
    choices = [[y for y in objs if (x, y) in le] for x in objs]
    for image in itertools.product(*choices):
        f = dict(zip(objs, image))
        if all((f[a], f[b]) in le for (a, b) in le):
            yield f


def preorder_instances(rng: random.Random, count: int, max_objects: int = 4) -> list[Instance]:
    out = []
    while len(out) < count:
        P = random_preorder(rng, rng.randint(1, max_objects))
        maps = list(inflationary_maps(P))
        f = rng.choice(maps)
        om = monotone_functor(P, f, "Om")
        out.append(Instance(f"preorder-{len(out)}", P, om, unique_point(P, om)))
    return out


def monoid_instances(max_order: int = 3) -> list[Instance]:
    """(M, phi, t) with phi an endomorphism, phi(t) = t and t m = phi(m) t."""
    out = []
    for order in range(1, max_order + 1):
        for M in all_monoids(order):
            elems = list(M.labels)
            unit = M.identity("*")
            mul = M.table
            for image in itertools.product(elems, repeat=len(elems)):
                phi = dict(zip(elems, image))
                if phi[unit] != unit or any(phi[mul[(g, f)]] != mul[(phi[g], phi[f])] for g in elems for f in elems):
                    continue
                for t in elems:
                    if phi[t] != t or any(mul[(t, m)] != mul[(phi[m], t)] for m in elems):
                        continue
                    om = Functor(M, M, {"*": "*"}, phi, "Om")
                    th = NatTransformation(identity_functor(M), om, {"*": t}, "th")
                    out.append(Instance(f"{M.name}-{len(out)}", M, om, th))
    return out


def union_instance(parts: list[Instance], name: str) -> Instance:
    U = disjoint_union([p.category for p in parts], name)
    om = disjoint_functor([p.omega for p in parts], U, "Om")
    th = disjoint_nat([p.theta for p in parts], identity_functor(U), om, "th")
    return Instance(name, U, om, th)


def _scalar_point(C: FiniteCategory, om: Functor, coords) -> NatTransformation:
    return NatTransformation(identity_functor(C), om, {"*": Vec("*", "*", linalg.vector(coords))}, "th")


def vect_instances(rng: random.Random, count: int) -> list[Instance]:
    """Commutative algebras with Omega = id and a random point, and linearised preorders."""
    out = []
    values = [0, 0, 1, 1, -1, 2]
    while len(out) < count:
        kind = rng.randrange(3)
        if kind == 0:
            A = diagonal_algebra(rng.randint(1, 3))
        elif kind == 1:
            A = truncated_polynomials(rng.randint(1, 3))
        else:
            P = random_preorder(rng, rng.randint(1, 3))
            f = rng.choice(list(inflationary_maps(P)))
            om = monotone_functor(P, f, "Om")
            L = linearise(P)
            lom = linearise_functor(om, L, "Om")
            th = {x: Vec(x, f[x], (linalg.ONE,)) for x in P.objects}
            out.append(Instance(f"lin-{len(out)}", L, lom, NatTransformation(identity_functor(L), lom, th, "th")))
            continue
        om = identity_functor(A)
        n = len(A.homs[("*", "*")])
        out.append(Instance(f"{A.name}-{len(out)}", A, om, _scalar_point(A, om, [rng.choice(values) for _ in range(n)])))
    return out


def lemma_suite(seed: int = 0, size: int = 200) -> list[Instance]:
    """At least ``size`` well-pointed instances with at most 4 objects, both enrichments."""
    rng = random.Random(seed)
    mons = monoid_instances(3)
    out = list(mons)
    for k in range(10):
        a, b = rng.sample(mons, 2)
        out.append(union_instance([a, b], f"union-{k}"))
    out += vect_instances(rng, max(60, size // 4))
    out += preorder_instances(rng, max(size // 3, size - len(out)))
    for inst in out:
        assert check_well_pointed(inst.omega, inst.theta).ok, inst.name
    return out


def monoid_e() -> Instance:
    M = monoid_from_table(["1", "e"], "1", {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e", ("e", "e"): "e"}, "*", "M")
    om = identity_functor(M)
    return Instance("monoid-e", M, om, NatTransformation(om, om, {"*": "e"}, "th"))


def scalar_algebra() -> FiniteCategory:
    return linear_algebra(["1"], [1], {("1", "1"): linalg.vector([1])}, "*", "Q")


# -- target categories for universal-property checks ---------------------------------

def preorders_up_to_iso(n: int) -> list[FiniteCategory]:
    objs = [str(i) for i in range(n)]
    pairs = [(a, b) for a in range(n) for b in range(n) if a != b]
    seen, out = set(), []
    for bits in itertools.product((False, True), repeat=len(pairs)):
        rel = {p for p, b in zip(pairs, bits) if b}
        if any((a, b) in rel and (b, c) in rel and a != c and (a, c) not in rel for a in range(n) for b in range(n)
               for c in range(n)):
            continue
        canon = min(tuple(sorted((s[a], s[b]) for a, b in rel)) for s in itertools.permutations(range(n)))
        if canon in seen:
            continue
        seen.add(canon)
        out.append(preorder(objs, lambda a, b, rel=rel: a == b or (int(a), int(b)) in rel, f"Pre{n}.{len(out)}"))
    return out


def discrete(n: int) -> FiniteCategory:
    return preorder([str(i) for i in range(n)], lambda a, b: a == b, f"Disc{n}")


def z2_groupoid() -> FiniteCategory:
    """Two isomorphic objects, each with automorphism group Z/2."""
    objs = ["a", "b"]
    homs = {(x, y): tuple(f"{x}{y}{g}" for g in (0, 1)) for x in objs for y in objs}
    table = {(f"{y}{z}{h}", f"{x}{y}{g}"): f"{x}{z}{(g + h) % 2}"
             for x in objs for y in objs for z in objs for g in (0, 1) for h in (0, 1)}
    return FiniteCategory(objs, homs, table, {x: f"{x}{x}0" for x in objs}, "set", "Z2-groupoid")


def zero_linear(name: str = "Zero") -> FiniteCategory:
    """One object whose endomorphism space is 0."""
    return FiniteCategory(["z"], {("z", "z"): ()}, {}, {"z": linalg.vector([])}, "vect", name)


@lru_cache(maxsize=None)
def target_suite(enrichment: str = "set") -> tuple[FiniteCategory, ...]:
    """Targets with at most 3 objects and 12 morphisms, covering each shape class once."""
    from .localise import LocalisedCategory

    if enrichment == "vect":
        Z = zero_linear()
        return (Z, scalar_algebra(), diagonal_algebra(2), truncated_polynomials(2),
                disjoint_union([Z, scalar_algebra()], "Zero+Q"))
    out = [c for n in (1, 2, 3) for c in preorders_up_to_iso(n)]
    out += [m for k in (2, 3, 4) for m in all_monoids(k)]
    out += [discrete(2), discrete(3), z2_groupoid()]
    small = [m for k in (1, 2) for m in all_monoids(k)]
    out += [disjoint_union([a, b], f"{a.name}+{b.name}") for a in small for b in small]
    out += [disjoint_union([a, b, c], f"{a.name}+{b.name}+{c.name}") for a, b, c in itertools.product(small, repeat=3)]
    for inst in corpus():
        if inst.category.enrichment == "set":
            out.append(inst.category)
            out.append(LocalisedCategory(inst.wp).materialise().category)
    return tuple(c for c in out if len(c.objects) <= 3 and c.size <= 12)
