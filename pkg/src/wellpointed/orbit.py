"""The orbit category of an endofunctor F, set-enriched and grade-bounded.

Same objects as C; a morphism X -> Y of grade n is a morphism ``F^n X -> Y`` of
C. Hom-sets are disjoint unions over all grades, hence infinite, so they are
only ever listed up to a grade bound. Because ``F^n X`` is eventually periodic
in n, so are the graded carriers, and that periodicity is reported with them.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .core import CategoryError, FiniteCategory, Functor, Report
from .localise import WellPointedEndo
from .periodic import detect_orbit, stage_index


@dataclass(frozen=True)
class GradedMorphism:
    src: object
    dst: object
    grade: int
    carrier: str

    def __repr__(self):
        return f"({self.grade}, {self.carrier})"


@dataclass
class GradedHom:
    """Grades 0..max_grade, with grade n stored at the index of F^n X in its orbit."""

    src: object
    dst: object
    grades: list
    preperiod: int
    period: int

    def carrier(self, n: int) -> tuple:
        """Carrier labels of grade n for any n (periodic past the preperiod)."""
        return tuple(m.carrier for m in self.grades[stage_index(n, self.preperiod, self.period)])

    def sizes(self) -> list[int]:
        return [len(g) for g in self.grades]


class OrbitCategory:
    """Lazy orbit category; ``hom`` needs a grade bound, composition does not."""

    def __init__(self, F: Functor):
        if F.src.enrichment != "set":
            raise CategoryError("the orbit category is implemented for set-enriched categories only")
        if F.src is not F.dst and F.src != F.dst:
            raise CategoryError("F must be an endofunctor")
        self.F = F
        self.base: FiniteCategory = F.src
        self.objects = self.base.objects
        self.enrichment = "set"
        self._powers = {}

    def power(self, x, n: int):
        key = (x, n)
        if key not in self._powers:
            self._powers[key] = x if n == 0 else self.F.obj(self.power(x, n - 1))
        return self._powers[key]

    def power_mor(self, f, n: int):
        for _ in range(n):
            f = self.F.mor(f)
        return f

    def morphism(self, x, y, grade: int, f) -> GradedMorphism:
        C = self.base
        if (C.src(f), C.dst(f)) != (self.power(x, grade), y):
            raise CategoryError(f"{f} is not a morphism F^{grade}({x}) -> {y}")
        return GradedMorphism(x, y, grade, f)

    def hom(self, x, y, max_grade: int) -> GradedHom:
        if max_grade < 0:
            raise CategoryError("max_grade must be non-negative")
        orb = detect_orbit(self.F, x)
        grades = [tuple(GradedMorphism(x, y, n, f) for f in self.base.hom(self.power(x, n), y))
                  for n in range(max_grade + 1)]
        return GradedHom(x, y, grades, orb.preperiod, orb.period)

    def identity(self, x) -> GradedMorphism:
        return GradedMorphism(x, x, 0, self.base.identity(x))

    def compose(self, g: GradedMorphism, f: GradedMorphism) -> GradedMorphism:
        """(j, g) o (i, f) = (i + j, g o F^j f)."""
        if f.dst != g.src:
            raise CategoryError(f"cannot compose {g!r} after {f!r}: {f.dst} != {g.src}")
        return GradedMorphism(f.src, g.dst, f.grade + g.grade,
                              self.base.compose(g.carrier, self.power_mor(f.carrier, g.grade)))

    def src(self, m: GradedMorphism):
        return m.src

    def dst(self, m: GradedMorphism):
        return m.dst

    # the extension of F and its point
    def omega_obj(self, x):
        return self.F.obj(x)

    def omega_mor(self, m: GradedMorphism) -> GradedMorphism:
        return GradedMorphism(self.F.obj(m.src), self.F.obj(m.dst), m.grade, self.F.mor(m.carrier))

    def theta(self, x) -> GradedMorphism:
        fx = self.F.obj(x)
        return GradedMorphism(x, fx, 1, self.base.identity(fx))

    def graded_morphisms(self, max_grade: int) -> list[GradedMorphism]:
        out = []
        for x in self.objects:
            for y in self.objects:
                for g in self.hom(x, y, max_grade).grades:
                    out.extend(g)
        return out


def orbit_hom(F: Functor, x, y, max_grade: int) -> GradedHom:
    return OrbitCategory(F).hom(x, y, max_grade)


def orbit_compose(F: Functor, g: GradedMorphism, f: GradedMorphism) -> GradedMorphism:
    return OrbitCategory(F).compose(g, f)


def grade_zero(A: OrbitCategory) -> Report:
    """The grade-0 morphisms form a copy of C."""
    C = A.base
    r = Report()
    for (x, y), labels in C.homs.items():
        got = tuple(m.carrier for m in A.hom(x, y, 0).grades[0])
        if got != tuple(labels):
            r.add("grade-zero", f"grade 0 of ({x}, {y}) differs from C", pair=(x, y))
    for (g, f), h in C.table.items():
        gm = GradedMorphism(C.src(g), C.dst(g), 0, g)
        fm = GradedMorphism(C.src(f), C.dst(f), 0, f)
        if A.compose(gm, fm).carrier != h:
            r.add("grade-zero", f"grade-0 composite {g} o {f} differs from C")
    return r


def check_composition(A: OrbitCategory, triples: int = 500, max_grade: int = 3, seed: int = 0) -> Report:
    """Associativity, grade additivity, units and functoriality of F on random composable triples."""
    rng = random.Random(seed)
    r = Report()
    homs = {(x, y): [m for g in A.hom(x, y, max_grade).grades for m in g] for x in A.objects for y in A.objects}
    starts = [(x, y) for (x, y), ms in homs.items() if ms]
    if not starts:
        return r
    done = tries = 0
    while done < triples and tries < 50 * triples:
        tries += 1
        x, y = rng.choice(starts)
        f = rng.choice(homs[(x, y)])
        zs = [z for z in A.objects if homs[(y, z)]]
        if not zs:
            continue
        z = rng.choice(zs)
        g = rng.choice(homs[(y, z)])
        ws = [w for w in A.objects if homs[(z, w)]]
        if not ws:
            continue
        h = rng.choice(homs[(z, rng.choice(ws))])
        done += 1
        left = A.compose(h, A.compose(g, f))
        right = A.compose(A.compose(h, g), f)
        if left != right:
            r.add("associativity", f"{h!r} o {g!r} o {f!r} brackets differently", triple=(f, g, h))
        if left.grade != f.grade + g.grade + h.grade:
            r.add("grade-additivity", f"grade of {h!r} o {g!r} o {f!r} is {left.grade}")
        if A.omega_mor(A.compose(g, f)) != A.compose(A.omega_mor(g), A.omega_mor(f)):
            r.add("omega-functor", f"F is not functorial on {g!r} o {f!r}", pair=(f, g))
        for m in (f, g, h):
            if A.compose(A.identity(m.dst), m) != m or A.compose(m, A.identity(m.src)) != m:
                r.add("unit", f"identities do not act trivially on {m!r}", morphism=m)
    return r


@dataclass
class OrbitWellPointing:
    category: OrbitCategory
    report: Report
    checked_to: dict

    @property
    def ok(self) -> bool:
        return self.report.ok


def orbit_well_pointing(F: Functor, max_grade: Optional[int] = None) -> OrbitWellPointing:
    """theta_X = (1, id_FX) and its certificate.

    Well-pointedness is checked per object. Naturality against (n, f) only
    depends on the carrier of f, and carriers repeat once F^n X is periodic,
    so every object is checked up to the end of its first period (or further if
    ``max_grade`` asks for it); ``checked_to`` records the bound used.
    """
    A = OrbitCategory(F)
    r = Report()
    for x in A.objects:
        left, right = A.theta(A.omega_obj(x)), A.omega_mor(A.theta(x))
        if left != right:
            r.add("well-pointed", f"theta at F({x}) differs from F(theta_{x})", object=x, left=left, right=right)
    checked = {}
    for x in A.objects:
        orb = detect_orbit(F, x)
        bound = max(orb.preperiod + orb.period - 1, max_grade or 0)
        checked[x] = bound
        for y in A.objects:
            for grade in A.hom(x, y, bound).grades:
                for m in grade:
                    lhs = A.compose(A.theta(y), m)
                    rhs = A.compose(A.omega_mor(m), A.theta(x))
                    if lhs != rhs:
                        r.add("naturality", f"theta is not natural on {m!r}", morphism=m, left=lhs, right=rhs)
    return OrbitWellPointing(A, r, checked)


def orbit_factorisation_probe(F: Functor, target: WellPointedEndo, H: Functor, max_grade: int = 3) -> Report:
    """Bounded-grade check that (n, f) |-> H(f) o phi^(n) is a functor sending theta to phi.

    ``target`` is a well-pointed (G, phi) on D and H: C -> D satisfies H F = G H.
    No completeness claim is made: only grades up to the bound are examined.
    """
    A = OrbitCategory(F)
    D = target.category
    r = Report()
    for u in A.base.labels:
        if H.mor(F.mor(u)) != target.omega.mor(H.mor(u)):
            r.add("intertwine", f"H F({u}) != G H({u})", morphism=u)
    if not r.ok:
        return r

    def image(m: GradedMorphism):
        return D.compose(H.mor(m.carrier), target.theta_power(H.obj(m.src), m.grade))

    ms = A.graded_morphisms(max_grade)
    for x in A.objects:
        if image(A.theta(x)) != target.theta[H.obj(x)]:
            r.add("point", f"theta_{x} is not sent to phi", object=x)
    by_src = {}
    for m in ms:
        by_src.setdefault(m.src, []).append(m)
    for f in ms:
        for g in by_src.get(f.dst, ()):
            if f.grade + g.grade > max_grade:
                continue
            if image(A.compose(g, f)) != D.compose(image(g), image(f)):
                r.add("factor-compose", f"image of {g!r} o {f!r} is not the composite", pair=(f, g))
    return r


def sample_graded(A: OrbitCategory, count: int, max_grade: int, seed: int = 0) -> list[GradedMorphism]:
    rng = random.Random(seed)
    pool = A.graded_morphisms(max_grade)
    return [rng.choice(pool) for _ in range(count)] if pool else []
