"""Well-pointed endofunctors and localisation along their point.

``L`` has the objects of ``C`` and hom-objects ``colim_m C(X, Omega^m Y)``
along postcomposition with theta. A morphism X -> Y of ``L`` is stored as its
canonical representative ``X -> Omega^q Y`` where q is the preperiod of the
orbit of Y; the same representatives are the ind-morphisms
``X -> Omega^inf Y`` computed in the ind-category.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Any, Optional

from . import linalg
from .core import (CategoryError, EnumerationLimits, FiniteCategory, Functor, NatTransformation, Report,
                   enumerate_functors, find_iso, find_natural_iso, hom_elements,
                   identity_functor, inverse, is_iso, present, validate_functor, validate_nat)
from .hom import FinSet, FinVec, map_is_bijective
from .ind import HatFunctor, IndCategory, IndMorphism, IndObject, make_ind, sequence_ind, stage_leg, transit
from .periodic import detect_orbit, functor_orbit


class WellPointedEndo:
    """A pointed endofunctor (omega, theta); construction checks well-pointedness."""

    def __init__(self, omega: Functor, theta: NatTransformation, check: bool = True):
        self.omega = omega
        self.theta = theta
        self.category = omega.src
        self._orbits = {}
        if check:
            r = check_well_pointed(omega, theta)
            if not r.ok:
                raise CategoryError("not well-pointed: " + "; ".join(v.message for v in r.violations))

    @property
    def enrichment(self) -> str:
        return self.category.enrichment

    def orbit(self, x):
        o = self._orbits.get(x)
        if o is None:
            o = self._orbits[x] = detect_orbit(self.omega, x)
        return o

    def power(self, x, m: int):
        for _ in range(m):
            x = self.omega.obj(x)
        return x

    def theta_power(self, x, m: int):
        """theta^(m)_x: x -> Omega^m x."""
        C = self.category
        f = C.identity(x)
        for _ in range(m):
            f = C.compose(self.theta[C.dst(f)], f)
        return f

    def omega_power_mor(self, f, m: int):
        for _ in range(m):
            f = self.omega.mor(f)
        return f


def check_well_pointed(omega: Functor, theta: NatTransformation) -> Report:
    """theta is natural and theta_(Omega x) = Omega(theta_x) for every x."""
    C = omega.src
    r = validate_nat(theta)
    if not r.ok:
        return r
    for x in C.objects:
        left, right = theta[omega.obj(x)], omega.mor(theta[x])
        if left != right:
            r.add("well-pointed", f"theta_(Omega {x}) != Omega(theta_{x})", object=x, left=left, right=right)
    return r


# -- the lemma ------------------------------------------------------------------

def algebra_structure(wp: WellPointedEndo, x) -> Optional[Any]:
    """The unique algebra structure Omega x -> x, which exists iff theta_x is invertible."""
    return inverse(wp.category, wp.theta[x])


def retractions(wp: WellPointedEndo, x) -> tuple[list, int]:
    """All f: Omega x -> x with f o theta_x = id, by brute force.

    Returns (solutions, free dimension). In set mode the list is exhaustive and
    the dimension is 0. In vect mode the solutions form an affine space: one
    particular solution is listed and the dimension of its direction is given.
    """
    C = wp.category
    t = wp.theta[x]
    ox = wp.omega.obj(x)
    idx = C.identity(x)
    if C.enrichment == "set":
        return [f for f in C.hom(ox, x) if C.compose(f, t) == idx], 0
    back, end = C.hom(ox, x), C.hom(x, x)
    cols = [end.coordinates(C.compose(b, t)) for b in back.basis]
    m = tuple(tuple(col[i] for col in cols) for i in range(end.dim))
    sol = linalg.solve(m, end.coordinates(idx), back.dim)
    if sol is None:
        return [], 0
    free = back.dim - (linalg.rank(m, back.dim) if back.dim and end.dim else 0)
    return [back.element(sol)], free


# -- Omega^inf --------------------------------------------------------------------

def omega_infinity(wp: WellPointedEndo, x) -> IndObject:
    """The ind-object x -> Omega x -> Omega^2 x -> ... along theta."""
    return sequence_ind(wp.category, wp.omega.obj, lambda y: wp.theta[y], x)


def theta_hat(wp: WellPointedEndo, I: IndCategory, A: IndObject, omega_hat=None) -> IndMorphism:
    """The extended point A -> Omega(A) as an ind-morphism."""
    H = omega_hat or HatFunctor(wp.omega, I)
    B = H.obj(A)
    a = max(A.preperiod, B.preperiod)
    return I.from_stage(A, B, a, a, wp.theta[A.level(a)])


def omega_infinity_ind(wp: WellPointedEndo, A: IndObject) -> IndObject:
    """Omega^inf of an ind-object: the diagonal with stages Omega^k A_k."""
    C = wp.category
    qf, pf = functor_orbit(wp.omega)
    q = max(A.preperiod, qf)
    p = lcm(A.period, pf)
    levels, maps = [], []
    power = identity_functor(C)
    for k in range(q + p):
        nxt = power.then(wp.omega)
        # theta at Omega^k A_(k+1) after Omega^k of the transition
        step = power.mor(A.transition(k))
        levels.append(power.obj(A.level(k)))
        maps.append(C.compose(wp.theta[C.dst(step)], step))
        power = nxt
    return make_ind(C, levels, maps, q, p)


def omega_infinity_ind_mor(wp: WellPointedEndo, I: IndCategory, m: IndMorphism,
                           src: Optional[IndObject] = None, dst: Optional[IndObject] = None) -> IndMorphism:
    """Omega^inf on an ind-morphism A -> B, stagewise Omega^k of its components."""
    A, B = m.src, m.dst
    DA = src or omega_infinity_ind(wp, A)
    DB = dst or omega_infinity_ind(wp, B)
    a = max(A.preperiod, B.preperiod, DA.preperiod, DB.preperiod)
    comp = I.component(m, a)          # A_a -> B_qB
    C = wp.category
    qb, pb = B.preperiod, B.period
    b = a if (a - qb) % pb == 0 else a + (pb - (a - qb) % pb)
    comp = C.compose(transit(C, B, qb, b), comp)     # A_a -> B_b
    f = wp.omega_power_mor(comp, a)                   # Omega^a A_a -> Omega^a B_b
    f = C.compose(wp.theta_power(C.dst(f), b - a), f)  # -> Omega^b B_b
    return I.from_stage(DA, DB, a, b, f)


# -- the localised category ---------------------------------------------------------

@dataclass(frozen=True)
class LocMorphism:
    src: Any
    dst: Any
    rep: Any

    def __repr__(self):
        return f"[{self.rep!r}]>{self.dst}"


class LocalisedCategory:
    """L_Omega(C): objects of C, hom(X, Y) = colim_m C(X, Omega^m Y)."""

    def __init__(self, wp: WellPointedEndo, name: Optional[str] = None):
        self.wp = wp
        self.base = wp.category
        self.enrichment = self.base.enrichment
        self.objects = self.base.objects
        self.name = name or (f"L({self.base.name})" if self.base.name else None)
        self.ind = IndCategory(self.base)
        self.towers = {y: omega_infinity(wp, y) for y in self.objects}
        self._homs = {}

    def stage(self, y) -> int:
        return self.towers[y].preperiod

    def normalise(self, x, y, f, m: int) -> LocMorphism:
        """Class of f: x -> Omega^m y."""
        X, Y = self.ind.embed(x), self.towers[y]
        return LocMorphism(x, y, self.ind.colim_normalise(X, Y, f, m))

    def hom(self, x, y):
        h = self._homs.get((x, y))
        if h is not None:
            return h
        image = self.ind.pair(self.ind.embed(x), self.towers[y]).col.image
        if isinstance(image, FinSet):
            h = FinSet(tuple(LocMorphism(x, y, r) for r in image))
        else:
            h = FinVec(tuple(LocMorphism(x, y, r) for r in image.basis), image.ambient,
                       lambda m, image=image: image.coords(m.rep),
                       lambda c, image=image, x=x, y=y: LocMorphism(x, y, image.build(c)))
        self._homs[(x, y)] = h
        return h

    def identity(self, x) -> LocMorphism:
        return self.normalise(x, x, self.base.identity(x), 0)

    def compose(self, g: LocMorphism, f: LocMorphism) -> LocMorphism:
        if f.dst != g.src:
            raise CategoryError("morphisms of L are not composable")
        qy = self.stage(f.dst)
        lifted = self.wp.omega_power_mor(g.rep, qy)
        return self.normalise(f.src, g.dst, self.base.compose(lifted, f.rep), qy + self.stage(g.dst))

    def src(self, m: LocMorphism):
        return m.src

    def dst(self, m: LocMorphism):
        return m.dst

    def gamma(self, u) -> LocMorphism:
        """Omega^inf: C -> L on a morphism."""
        C = self.base
        return self.normalise(C.src(u), C.dst(u), u, 0)

    # -- finite presentations ------------------------------------------------
    def materialise(self, objects=None) -> "Materialised":
        """A FiniteCategory on ``objects`` (default: all), with label bookkeeping."""
        objects = list(self.objects if objects is None else objects)
        cat, to_mor, label_of = present(self, objects, lambda m: f"[{m.rep}]>{m.dst}",
                                        lambda x, y, i: f"{x}>{y}#{i}", self.name)
        return Materialised(self, cat, to_mor, label_of)

    def skeleton_objects(self, seed: int = 0) -> list:
        """One object per isomorphism class, preferring objects where theta is invertible."""
        preferred = sorted(self.objects, key=lambda x: not is_iso(self.base, self.wp.theta[x]))
        reps = []
        for x in preferred:
            if not any(find_iso(self, r, x, seed) is not None for r in reps):
                reps.append(x)
        order = {x: i for i, x in enumerate(self.objects)}
        return sorted(reps, key=order.get)


@dataclass
class Materialised:
    """A finite presentation of L with the maps between labels and morphisms."""

    loc: LocalisedCategory
    category: FiniteCategory
    to_morphism: dict
    label_of: dict

    def label(self, m: LocMorphism):
        """Set mode: the label. Vect mode: the Vec in the presented category."""
        if self.category.enrichment == "set":
            return self.label_of[m]
        x, y = m.src, m.dst
        return self.category.vec(x, y, self.loc.hom(x, y).coordinates(m))

    def morphism(self, f) -> LocMorphism:
        if self.category.enrichment == "set":
            return self.to_morphism[f]
        h = self.loc.hom(f.src, f.dst)
        return h.combination(f.coords, h.basis)

    def gamma(self) -> Functor:
        """Omega^inf: C -> L as a functor into the presented category (full presentations only)."""
        C = self.loc.base
        objs = {x: x for x in C.objects}
        if C.enrichment == "set":
            mors = {u: self.label(self.loc.gamma(u)) for u in C.labels}
        else:
            mors = {u: self.label(self.loc.gamma(C.basis_vec(u))) for u in C.labels}
        return Functor(C, self.category, objs, mors, name="Omega^inf")


def localisation_category(wp: WellPointedEndo) -> LocalisedCategory:
    r = check_well_pointed(wp.omega, wp.theta)
    if not r.ok:
        raise CategoryError("localisation needs a well-pointed endofunctor")
    return LocalisedCategory(wp)


def theta_inverted(loc: LocalisedCategory) -> Report:
    """Every Omega^inf(theta_x) is invertible in L."""
    r = Report()
    for x in loc.objects:
        if inverse(loc, loc.gamma(loc.wp.theta[x])) is None:
            r.add("theta-inverted", f"Omega^inf(theta_{x}) is not invertible", object=x)
    return r


def induced_endo(mat: Materialised) -> WellPointedEndo:
    """(Omega, theta) transported to the presented localisation."""
    loc = mat.loc
    wp, L = loc.wp, mat.category
    objs = {x: wp.omega.obj(x) for x in L.objects}

    def image(f):
        m = mat.morphism(f)
        return mat.label(loc.normalise(wp.omega.obj(m.src), wp.omega.obj(m.dst), wp.omega.mor(m.rep), loc.stage(m.dst)))

    if L.enrichment == "set":
        mors = {f: image(f) for f in L.labels}
    else:
        mors = {f: image(L.basis_vec(f)) for f in L.labels}
    omega = Functor(L, L, objs, mors, name=wp.omega.name)
    theta = NatTransformation(identity_functor(L), omega, {x: mat.label(loc.gamma(wp.theta[x])) for x in L.objects},
                              name=wp.theta.name)
    return WellPointedEndo(omega, theta)


# -- the two hom formulas -------------------------------------------------------------

@dataclass
class HomAgreement:
    x: Any
    y: Any
    ind_size: int
    colim_size: int
    bijective: bool
    natural: bool

    @property
    def ok(self) -> bool:
        return self.bijective and self.natural


def hom_formula_agreement(wp: WellPointedEndo, loc: Optional[LocalisedCategory] = None) -> list[HomAgreement]:
    """Compare lim_n colim_m C(Omega^n x, Omega^m y) with colim_m C(x, Omega^m y).

    The comparison map restricts along the leg x -> Omega^inf x. Naturality is
    checked against every morphism of C acting on either side.
    """
    loc = loc or LocalisedCategory(wp)
    I, C = loc.ind, loc.base
    towers = loc.towers
    legs = {x: stage_leg(I, towers[x], 0) for x in C.objects}

    def compare(x, y, r: IndMorphism) -> LocMorphism:
        return LocMorphism(x, y, I.compose(r, legs[x]).rep)

    def omega_inf(u) -> IndMorphism:
        return omega_infinity_ind_mor(wp, I, _embedded(I, C, u), towers[C.src(u)], towers[C.dst(u)])

    out = []
    mors = [(u, omega_inf(u), loc.gamma(u)) for u in C.morphisms()]
    for x in C.objects:
        for y in C.objects:
            lhs, rhs = I.hom(towers[x], towers[y]), loc.hom(x, y)
            bij = map_is_bijective(lambda r: compare(x, y, r), lhs, rhs)
            natural = True
            elems = hom_elements(I, towers[x], towers[y])
            for u, hu, gu in mors:
                if C.dst(u) == x:       # precompose with u: x' -> x
                    for r in elems:
                        if compare(C.src(u), y, I.compose(r, hu)) != loc.compose(compare(x, y, r), gu):
                            natural = False
                if C.src(u) == y:       # postcompose with u: y -> y'
                    for r in elems:
                        if compare(x, C.dst(u), I.compose(hu, r)) != loc.compose(gu, compare(x, y, r)):
                            natural = False
            out.append(HomAgreement(x, y, lhs.size, rhs.size, bij, natural))
    return out


def _embedded(I: IndCategory, C, u) -> IndMorphism:
    X, Y = I.embed(C.src(u)), I.embed(C.dst(u))
    return IndMorphism(X, Y, u)


# -- universal property ------------------------------------------------------------------

@dataclass
class Factorisation:
    functor: Functor
    factor: Optional[Functor]
    strict: bool
    competitors: int
    unique: bool
    problems: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.factor is not None and self.strict and self.unique and not self.problems


@dataclass
class UniversalReport:
    target: str
    functors: int
    inverting: int
    factorisations: list

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.factorisations)

    def as_dict(self) -> dict:
        return {"target": self.target, "functors": self.functors, "inverting": self.inverting, "ok": self.ok,
                "failures": [{"functor": repr(f.functor.key()), "problems": f.problems,
                              "factor_found": f.factor is not None, "strict": f.strict, "unique": f.unique}
                             for f in self.factorisations if not f.ok]}


def factor_through(mat: Materialised, F: Functor) -> Functor:
    """F': L -> D with F' o Omega^inf = F, built from F(theta)^-1."""
    loc, wp, D = mat.loc, mat.loc.wp, F.dst
    inverses = {}

    def inv_theta(y, q):
        key = (y, q)
        if key not in inverses:
            g = inverse(D, F.mor(wp.theta_power(y, q)))
            if g is None:
                raise CategoryError(f"F does not invert theta at {y!r}")
            inverses[key] = g
        return inverses[key]

    L = mat.category
    objs = {x: F.obj(x) for x in L.objects}

    def image(f):
        m = mat.morphism(f)
        return D.compose(inv_theta(m.dst, loc.stage(m.dst)), F.mor(m.rep))

    if L.enrichment == "set":
        mors = {f: image(f) for f in L.labels}
    else:
        mors = {f: image(L.basis_vec(f)) for f in L.labels}
    return Functor(L, D, objs, mors, name=f"{F.name or 'F'}'")


def verify_localisation_universal(wp: WellPointedEndo, D: FiniteCategory,
                                  limits: Optional[EnumerationLimits] = None, seed: int = 0) -> UniversalReport:
    """Every theta-inverting F: C -> D factors through Omega^inf, uniquely up to iso."""
    limits = limits or EnumerationLimits.from_env()
    C = wp.category
    mat = LocalisedCategory(wp).materialise()
    gamma = mat.gamma()
    competitors = [(G, gamma.then(G)) for G in enumerate_functors(mat.category, D, limits)]
    total = inverting = 0
    results = []
    for F in enumerate_functors(C, D, limits):
        total += 1
        if not all(is_iso(D, F.mor(wp.theta[x])) for x in C.objects):
            continue
        inverting += 1
        problems = []
        Fp = factor_through(mat, F)
        v = validate_functor(Fp)
        if not v.ok:
            problems += [x.message for x in v.violations]
            results.append(Factorisation(F, None, False, 0, False, problems))
            continue
        strict = gamma.then(Fp) == F
        count, unique = 0, True
        for G, Gg in competitors:
            if find_natural_iso(Gg, F, C.objects, seed) is None:
                continue
            count += 1
            if find_natural_iso(G, Fp, mat.category.objects, seed) is None:
                unique = False
                problems.append(f"competitor {G.key()!r} is not isomorphic to the factorisation")
        if count == 0:
            problems.append("no enumerated functor L -> D restricts to F up to iso")
        results.append(Factorisation(F, Fp, strict, count, unique, problems))
    return UniversalReport(D.name or "D", total, inverting, results)


def idempotence(wp: WellPointedEndo):
    """Localising L at the induced point is an equivalence (Omega^inf Omega^inf = Omega^inf)."""
    from .core import check_equivalence
    mat = LocalisedCategory(wp).materialise()
    wp2 = induced_endo(mat)
    mat2 = LocalisedCategory(wp2).materialise()
    return check_equivalence(mat2.gamma())
