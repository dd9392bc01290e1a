"""Stabilisation of an endofunctor and its comparison with spectra.

Objects of the stable category are pairs ``(c, i)`` with i an integer, and

    [(c, i), (d, j)] = colim_k K(Omega^(k+i) c, Omega^(k+j) d),   k >= max(0, -i, -j)

along Omega. The stages only depend on the pair of objects reached, so the
diagram is eventually periodic and the colimit is an eventual image. A morphism
is stored as its canonical representative at the pair's preperiod stage.

The level category ``K`` is either a finite category with a functor, or the
ind-category with the extended functor. Enumerations use a finite window of
degrees ``-W..W``; hom and composition work for every degree.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional, Sequence

from . import linalg
from .core import (CategoryError, EquivalenceResult, EnumerationLimits, FiniteCategory, Functor, MappedFunctor,
                   Report, check_equivalence, compose_functors, enumerate_functors, find_iso, find_natural_iso,
                   candidate_elements, hom_elements, inverse, is_iso, present, protocol_identity, validate_functor)
from .hom import FinSet, FinVec, map_is_bijective
from .ind import HatFunctor, IndCategory, IndMorphism, IndObject, embed
from .localise import (WellPointedEndo, omega_infinity, omega_infinity_ind, omega_infinity_ind_mor, theta_hat)
from .periodic import EPSequence, EventualImage, find_cycle, sequential_colimit
from .spectra import Spectrum, SpectrumCategory, SpMorphism, theta_embedding_ind

DEFAULT_WINDOW = 3


@dataclass(frozen=True)
class StabObject:
    base: Any
    degree: int

    def __repr__(self):
        return f"{self.base}[{self.degree}]"


@dataclass(frozen=True)
class StabMorphism:
    src: StabObject
    dst: StabObject
    stage: int
    rep: Any

    def __repr__(self):
        return f"{self.src}->{self.dst}:{self.rep}"


class _StabPair:
    def __init__(self, S: "StabCategory", a: StabObject, b: StabObject):
        K, om = S.levels, S.omega
        self.k0 = max(0, -a.degree, -b.degree)
        start = (S.power(a.base, self.k0 + a.degree), S.power(b.base, self.k0 + b.degree))
        q, p = find_cycle(lambda s: (om.obj(s[0]), om.obj(s[1])), start)
        carriers, state = [], start
        for _ in range(q + p):
            carriers.append(K.hom(*state))
            state = (om.obj(state[0]), om.obj(state[1]))
        seq = EPSequence(carriers, [om.mor] * (q + p), q, p)
        self.colimit = sequential_colimit(seq)
        self.stage = self.k0 + q

    @property
    def carrier(self):
        return self.colimit.carrier


class StabCategory:
    """The stable category of (K, Omega) on a window of degrees."""

    def __init__(self, levels, omega, base_objects: Optional[Sequence] = None, window: int = DEFAULT_WINDOW,
                 name: Optional[str] = None):
        self.levels = levels
        self.omega = omega
        self.enrichment = levels.enrichment
        self.window = window
        self.base_objects = tuple(levels.objects if base_objects is None else base_objects)
        self.objects = tuple(StabObject(c, i) for c in self.base_objects for i in range(-window, window + 1))
        self.name = name or (f"S({levels.name})" if getattr(levels, "name", None) else "S")
        self._powers = {}
        self._pairs = {}
        self._homs = {}

    def power(self, c, m: int):
        key = (c, m)
        if key not in self._powers:
            self._powers[key] = c if m == 0 else self.omega.obj(self.power(c, m - 1))
        return self._powers[key]

    def power_mor(self, f, m: int):
        for _ in range(m):
            f = self.omega.mor(f)
        return f

    def pair(self, a: StabObject, b: StabObject) -> _StabPair:
        key = (a, b)
        d = self._pairs.get(key)
        if d is None:
            d = self._pairs[key] = _StabPair(self, a, b)
        return d

    def normalise(self, a: StabObject, b: StabObject, f, k: int) -> StabMorphism:
        """The class of ``f: Omega^(k+i) c -> Omega^(k+j) d`` at absolute stage k."""
        d = self.pair(a, b)
        if k < d.k0:
            raise CategoryError(f"stage {k} is below the first stage {d.k0} of {a} -> {b}")
        return StabMorphism(a, b, d.stage, d.colimit.leg(k - d.k0, f))

    def hom(self, a: StabObject, b: StabObject):
        key = (a, b)
        h = self._homs.get(key)
        if h is not None:
            return h
        d = self.pair(a, b)
        image = d.carrier
        if isinstance(image, FinSet):
            h = FinSet(tuple(StabMorphism(a, b, d.stage, r) for r in image))
        else:
            h = FinVec(tuple(StabMorphism(a, b, d.stage, r) for r in image.basis), image.ambient,
                       lambda m, image=image: image.coords(m.rep),
                       lambda c, image=image, a=a, b=b, s=d.stage: StabMorphism(a, b, s, image.build(c)))
        self._homs[key] = h
        return h

    def identity(self, a: StabObject) -> StabMorphism:
        k0 = self.pair(a, a).k0
        return self.normalise(a, a, self.levels.identity(self.power(a.base, k0 + a.degree)), k0)

    def compose(self, g: StabMorphism, f: StabMorphism) -> StabMorphism:
        if f.dst != g.src:
            raise CategoryError("stable morphisms are not composable")
        s = max(f.stage, g.stage)
        F = self.power_mor(f.rep, s - f.stage)
        G = self.power_mor(g.rep, s - g.stage)
        return self.normalise(f.src, g.dst, self.levels.compose(G, F), s)

    def src(self, m: StabMorphism) -> StabObject:
        return m.src

    def dst(self, m: StabMorphism) -> StabObject:
        return m.dst

    # -- structure -----------------------------------------------------------------
    def reindex(self, m: StabMorphism, shift: int) -> StabMorphism:
        """The degree-shift isomorphism [(c,i),(d,j)] -> [(c,i+l),(d,j+l)]."""
        a, b = StabObject(m.src.base, m.src.degree + shift), StabObject(m.dst.base, m.dst.degree + shift)
        k = m.stage - shift
        k0 = self.pair(a, b).k0
        rep = m.rep
        if k < k0:
            rep, k = self.power_mor(rep, k0 - k), k0
        return self.normalise(a, b, rep, k)

    def omega_functor(self) -> MappedFunctor:
        """Omega on the stable category: (c, i) -> (Omega c, i)."""
        def mor(m):
            a = StabObject(self.omega.obj(m.src.base), m.src.degree)
            b = StabObject(self.omega.obj(m.dst.base), m.dst.degree)
            return self.normalise(a, b, self.omega.mor(m.rep), m.stage)
        return MappedFunctor(self, self, lambda x: StabObject(self.omega.obj(x.base), x.degree), mor, "Omega_S")

    def shift_functor(self, shift: int) -> MappedFunctor:
        """(c, i) -> (c, i + shift); shift -1 is the inverse of Omega."""
        return MappedFunctor(self, self, lambda x: StabObject(x.base, x.degree + shift),
                             lambda m: self.reindex(m, shift), f"[{shift}]")

    def omega_shift_iso(self, x: StabObject) -> StabMorphism:
        """The identity class Omega(c, i) -> (c, i + 1)."""
        a, b = StabObject(self.omega.obj(x.base), x.degree), StabObject(x.base, x.degree + 1)
        k0 = self.pair(a, b).k0
        return self.normalise(a, b, self.levels.identity(self.power(x.base, k0 + x.degree + 1)), k0)

    def universal(self) -> MappedFunctor:
        """K -> S, c -> (c, 0)."""
        return MappedFunctor(self.levels, self,
                             lambda c: StabObject(c, 0),
                             lambda u: self.normalise(StabObject(self.levels.src(u), 0),
                                                      StabObject(self.levels.dst(u), 0), u, 0),
                             "gamma_S")

    def materialise(self, objects: Optional[Sequence] = None) -> "StabPresentation":
        objects = list(self.objects if objects is None else objects)
        cat, to_mor, label_of = present(self, objects, repr, lambda x, y, i: f"{x}->{y}#{i}", self.name)
        return StabPresentation(self, cat, to_mor, label_of)


@dataclass
class StabPresentation:
    stab: StabCategory
    category: FiniteCategory
    to_morphism: dict
    label_of: dict

    def label(self, m: StabMorphism):
        if self.category.enrichment == "set":
            return self.label_of[m]
        return self.category.vec(m.src, m.dst, self.stab.hom(m.src, m.dst).coordinates(m))

    def morphism(self, f) -> StabMorphism:
        if self.category.enrichment == "set":
            return self.to_morphism[f]
        h = self.stab.hom(f.src, f.dst)
        return h.combination(f.coords, h.basis)

    def functor(self, G: MappedFunctor, name: Optional[str] = None) -> Functor:
        """A protocol endofunctor of the stable category restricted to the presented objects."""
        cat = self.category
        objs = {x: G.obj(x) for x in cat.objects}
        for x, y in objs.items():
            if y not in objs:
                raise CategoryError(f"{G.name} sends {x} outside the presented window")
        if cat.enrichment == "set":
            mors = {f: self.label(G.mor(self.morphism(f))) for f in cat.labels}
        else:
            mors = {f: self.label(G.mor(self.morphism(cat.basis_vec(f)))) for f in cat.labels}
        return Functor(cat, cat, objs, mors, name or G.name)

    def universal(self) -> Functor:
        """The universal functor K -> S into the presentation (K finite)."""
        S = self.stab
        K = S.levels
        g = S.universal()
        objs = {c: g.obj(c) for c in K.objects}
        if K.enrichment == "set":
            mors = {u: self.label(g.mor(u)) for u in K.labels}
        else:
            mors = {u: self.label(g.mor(K.basis_vec(u))) for u in K.labels}
        return Functor(K, self.category, objs, mors, "gamma_S")


def stable_category(omega: Functor, window: int = DEFAULT_WINDOW) -> StabCategory:
    return StabCategory(omega.src, omega, None, window)


# -- certificates ------------------------------------------------------------------

def check_degree_shift(S: StabCategory, shifts: Sequence[int] = (-1, 1), objects: Optional[Sequence] = None) -> Report:
    """Reindexing is a bijection on every hom and respects identities and composition."""
    objects = list(S.objects if objects is None else objects)
    r = Report()
    for l in shifts:
        for a in objects:
            if S.reindex(S.identity(a), l) != S.identity(StabObject(a.base, a.degree + l)):
                r.add("shift-identity", f"reindexing by {l} moves the identity of {a}", object=a, shift=l)
            for b in objects:
                a2, b2 = StabObject(a.base, a.degree + l), StabObject(b.base, b.degree + l)
                if not map_is_bijective(lambda m: S.reindex(m, l), S.hom(a, b), S.hom(a2, b2)):
                    r.add("shift-bijective", f"reindexing by {l} is not bijective on [{a}, {b}]", pair=(a, b), shift=l)
                for c in objects:
                    for f in hom_elements(S, a, b):
                        for g in hom_elements(S, b, c):
                            if S.reindex(S.compose(g, f), l) != S.compose(S.reindex(g, l), S.reindex(f, l)):
                                r.add("shift-compose", f"reindexing by {l} breaks {g} o {f}", shift=l)
    return r


def check_natural(S, F, G, comps: dict, objects: Sequence, law: str, r: Report) -> Report:
    """Each component is an isomorphism F x -> G x, natural on morphisms between ``objects``."""
    for x in objects:
        c = comps[x]
        if (S.src(c), S.dst(c)) != (F.obj(x), G.obj(x)) or not is_iso(S, c):
            r.add(law, f"component at {x} is not an isomorphism {F.obj(x)} -> {G.obj(x)}", object=x)
    for x in objects:
        for y in objects:
            for f in hom_elements(S, x, y):
                if S.compose(comps[y], F.mor(f)) != S.compose(G.mor(f), comps[x]):
                    r.add(law, f"naturality fails on {f}", morphism=f)
    return r


def omega_autoequivalence(S: StabCategory, objects: Optional[Sequence] = None) -> Report:
    """Omega_S and the shift by -1 are mutually inverse up to the identity classes."""
    if objects is None:
        objects = [x for x in S.objects if abs(x.degree) < S.window]
    objects = list(objects)
    om, down = S.omega_functor(), S.shift_functor(-1)
    ident = protocol_identity(S)
    r = Report()
    one = {x: S.omega_shift_iso(StabObject(x.base, x.degree - 1)) for x in objects}
    check_natural(S, compose_functors(down, om), ident, one, objects, "omega-after-shift", r)
    # Omega(c, i) -> (c, i + 1), then back down one degree
    other = {x: S.reindex(S.omega_shift_iso(x), -1) for x in objects}
    check_natural(S, compose_functors(om, down), ident, other, objects, "shift-after-omega", r)
    return r


# -- coreflections -------------------------------------------------------------------

def solve_factor(sub, big, incl: MappedFunctor, kappa, source, R, target):
    """The m: source -> R of ``sub`` with kappa o incl(m) = target, or None."""
    h = sub.hom(source, R)
    if isinstance(h, FinSet):
        for m in h:
            if big.compose(kappa, incl.mor(m)) == target:
                return m
        return None
    out = big.hom(incl.obj(source), big.dst(kappa))
    cols = [out.coordinates(big.compose(kappa, incl.mor(m))) for m in h.basis]
    mat = tuple(tuple(col[i] for col in cols) for i in range(out.dim))
    c = linalg.solve(mat, out.coordinates(target), h.dim)
    return None if c is None else h.element(c)


@dataclass
class Coreflection:
    """Right adjoint of a full inclusion, computed object by object from universal arrows."""

    sub: Any
    big: Any
    inclusion: MappedFunctor
    sub_objects: list
    arrows: dict = field(default_factory=dict)
    seed: int = 0

    def arrow(self, Y):
        """(R, counit: incl(R) -> Y) universal among arrows from included objects, or None."""
        if Y in self.arrows:
            return self.arrows[Y]
        found = None
        for R in self.sub_objects:
            for kappa in candidate_elements(self.big.hom(self.inclusion.obj(R), Y), self.seed):
                if all(map_is_bijective(lambda m, k=kappa: self.big.compose(k, self.inclusion.mor(m)),
                                        self.sub.hom(R2, R), self.big.hom(self.inclusion.obj(R2), Y))
                       for R2 in self.sub_objects):
                    found = (R, kappa)
                    break
            if found:
                break
        self.arrows[Y] = found
        return found

    def _need(self, Y):
        a = self.arrow(Y)
        if a is None:
            raise CategoryError(f"no universal arrow into {Y!r} from the included objects")
        return a

    def right_adjoint(self, name: str = "rho") -> MappedFunctor:
        def mor(f):
            R, k = self._need(self.big.src(f))
            R2, k2 = self._need(self.big.dst(f))
            m = solve_factor(self.sub, self.big, self.inclusion, k2, R, R2, self.big.compose(f, k))
            if m is None:
                raise CategoryError(f"{f!r} does not factor through the counit")
            return m
        return MappedFunctor(self.big, self.sub, lambda Y: self._need(Y)[0], mor, name)

    def unit(self, R):
        """R -> rho(incl R), the factorisation of the identity through the counit."""
        Y = self.inclusion.obj(R)
        R2, k = self._need(Y)
        return solve_factor(self.sub, self.big, self.inclusion, k, R, R2, self.big.identity(Y))

    def certificate(self, big_objects: Sequence) -> Report:
        """Universal arrows exist and both triangle identities hold."""
        r = Report()
        rho = self.right_adjoint()
        big, sub, incl = self.big, self.sub, self.inclusion
        for Y in big_objects:
            if self.arrow(Y) is None:
                r.add("universal-arrow", f"no universal arrow into {Y!r}", object=Y)
        if not r.ok:
            return r
        for R in self.sub_objects:
            u = self.unit(R)
            if u is None:
                r.add("unit", f"identity of {R!r} does not factor through the counit", object=R)
                continue
            k = self.arrow(incl.obj(R))[1]
            if big.compose(k, incl.mor(u)) != big.identity(incl.obj(R)):
                r.add("triangle-counit", f"counit o incl(unit) is not the identity at {R!r}", object=R)
        for Y in big_objects:
            R, k = self.arrow(Y)
            u = self.unit(R)
            if u is None:
                continue
            if sub.compose(rho.mor(k), u) != sub.identity(R):
                r.add("triangle-unit", f"rho(counit) o unit is not the identity at {Y!r}", object=Y)
        return r


# -- spectra versus the stable category ------------------------------------------------

def _dedupe(items) -> list:
    out = []
    for x in items:
        if x not in out:
            out.append(x)
    return out


def strict_spectra(wp: WellPointedEndo, I: IndCategory) -> list[Spectrum]:
    """Omega-spectra with identity structure maps, one per object on which Omega acts invertibly."""
    C = wp.category
    ev = EventualImage(FinSet(tuple(C.objects)), wp.omega.obj)
    out = []
    for x in ev.image:
        cycle, y = [x], ev.h_inv(x)
        while y != x:
            cycle.append(y)
            y = ev.h_inv(y)
        levels = tuple(embed(C, y) for y in cycle)
        out.append(Spectrum(levels, tuple(I.identity(l) for l in levels), 0, len(cycle)))
    return out


def check_functor_laws(F, objects: Sequence) -> Report:
    """Identities and composites between ``objects`` are preserved."""
    C, D = F.src, F.dst
    r = Report()
    for a in objects:
        if F.mor(C.identity(a)) != D.identity(F.obj(a)):
            r.add("functor-identity", f"{F.name} does not preserve the identity of {a!r}", object=a)
    for a in objects:
        for b in objects:
            fs = hom_elements(C, a, b)
            for c in objects:
                for g in hom_elements(C, b, c):
                    for f in fs:
                        if F.mor(C.compose(g, f)) != D.compose(F.mor(g), F.mor(f)):
                            r.add("functor-compose", f"{F.name} does not preserve {g!r} o {f!r}")
    return r


class Comparison:
    """The stable category and spectra over the ind-category, with Phi, Psi and both coreflections.

    Objects used for enumeration: the stable category on the embedded objects and
    their Omega^inf towers, the local objects (the towers), and the spectra that
    are strict on the invertible part of Omega or constant on a tower.
    """

    def __init__(self, wp: WellPointedEndo, window: int = 1, seed: int = 0):
        C = wp.category
        self.wp = wp
        self.I = I = IndCategory(C)
        self.H = H = HatFunctor(wp.omega, I)
        towers = {c: omega_infinity(wp, c) for c in C.objects}
        base = _dedupe([embed(C, c) for c in C.objects] + list(towers.values()))
        self.S = StabCategory(I, H, base, window, name="S")
        self.local_objects = _dedupe(towers.values())
        self.L = I.with_objects(self.local_objects)
        self._diag = {}
        self._theta = {}
        spectra = strict_spectra(wp, I) + [self.constant(self.diagonal(A)) for A in base]
        self.Sp = SpectrumCategory(I, H, _dedupe(spectra), name="Sp")
        self.phi = MappedFunctor(self.Sp, self.S, self._phi_obj, self._phi_mor, "Phi")
        self.psi = MappedFunctor(self.S, self.Sp, self._psi_obj, self._psi_mor, "Psi")
        self.iota = MappedFunctor(self.L, self.S, lambda R: StabObject(R, 0),
                                  lambda m: self.S.normalise(StabObject(m.src, 0), StabObject(m.dst, 0), m, 0), "iota")
        self.iota_sp = MappedFunctor(self.L, self.Sp, self.constant,
                                     lambda m: SpMorphism(self.constant(m.src), self.constant(m.dst), (m,), 0, 1),
                                     "iota_Sp")
        self.eta = Coreflection(self.L, self.S, self.iota, self.local_objects, seed=seed)
        self.epsilon = Coreflection(self.L, self.Sp, self.iota_sp, self.local_objects, seed=seed)

    # Omega^inf on ind-objects, the constant spectra and theta powers
    def diagonal(self, A: IndObject) -> IndObject:
        if A not in self._diag:
            self._diag[A] = omega_infinity_ind(self.wp, A)
        return self._diag[A]

    def constant(self, R: IndObject) -> Spectrum:
        return theta_embedding_ind(self.wp, self.I, R, self.H)

    def theta_power(self, A: IndObject, m: int) -> IndMorphism:
        key = (A, m)
        if key not in self._theta:
            if m == 0:
                self._theta[key] = self.I.identity(A)
            else:
                prev = self.theta_power(A, m - 1)
                self._theta[key] = self.I.compose(theta_hat(self.wp, self.I, prev.dst, self.H), prev)
        return self._theta[key]

    def diagonal_mor(self, m: IndMorphism) -> IndMorphism:
        return omega_infinity_ind_mor(self.wp, self.I, m, self.diagonal(m.src), self.diagonal(m.dst))

    def _phi_obj(self, X: Spectrum) -> StabObject:
        return StabObject(X.level(0), 0)

    def _phi_mor(self, f: SpMorphism) -> StabMorphism:
        return self.S.normalise(self._phi_obj(f.src), self._phi_obj(f.dst), f.component(0), 0)

    def _psi_obj(self, x: StabObject) -> Spectrum:
        return self.constant(self.diagonal(x.base))

    def _psi_mor(self, m: StabMorphism) -> SpMorphism:
        a, b, s = m.src, m.dst, m.stage
        ta = self.diagonal_mor(self.theta_power(a.base, s + a.degree))
        tb = self.diagonal_mor(self.theta_power(b.base, s + b.degree))
        back = inverse(self.I, tb)
        if back is None:
            raise CategoryError(f"Omega^inf of theta is not invertible at {b}")
        g = self.I.compose(back, self.I.compose(self.diagonal_mor(m.rep), ta))
        return SpMorphism(self._psi_obj(a), self._psi_obj(b), (g,), 0, 1)

    def stable_objects(self) -> list:
        return list(self.S.objects)

    def spectra(self) -> list:
        return list(self.Sp.objects)


@dataclass
class PropositionReport:
    """Each comparison statement as a computed boolean, with witnesses for failures."""

    items: dict
    witnesses: dict
    phi_is_equivalence: bool
    phi_inverse_psi: bool
    via_local: bool

    @property
    def agree(self) -> bool:
        """The two formulations of the equivalence give the same verdict."""
        return self.phi_inverse_psi == self.via_local

    @property
    def ok(self) -> bool:
        return all(self.items.values())

    def as_dict(self) -> dict:
        return {"items": dict(self.items), "phi_is_equivalence": self.phi_is_equivalence,
                "phi_inverse_psi": self.phi_inverse_psi, "via_local": self.via_local,
                "agree": self.agree, "witnesses": {k: _plain(v) for k, v in self.witnesses.items()}}


def _plain(v):
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    return repr(v)


def check_proposition_equivalence(wp: WellPointedEndo, window: int = 1, seed: int = 0) -> PropositionReport:
    """Coreflections onto the local objects, Phi, Psi and how they compare.

    ``phi_is_equivalence`` is Phi alone. ``phi_inverse_psi`` additionally asks
    for Phi Psi and Psi Phi to be isomorphic to identities. ``via_local`` asks
    for both coreflections to be equivalences.
    """
    K = Comparison(wp, window, seed)
    S_objs, Sp_objs, L_objs = K.stable_objects(), K.spectra(), K.local_objects
    items, wit = {}, {}

    def record(name, value, witness=None):
        items[name] = bool(value)
        if not value and witness is not None:
            wit[name] = witness

    ff = check_equivalence(K.iota, L_objs, [])
    record("local_inclusion_fully_faithful", ff.ok, ff.witness)
    r = K.eta.certificate(S_objs)
    record("eta_coreflection", r.ok, [v.message for v in r.violations])
    ff_sp = check_equivalence(K.iota_sp, L_objs, [])
    record("spectra_inclusion_fully_faithful", ff_sp.ok, ff_sp.witness)
    r = K.epsilon.certificate(Sp_objs)
    record("epsilon_coreflection", r.ok, [v.message for v in r.violations])
    r = check_functor_laws(K.psi, S_objs)
    record("psi_functor", r.ok, [v.message for v in r.violations])
    r = check_functor_laws(K.phi, Sp_objs)
    record("phi_functor", r.ok, [v.message for v in r.violations])

    ok_eta = items["eta_coreflection"]
    ok_eps = items["epsilon_coreflection"]
    if ok_eta:
        rho = K.eta.right_adjoint("eta")
        comps = find_natural_iso(compose_functors(K.psi, K.phi), compose_functors(rho, K.iota), S_objs, seed)
        record("phi_psi_is_eta", comps is not None)
    if ok_eps:
        rho_sp = K.epsilon.right_adjoint("epsilon")
        comps = find_natural_iso(compose_functors(K.phi, K.psi), compose_functors(rho_sp, K.iota_sp), Sp_objs, seed)
        record("psi_phi_is_epsilon", comps is not None)

    phi_eq = check_equivalence(K.phi, Sp_objs, S_objs)
    phi_psi = find_natural_iso(compose_functors(K.psi, K.phi), protocol_identity(K.S), S_objs, seed)
    psi_phi = find_natural_iso(compose_functors(K.phi, K.psi), protocol_identity(K.Sp), Sp_objs, seed)
    bullet1 = phi_eq.ok and phi_psi is not None and psi_phi is not None
    if not bullet1:
        wit["phi_inverse_psi"] = _inverse_witness(K, phi_eq)
    local_S = check_equivalence(K.iota, L_objs, S_objs)
    local_Sp = check_equivalence(K.iota_sp, L_objs, Sp_objs)
    bullet2 = local_S.ok and local_Sp.ok
    if not bullet2:
        wit["via_local"] = local_S.witness if not local_S.ok else local_Sp.witness
    if not phi_eq.ok:
        wit["phi_is_equivalence"] = phi_eq.witness
    items["equivalence_statements_agree"] = bullet1 == bullet2
    return PropositionReport(items, wit, phi_eq.ok, bullet1, bullet2)


def _inverse_witness(K: Comparison, phi_eq: EquivalenceResult) -> dict:
    """An object of S not isomorphic to Phi Psi of itself, with the two endomorphism sizes."""
    S = K.S
    for x in S.objects:
        y = K.phi.obj(K.psi.obj(x))
        if find_iso(S, x, y) is None:
            R = K.diagonal(x.base)
            return {"object": x, "stable_endomorphisms": S.hom(x, x).size,
                    "local_endomorphisms": K.I.hom(R, R).size}
    return {"reason": "no isomorphism class differs; the failure is on morphisms", "phi": phi_eq.witness}


# -- eventual image duality ----------------------------------------------------------

@dataclass
class DualityReport:
    """Sizes count isomorphism classes of objects on each side."""

    holds: bool
    limit_size: int
    colimit_size: int
    witness: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"holds": self.holds, "limit_size": self.limit_size, "colimit_size": self.colimit_size,
                "witness": _plain(self.witness)}


def loop_duality(carrier: FinSet, g) -> DualityReport:
    """For ... -> X -> X (limit) and X -> X -> ... (colimit) along g: is x |-> [x_0] a bijection?"""
    from .periodic import constant_loop_sequence, constant_loop_tower, sequential_limit
    lim = sequential_limit(constant_loop_tower(carrier, g))
    col = sequential_colimit(constant_loop_sequence(carrier, g))
    image = [col.leg(0, lim.leg(0, e)) for e in lim.carrier]
    ok = len(set(image)) == len(image) == col.carrier.size
    return DualityReport(ok, lim.carrier.size, col.carrier.size)


def eventual_image_duality_check(omega: Functor, window: int = 1) -> DualityReport:
    """Compare lim and colim of ... -> C -> C -> ... along Omega (set mode).

    The limit is the subcategory on which Omega acts invertibly (objects and
    morphisms in the eventual images). The colimit is the stable category in
    degree 0. The comparison sends a to (a, 0).
    """
    C = omega.src
    if C.enrichment != "set":
        raise CategoryError("the duality check is implemented for set-enriched categories only")
    objs = EventualImage(FinSet(tuple(C.objects)), omega.obj).image
    mors = EventualImage(FinSet(tuple(C.labels)), omega.mor).image
    S = stable_category(omega, window)
    lim_size = _iso_classes(C, list(objs))
    for a in objs:
        for b in objs:
            here = [f for f in mors if C.src(f) == a and C.dst(f) == b]
            target = S.hom(StabObject(a, 0), StabObject(b, 0))
            image = {S.normalise(StabObject(a, 0), StabObject(b, 0), f, 0) for f in here}
            if len(image) != len(here) or len(image) != target.size:
                return DualityReport(False, lim_size, _classes(S), {"reason": "not fully faithful", "hom": (a, b),
                                                                    "limit": len(here), "colimit": target.size})
    for x in S.objects:
        if not any(find_iso(S, StabObject(a, 0), x) is not None for a in objs):
            return DualityReport(False, lim_size, _classes(S), {"reason": "not essentially surjective", "object": x})
    return DualityReport(True, lim_size, _classes(S))


def _classes(S: StabCategory) -> int:
    return _iso_classes(S, [x for x in S.objects if x.degree == 0])


def _iso_classes(cat, objects: Sequence) -> int:
    reps = []
    for x in objects:
        if not any(find_iso(cat, r, x) is not None for r in reps):
            reps.append(x)
    return len(reps)


# -- universal property of the stable category ----------------------------------------

@dataclass
class HellerReport:
    """F': S -> D extending F along c |-> (c, 0) and commuting with the autoequivalences."""

    factor: Optional[Functor]
    report: Report
    competitors: Optional[int] = None
    unique: Optional[bool] = None
    refused: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.report.ok and self.unique is not False

    def as_dict(self) -> dict:
        return {"ok": self.ok, "competitors": self.competitors, "unique": self.unique, "refused": self.refused,
                "violations": [v.as_dict() for v in self.report.violations]}


def verify_heller_universal(omega: Functor, D: FiniteCategory, omega_D: Functor, F: Functor, window: int = 1,
                            limits: Optional[EnumerationLimits] = None) -> HellerReport:
    """Construct F' on a window of S and check it (set mode).

    F must intertwine the endofunctors strictly: F Omega = Omega_D F. For a
    negative degree a preimage of F(c) under a power of Omega_D is chosen.
    """
    C = omega.src
    r = Report()
    if C.enrichment != "set" or D.enrichment != "set":
        raise CategoryError("the universal property is checked in set mode only")
    for c in C.objects:
        if F.obj(omega.obj(c)) != omega_D.obj(F.obj(c)):
            r.add("intertwine", f"F Omega({c}) != Omega_D F({c})", object=c)
    for u in C.labels:
        if F.mor(omega.mor(u)) != omega_D.mor(F.mor(u)):
            r.add("intertwine", f"F Omega({u}) != Omega_D F({u})", morphism=u)
    auto = check_equivalence(omega_D)
    if not auto.ok:
        r.add("autoequivalence", "Omega_D is not an equivalence", **auto.witness)
    if not r.ok:
        return HellerReport(None, r)

    S = stable_category(omega, window)
    P = S.materialise()

    def dpow(x, n, mor=False):
        for _ in range(n):
            x = omega_D.mor(x) if mor else omega_D.obj(x)
        return x

    anchors = {}
    for x in P.category.objects:
        K = max(0, -x.degree)
        want = F.obj(S.power(x.base, K + x.degree))
        found = (want, 0, D.identity(want)) if K == 0 else None
        for d in ([] if found else D.objects):
            beta = find_iso(D, dpow(d, K), want)
            if beta is not None:
                found = (d, K, beta)
                break
        if found is None:
            r.add("preimage", f"no object of D lifts F({x.base}) to degree {x.degree}", object=x)
            return HellerReport(None, r)
        anchors[x] = found

    def lift(x, N):
        d, K, beta = anchors[x]
        return dpow(beta, N - K, mor=True)

    mors = {}
    for label in P.category.labels:
        m = P.morphism(label)
        a, ka, _ = anchors[m.src]
        b, kb, _ = anchors[m.dst]
        N = max(m.stage, ka, kb)
        top = F.mor(S.power_mor(m.rep, N - m.stage))
        target = D.compose(inverse(D, lift(m.dst, N)), D.compose(top, lift(m.src, N)))
        hits = [g for g in D.hom(a, b) if dpow(g, N, mor=True) == target]
        if len(hits) != 1:
            r.add("factor", f"{len(hits)} candidates for the image of {label}", morphism=label)
            return HellerReport(None, r)
        mors[label] = hits[0]
    Fp = Functor(P.category, D, {x: anchors[x][0] for x in P.category.objects}, mors, "F'")
    for v in validate_functor(Fp).violations:
        r.violations.append(v)
    gamma = P.universal()
    restricted = gamma.then(Fp)
    if restricted.key() != F.key():
        r.add("restriction", "F' o gamma differs from F",
              differing=[c for c in C.objects if restricted.obj(c) != F.obj(c)]
              + [m for m in C.labels if restricted.mor(m) != F.mor(m)])
    om_S = P.functor(S.omega_functor())
    if find_natural_iso(om_S.then(Fp), Fp.then(omega_D), P.category.objects) is None:
        r.add("commutes", "F' Omega_S is not isomorphic to Omega_D F'")
    out = HellerReport(Fp, r)
    if not r.ok:
        return out
    try:
        count, unique = 0, True
        for G in enumerate_functors(P.category, D, limits):
            if find_natural_iso(gamma.then(G), F, C.objects) is None:
                continue
            if find_natural_iso(om_S.then(G), G.then(omega_D), P.category.objects) is None:
                continue
            count += 1
            if find_natural_iso(G, Fp, P.category.objects) is None:
                unique = False
        out.competitors, out.unique = count, unique
    except CategoryError as exc:
        out.refused = str(exc)
    return out
