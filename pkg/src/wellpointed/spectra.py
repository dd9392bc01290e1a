"""Spectra for an endofunctor, the shift, spectrification and suspension spectra.

A spectrum is stored like an ind-object: ep-presented levels ``X_n`` of some
level category ``K`` together with structure maps ``sigma_n: X_n -> Omega X_(n+1)``.
``K`` is either a :class:`~wellpointed.core.FiniteCategory` with a
:class:`~wellpointed.core.Functor`, or an :class:`~wellpointed.ind.IndCategory`
with the extended functor; every function here only uses the category protocol.

Morphisms of spectra are ep families of level morphisms. Hom-objects are only
computed into Omega-spectra: there ``f_n`` is determined by ``f_(n+1)``, and
the hom is the limit of a finite ep tower. Into other spectra the set of
compatible families can be uncountable, so the request is refused.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import lcm
from typing import Any, Callable, Optional, Sequence

from .core import CategoryError, FiniteCategory, Functor, Report, identity_functor, inverse, is_iso
from .hom import FinSet, FinVec
from .localise import theta_hat
from .ind import HatFunctor, IndCategory, IndObject, find_ind_iso, make_ind
from .periodic import EPTower, SequenceError, find_cycle, functor_orbit, minimal_presentation, sequential_limit, stage_index


@dataclass(frozen=True)
class Spectrum:
    levels: tuple
    sigmas: tuple
    preperiod: int
    period: int

    def index(self, n: int) -> int:
        return stage_index(n, self.preperiod, self.period)

    def level(self, n: int):
        return self.levels[self.index(n)]

    def sigma(self, n: int):
        return self.sigmas[self.index(n)]

    @property
    def length(self) -> int:
        return self.preperiod + self.period

    def __repr__(self):
        return f"Spectrum({', '.join(map(str, self.levels))}; q={self.preperiod}, p={self.period})"


def _minimal(values: Sequence, q: int, p: int) -> tuple[list, int, int]:
    q2, p2 = minimal_presentation(list(values), q, p)
    return [values[stage_index(k, q, p)] for k in range(q2 + p2)], q2, p2


def make_spectrum(K, omega, levels: Sequence, sigmas: Sequence, preperiod: int, period: int) -> Spectrum:
    """Validated spectrum in minimal presentation."""
    n = preperiod + period
    if period < 1 or len(levels) != n or len(sigmas) != n:
        raise CategoryError("a spectrum needs q + p levels and structure maps with p >= 1")
    for i, s in enumerate(sigmas):
        j = i + 1 if i + 1 < n else preperiod
        want = (levels[i], omega.obj(levels[j]))
        if (K.src(s), K.dst(s)) != want:
            raise CategoryError(f"sigma_{i} is not a morphism {want[0]!r} -> {want[1]!r}")
    stages, q, p = _minimal(list(zip(levels, sigmas)), preperiod, period)
    return Spectrum(tuple(s[0] for s in stages), tuple(s[1] for s in stages), q, p)


def is_omega_spectrum(K, X: Spectrum) -> bool:
    return all(is_iso(K, s) for s in X.sigmas)


@dataclass(frozen=True)
class SpMorphism:
    """Components ``f_n: X_n -> Y_n`` in minimal ep presentation."""

    src: Spectrum
    dst: Spectrum
    comps: tuple
    preperiod: int
    period: int

    def component(self, n: int):
        return self.comps[stage_index(n, self.preperiod, self.period)]

    def __repr__(self):
        return f"SpMorphism({list(self.comps)}; q={self.preperiod}, p={self.period})"


def joint(*spectra) -> tuple[int, int]:
    return max(s.preperiod for s in spectra), lcm(*(s.period for s in spectra))


def sp_morphism(X: Spectrum, Y: Spectrum, component: Callable[[int], Any], q: int, p: int) -> SpMorphism:
    values = [component(n) for n in range(q + p)]
    comps, q2, p2 = _minimal(values, q, p)
    return SpMorphism(X, Y, tuple(comps), q2, p2)


def check_sp_morphism(K, omega, f: SpMorphism) -> Report:
    """sigma^Y_n o f_n = Omega(f_(n+1)) o sigma^X_n at every presented stage."""
    X, Y = f.src, f.dst
    q, p = joint(X, Y)
    q, p = max(q, f.preperiod), lcm(p, f.period)
    r = Report()
    for n in range(q + p):
        fn = f.component(n)
        if (K.src(fn), K.dst(fn)) != (X.level(n), Y.level(n)):
            r.add("spectrum-map-typing", f"component {n} is not a morphism {X.level(n)!r} -> {Y.level(n)!r}", stage=n)
            continue
        left = K.compose(Y.sigma(n), fn)
        right = K.compose(omega.mor(f.component(n + 1)), X.sigma(n))
        if left != right:
            r.add("spectrum-map", f"structure square fails at level {n}", stage=n, left=left, right=right)
    return r


class SpectrumCategory:
    """Spectra over a level category, on a chosen list of objects.

    Hom-objects are computed only into Omega-spectra (see the module docs).
    """

    def __init__(self, K, omega, objects: Sequence[Spectrum] = (), name: Optional[str] = None):
        self.levels = K
        self.omega = omega
        self.enrichment = K.enrichment
        self.objects = tuple(objects)
        self.name = name or "Sp"
        self._homs = {}
        self._limits = {}

    def with_objects(self, objects) -> "SpectrumCategory":
        out = SpectrumCategory(self.levels, self.omega, objects, self.name)
        out._homs, out._limits = self._homs, self._limits
        return out

    def _limit(self, X: Spectrum, Y: Spectrum):
        key = (X, Y)
        if key in self._limits:
            return self._limits[key]
        K, om = self.levels, self.omega
        q, p = joint(X, Y)
        inv = []
        for n in range(q + p):
            s = inverse(K, Y.sigma(n))
            if s is None:
                raise CategoryError(f"the target is not an Omega-spectrum (sigma_{n} is not invertible); "
                                    "compatible families into it are not a finite hom-object")
            inv.append(s)
        carriers = [K.hom(X.level(n), Y.level(n)) for n in range(q + p)]

        def down(n):
            return lambda f: K.compose(inv[n], K.compose(om.mor(f), X.sigma(n)))

        tower = EPTower(carriers, [down(n) for n in range(q + p)], q, p)
        lim = sequential_limit(tower)
        self._limits[key] = (lim, q, p)
        return self._limits[key]

    def from_limit(self, X: Spectrum, Y: Spectrum, e) -> SpMorphism:
        lim, q, p = self._limit(X, Y)
        return sp_morphism(X, Y, lambda n: lim.leg(n, e), q, p)

    def hom(self, X: Spectrum, Y: Spectrum):
        key = (X, Y)
        if key in self._homs:
            return self._homs[key]
        lim, q, p = self._limit(X, Y)
        image = lim.carrier
        if isinstance(image, FinSet):
            h = FinSet(tuple(self.from_limit(X, Y, e) for e in image))
        else:
            h = FinVec(tuple(self.from_limit(X, Y, e) for e in image.basis), image.ambient,
                       lambda f, image=image, q=q: image.coords(f.component(q)),
                       lambda c, image=image, X=X, Y=Y: self.from_limit(X, Y, image.build(c)))
        self._homs[key] = h
        return h

    def identity(self, X: Spectrum) -> SpMorphism:
        return sp_morphism(X, X, lambda n: self.levels.identity(X.level(n)), X.preperiod, X.period)

    def compose(self, g: SpMorphism, f: SpMorphism) -> SpMorphism:
        if f.dst != g.src:
            raise CategoryError("spectrum morphisms are not composable")
        q = max(f.preperiod, g.preperiod, f.src.preperiod, g.dst.preperiod)
        p = lcm(f.period, g.period)
        return sp_morphism(f.src, g.dst, lambda n: self.levels.compose(g.component(n), f.component(n)), q, p)

    def src(self, f: SpMorphism) -> Spectrum:
        return f.src

    def dst(self, f: SpMorphism) -> Spectrum:
        return f.dst


# -- shift, levelwise Omega and sigma -------------------------------------------------

class Shift:
    """(SX)_n = X_(n+1)."""

    name = "S"

    def __init__(self, cat: SpectrumCategory):
        self.src = self.dst = cat

    def obj(self, X: Spectrum) -> Spectrum:
        q = max(X.preperiod - 1, 0)
        n = q + X.period
        return make_spectrum(self.src.levels, self.src.omega, [X.level(k + 1) for k in range(n)],
                             [X.sigma(k + 1) for k in range(n)], q, X.period)

    def mor(self, f: SpMorphism) -> SpMorphism:
        q = max(f.preperiod - 1, 0)
        return sp_morphism(self.obj(f.src), self.obj(f.dst), lambda n: f.component(n + 1), q, f.period)


class LevelOmega:
    """Omega applied levelwise; the structure maps become Omega(sigma_n)."""

    name = "Omega"

    def __init__(self, cat: SpectrumCategory):
        self.src = self.dst = cat

    def obj(self, X: Spectrum) -> Spectrum:
        om = self.src.omega
        return make_spectrum(self.src.levels, om, [om.obj(x) for x in X.levels], [om.mor(s) for s in X.sigmas],
                             X.preperiod, X.period)

    def mor(self, f: SpMorphism) -> SpMorphism:
        om = self.src.omega
        return sp_morphism(self.obj(f.src), self.obj(f.dst), lambda n: om.mor(f.component(n)), f.preperiod, f.period)


class Composite:
    def __init__(self, first, second, name: Optional[str] = None):
        self.first, self.second = first, second
        self.src, self.dst = first.src, second.dst
        self.name = name or f"{second.name}{first.name}"

    def obj(self, X):
        return self.second.obj(self.first.obj(X))

    def mor(self, f):
        return self.second.mor(self.first.mor(f))


def sigma_component(cat: SpectrumCategory, X: Spectrum) -> SpMorphism:
    """sigma_X: X -> Omega S X, with components sigma_n."""
    target = Composite(Shift(cat), LevelOmega(cat)).obj(X)
    return sp_morphism(X, target, X.sigma, X.preperiod, X.period)


@dataclass
class SpectrumEndofunctors:
    shift: Shift
    omega: LevelOmega
    omega_shift: Composite
    sigma: Callable[[Spectrum], SpMorphism]
    certificate: Report


def spectrum_endofunctors(cat: SpectrumCategory, spectra: Sequence[Spectrum] = (), morphisms: Sequence[SpMorphism] = (),
                          sigma: Optional[Callable[[Spectrum], SpMorphism]] = None) -> SpectrumEndofunctors:
    """S, levelwise Omega and sigma, certified on the given spectra and morphisms.

    The certificate checks Omega S = S Omega as data, that each sigma_X is a map
    of spectra, naturality of sigma against ``morphisms``, and well-pointedness
    sigma_(Omega S X) = Omega S(sigma_X). ``sigma`` may be overridden to test
    planted components.
    """
    S, Om = Shift(cat), LevelOmega(cat)
    OS, SO = Composite(S, Om, "OmegaS"), Composite(Om, S, "SOmega")
    sig = sigma or (lambda X: sigma_component(cat, X))
    K = cat.levels
    r = Report()
    for X in spectra:
        if OS.obj(X) != SO.obj(X):
            r.add("commute", f"Omega S != S Omega on {X!r}", spectrum=X)
        sx = sig(X)
        for v in check_sp_morphism(K, cat.omega, sx).violations:
            r.add("sigma-map", f"sigma_X is not a map of spectra: {v.message}", spectrum=X, stage=v.witness.get("stage"))
        if not _same_family(sig(OS.obj(X)), OS.mor(sx)):
            r.add("well-pointed", f"sigma_(Omega S X) != Omega S(sigma_X) for {X!r}", spectrum=X)
    for f in morphisms:
        if OS.obj(f.src) != SO.obj(f.src) or OS.mor(f) != SO.mor(f):
            r.add("commute", "Omega S != S Omega on a morphism", morphism=f)
        left = cat.compose(sig(f.dst), f)
        right = cat.compose(OS.mor(f), sig(f.src))
        if not _same_family(left, right):
            r.add("naturality", "sigma is not natural at a morphism", morphism=f)
    return SpectrumEndofunctors(S, Om, OS, sig, r)


def _same_family(f: SpMorphism, g: SpMorphism) -> bool:
    q = max(f.preperiod, g.preperiod)
    p = lcm(f.period, g.period)
    return all(f.component(n) == g.component(n) for n in range(q + p))


# -- constructions of spectra -----------------------------------------------------------

def theta_embedding(wp, x) -> Spectrum:
    """Theta(x): x at every level, structure maps theta_x."""
    return Spectrum((x,), (wp.theta[x],), 0, 1)


def theta_embedding_ind(wp, I: IndCategory, A: IndObject, omega_hat: Optional[HatFunctor] = None) -> Spectrum:
    """Theta on an ind-object, with the extended point as structure map."""
    return Spectrum((A,), (theta_hat(wp, I, A, omega_hat),), 0, 1)


def theta_morphism(src: Spectrum, dst: Spectrum, u) -> SpMorphism:
    return SpMorphism(src, dst, (u,), 0, 1)


class Powers:
    """Lazily computed powers Omega^k as functors."""

    def __init__(self, omega: Functor):
        self.omega = omega
        self._table = [identity_functor(omega.src)]

    def __getitem__(self, k: int) -> Functor:
        while len(self._table) <= k:
            self._table.append(self._table[-1].then(self.omega))
        return self._table[k]


def spectrify_level(omega: Functor, X: Spectrum, n: int, powers: Optional[Powers] = None) -> IndObject:
    """colim(X_n -> Omega X_(n+1) -> Omega^2 X_(n+2) -> ...) as an ind-object."""
    C = omega.src
    qf, pf = functor_orbit(omega)
    q = max(X.preperiod - n, qf, 0)
    p = lcm(X.period, pf)
    powers = powers or Powers(omega)
    levels = [powers[k].obj(X.level(n + k)) for k in range(q + p)]
    maps = [powers[k].mor(X.sigma(n + k)) for k in range(q + p)]
    return make_ind(C, levels, maps, q, p)


def spectrify(omega: Functor, X: Spectrum, I: Optional[IndCategory] = None) -> tuple[Spectrum, IndCategory, HatFunctor]:
    """Spectrification of a spectrum over C, as an Omega-spectrum over ind-objects.

    Returns the spectrum together with the ind-category and extended functor it
    lives over.
    """
    C = omega.src
    if not isinstance(C, FiniteCategory):
        raise CategoryError("spectrify takes a spectrum whose levels are objects of a finite category")
    I = I or IndCategory(C)
    H = HatFunctor(omega, I)
    powers = Powers(omega)
    levels = [spectrify_level(omega, X, n, powers) for n in range(X.length + 1)]
    sigmas = []
    for n in range(X.length):
        A, B = levels[n], H.obj(levels[n + 1])
        a = max(A.preperiod, B.preperiod, levels[n + 1].preperiod)
        # stage a of A is Omega^a X_(n+a); stage a of Omega(A_(n+1)) is Omega^(a+1) X_(n+1+a)
        sigmas.append(I.from_stage(A, B, a, a, A.transition(a)))
    if levels[X.length] != levels[X.preperiod]:
        raise SequenceError("spectrified levels failed to close up")
    return make_spectrum(I, H, levels[: X.length], sigmas, X.preperiod, X.period), I, H


def spectrify_morphism(omega: Functor, f: SpMorphism, Xs: Spectrum, Ys: Spectrum, I: IndCategory) -> SpMorphism:
    """Spectrification of a map of spectra over C: stage k of level n is Omega^k(f_(n+k))."""
    X, Y = f.src, f.dst
    q, p = max(X.preperiod, Y.preperiod, f.preperiod), lcm(X.period, Y.period, f.period)
    powers = Powers(omega)

    def comp(n):
        A, B = Xs.level(n), Ys.level(n)
        a = max(A.preperiod, B.preperiod)
        return I.from_stage(A, B, a, a, powers[a].mor(f.component(n + a)))

    return sp_morphism(Xs, Ys, comp, max(q, Xs.preperiod, Ys.preperiod), lcm(p, Xs.period, Ys.period))


class ColimitRefused(CategoryError):
    pass


def join_oracle(P: FiniteCategory) -> Callable[[IndObject], Any]:
    """Sequential colimits in a finite poset: the least upper bound of the levels."""

    def realise(A: IndObject):
        levels = set(A.levels)
        uppers = [u for u in P.objects if all(P.homs[(x, u)] for x in levels)]
        least = [u for u in uppers if all(P.homs[(u, v)] for v in uppers)]
        if not least:
            raise ColimitRefused(f"no join of {sorted(map(str, levels))}")
        return least[0]
    return realise


def representable_oracle(I: IndCategory) -> Callable[[IndObject], Any]:
    """Any C: an object c with embed(c) isomorphic to the ind-object, if one exists."""

    def realise(A: IndObject):
        for c in I.base.objects:
            if find_ind_iso(I, A, I.embed(c)) is not None:
                return c
        raise ColimitRefused(f"{A!r} is not isomorphic to an object of the category")
    return realise


def classical_spectrification(omega: Functor, X: Spectrum, oracle: Optional[Callable[[IndObject], Any]]) -> Spectrum:
    """Spectrify, then realise every level as an object of C via ``oracle``."""
    if oracle is None:
        raise ColimitRefused("no colimit oracle for this category")
    C = omega.src
    Xs, I, H = spectrify(omega, X)
    objs = [oracle(A) for A in Xs.levels]
    isos = []
    for A, c in zip(Xs.levels, objs):
        u = find_ind_iso(I, I.embed(c), A)
        if u is None:
            raise ColimitRefused(f"oracle answer {c!r} is not a colimit of {A!r}")
        isos.append(u)
    sigmas = []
    n = Xs.length
    for i in range(n):
        j = i + 1 if i + 1 < n else Xs.preperiod
        back = inverse(I, H.mor(isos[j]))
        m = I.compose(back, I.compose(Xs.sigmas[i], isos[i]))
        sigmas.append(m.rep)
    return make_spectrum(C, omega, objs, sigmas, Xs.preperiod, Xs.period)


def sigma_infinity(adj, x) -> Spectrum:
    """Sigma^inf(x)_n = Sigma^n x with the units as structure maps."""
    C = adj.left.src
    sigma = adj.left
    q, p = find_cycle(sigma.obj, x)
    levels = [x]
    for _ in range(q + p - 1):
        levels.append(sigma.obj(levels[-1]))
    return make_spectrum(C, adj.right, levels, [adj.unit[y] for y in levels], q, p)


def sigma_infinity_morphism(adj, u, X: Spectrum, Y: Spectrum) -> SpMorphism:
    sigma = adj.left
    q, p = joint(X, Y)

    def comp(n):
        f = u
        for _ in range(n):
            f = sigma.mor(f)
        return f
    return sp_morphism(X, Y, comp, q, p)


def free_loop(adj, x) -> IndObject:
    """colim(x -> Omega Sigma x -> Omega^2 Sigma^2 x -> ...)."""
    omega, sigma = adj.right, adj.left
    C = omega.src
    state0 = (x, identity_functor(C).key())
    funcs = {state0[1]: identity_functor(C)}

    def step(state):
        y, key = state
        F = funcs[key].then(omega)
        funcs.setdefault(F.key(), F)
        return sigma.obj(y), F.key()

    q, p = find_cycle(step, state0)
    levels, maps = [], []
    state = state0
    for _ in range(q + p):
        y, key = state
        F = funcs[key]
        levels.append(F.obj(y))
        maps.append(F.mor(adj.unit[y]))
        state = step(state)
    return make_ind(C, levels, maps, q, p)
