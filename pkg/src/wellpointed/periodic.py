"""Eventually periodic diagrams and their sequential (co)limits.

An ``EPSequence`` presents an N-indexed diagram of finite hom-objects by a
preperiod ``q`` and period ``p``: stage ``n`` is stored at index
``n`` if ``n < q + p`` and at ``q + (n - q) % p`` otherwise. Both the colimit of
such a sequence and the limit of such a tower reduce to the eventual image of
one loop endomap, which is where all the work happens.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Hashable, Sequence

from . import linalg
from .hom import FinSet, HomObject


class SequenceError(ValueError):
    pass


def find_cycle(step: Callable[[Any], Any], x0: Any) -> tuple[int, int]:
    """Brent's algorithm; minimal (preperiod, period) of x0, step(x0), ..."""
    power = lam = 1
    tortoise, hare = x0, step(x0)
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = step(hare)
        lam += 1
    tortoise = hare = x0
    for _ in range(lam):
        hare = step(hare)
    mu = 0
    while tortoise != hare:
        tortoise, hare = step(tortoise), step(hare)
        mu += 1
    return mu, lam


def iterate(step: Callable, x0, n: int) -> list:
    out = [x0]
    for _ in range(n - 1):
        out.append(step(out[-1]))
    return out


def stage_index(n: int, preperiod: int, period: int) -> int:
    if n < preperiod + period:
        return n
    return preperiod + (n - preperiod) % period


def minimal_presentation(values: Sequence, preperiod: int, period: int) -> tuple[int, int]:
    """Smallest (q, p) presenting the same eventually periodic value sequence."""
    def at(n):
        return values[stage_index(n, preperiod, period)]

    horizon = preperiod + 2 * period
    best_p = period
    for d in range(1, period + 1):
        if period % d == 0 and all(at(n) == at(n + d) for n in range(preperiod, preperiod + period)):
            best_p = d
            break
    q = preperiod
    while q > 0 and at(q - 1) == at(q - 1 + best_p):
        q -= 1
    assert horizon >= q
    return q, best_p


@dataclass(frozen=True)
class Orbit:
    """Iterates x, F x, F^2 x, ... with F^(q+p) x = F^q x, (q, p) minimal."""

    start: Hashable
    preperiod: int
    period: int
    points: tuple

    def __getitem__(self, n: int):
        return self.points[stage_index(n, self.preperiod, self.period)]

    @property
    def length(self) -> int:
        return self.preperiod + self.period


def orbit(step: Callable, x0) -> Orbit:
    q, p = find_cycle(step, x0)
    return Orbit(x0, q, p, tuple(iterate(step, x0, q + p)))


@dataclass(frozen=True)
class OrbitReport:
    """Object orbit of x, plus the orbit of (object, action on End(x)) pairs.

    The pair orbit is what the morphism-level loop check runs on: it closes once
    the iterated functor acts on the endomorphisms of x the same way again.
    """

    object_orbit: Orbit
    pair_preperiod: int
    pair_period: int

    @property
    def preperiod(self) -> int:
        return self.object_orbit.preperiod

    @property
    def period(self) -> int:
        return self.object_orbit.period

    @property
    def morphisms_close(self) -> bool:
        return self.pair_period % self.period == 0


def functor_orbit(F) -> tuple[int, int]:
    """Minimal (q, p) with F^(q+p) = F^q as functor data."""
    from .core import identity_functor
    cache = {}

    def step(key):
        G = cache[key].then(F)
        cache.setdefault(G.key(), G)
        return G.key()

    start = identity_functor(F.src)
    cache[start.key()] = start
    return find_cycle(step, start.key())


def detect_orbit(omega, x) -> OrbitReport:
    """Minimal (q, p) with omega^(q+p) x = omega^q x, with the morphism-level check."""
    from .core import hom_elements
    C = omega.src
    orb = orbit(omega.obj, x)
    ends = hom_elements(C, x, x)

    def step(state):
        y, images = state
        return omega.obj(y), tuple(omega.mor(f) for f in images)

    pq, pp = find_cycle(step, (x, tuple(ends)))
    return OrbitReport(orb, pq, pp)


# -- eventually periodic sequences --------------------------------------------

@dataclass
class EPSequence:
    """Stages ``carriers[i]`` with ``maps[i]: carriers[i] -> carriers[next(i)]``."""

    carriers: Sequence[HomObject]
    maps: Sequence[Callable]
    preperiod: int
    period: int

    def __post_init__(self):
        if self.period < 1:
            raise SequenceError("period must be at least 1")
        if len(self.carriers) != self.preperiod + self.period or len(self.maps) != len(self.carriers):
            raise SequenceError("need one carrier and one map per presented stage")

    @property
    def length(self) -> int:
        return self.preperiod + self.period

    def index(self, n: int) -> int:
        return stage_index(n, self.preperiod, self.period)

    def next_index(self, i: int) -> int:
        return i + 1 if i + 1 < self.length else self.preperiod

    def carrier(self, n: int) -> HomObject:
        return self.carriers[self.index(n)]

    def push(self, i: int, x, steps: int):
        """Image of x (at stored index i) after ``steps`` connecting maps; returns (index, value)."""
        for _ in range(steps):
            x = self.maps[i](x)
            i = self.next_index(i)
        return i, x

    def loop(self) -> Callable:
        """Composite of one full period, an endomap of the stage-q carrier."""
        q, p = self.preperiod, self.period

        def g(x):
            return self.push(q, x, p)[1]
        return g

    def check(self) -> list[str]:
        """Typing of every connecting map on carrier elements (basis in FinVec mode)."""
        problems = []
        for i, (c, m) in enumerate(zip(self.carriers, self.maps)):
            j = self.next_index(i)
            elems = c.elements if isinstance(c, FinSet) else c.basis
            for x in elems:
                try:
                    y = m(x)
                except Exception as exc:  # noqa: BLE001 - reported as a diagnostic
                    problems.append(f"map {i} fails on {x!r}: {exc}")
                    continue
                if y not in self.carriers[j]:
                    problems.append(f"map {i} sends {x!r} outside stage {j}")
        return problems


class EPTower(EPSequence):
    """Same storage; ``maps[i]`` goes from stage ``next(i)`` down to stage ``i``."""

    def loop(self) -> Callable:
        q, p = self.preperiod, self.period

        def g(x):
            for i in reversed(range(q, q + p)):
                x = self.maps[i](x)
            return x
        return g

    def down(self, x, frm: int, to: int):
        """Carry x from stage ``frm`` down to stage ``to`` (absolute stages)."""
        for n in range(frm - 1, to - 1, -1):
            x = self.maps[self.index(n)](x)
        return x

    def check(self) -> list[str]:
        problems = []
        for i, m in enumerate(self.maps):
            j = self.next_index(i)
            c = self.carriers[j]
            elems = c.elements if isinstance(c, FinSet) else c.basis
            for x in elems:
                try:
                    y = m(x)
                except Exception as exc:  # noqa: BLE001
                    problems.append(f"map {i} fails on {x!r}: {exc}")
                    continue
                if y not in self.carriers[i]:
                    problems.append(f"map {i} sends {x!r} outside stage {i}")
        return problems


class EventualImage:
    """Stable image E of an endomap g of a finite carrier, with g|E invertible.

    ``normalise(x) = (g|E)^-N g^N x`` is the canonical representative: it is
    independent of N past the stabilisation index and is the identity on E.
    """

    def __init__(self, carrier: HomObject, g: Callable):
        self.carrier = carrier
        self.g = g
        if isinstance(carrier, FinSet):
            current = set(carrier.elements)
            index = 0
            while True:
                nxt = {g(x) for x in current}
                if nxt == current:
                    break
                current = nxt
                index += 1
            self.index = index
            order = [x for x in carrier.elements if x in current]
            self.image = FinSet(tuple(order))
            self._h = {x: g(x) for x in order}
            self._hinv = {y: x for x, y in self._h.items()}
            if len(self._hinv) != len(self._h):
                raise SequenceError("endomap is not injective on its eventual image")
        else:
            G = carrier.matrix_of(g, carrier)
            n = carrier.dim
            power = linalg.identity(n)
            rank = n
            index = 0
            while True:
                nxt = linalg.matmul(G, power, ncols=n)
                r = linalg.rank(linalg.transpose(nxt, n), n) if n else 0
                if r == rank:
                    break
                power, rank, index = nxt, r, index + 1
            self.index = index
            cols = linalg.transpose(power, n) if n else ()
            vectors = [carrier.coords(carrier.element(c)) for c in cols]
            image = carrier.sub([carrier.build(v) for v in vectors])
            self.image = image
            H = image.matrix_of(g, image)
            Hinv = linalg.inverse(H)
            if Hinv is None:
                raise SequenceError("endomap is not invertible on its eventual image")
            self._H, self._Hinv = H, Hinv

    @property
    def size(self) -> int:
        return self.image.size

    def h(self, e):
        if isinstance(self.image, FinSet):
            return self._h[e]
        return self.image.element(linalg.matvec(self._H, self.image.coordinates(e)))

    def h_inv(self, e, times: int = 1):
        if isinstance(self.image, FinSet):
            for _ in range(times):
                e = self._hinv[e]
            return e
        c = self.image.coordinates(e)
        for _ in range(times):
            c = linalg.matvec(self._Hinv, c)
        return self.image.element(c)

    def h_pow(self, e, times: int):
        if times < 0:
            return self.h_inv(e, -times)
        for _ in range(times):
            e = self.h(e)
        return e

    def push(self, x):
        """g^N x, which lies in E."""
        for _ in range(self.index):
            x = self.g(x)
        return x

    def normalise(self, x, shift: int = 0):
        """(g|E)^-(N+shift) g^N x."""
        return self.h_inv(self.push(x), self.index + shift) if self.index + shift >= 0 else \
            self.h_pow(self.push(x), -(self.index + shift))


@dataclass
class Colimit:
    """Colimit of an EPSequence: carrier E inside the stage-q carrier, and cocone legs."""

    sequence: EPSequence
    evim: EventualImage

    @property
    def carrier(self) -> HomObject:
        return self.evim.image

    def leg(self, n: int, x):
        """Cocone leg from absolute stage n; satisfies leg(n+1, map_n x) = leg(n, x)."""
        s = self.sequence
        q, p = s.preperiod, s.period
        if n < q:
            _, x = s.push(n, x, q - n)
            return self.evim.normalise(x, 0)
        k, r = divmod(n - q, p)
        if r == 0:
            return self.evim.normalise(x, k)
        _, x = s.push(q + r, x, p - r)
        return self.evim.normalise(x, k + 1)


def sequential_colimit(seq: EPSequence) -> Colimit:
    problems = seq.check()
    if problems:
        raise SequenceError("; ".join(problems))
    return Colimit(seq, EventualImage(seq.carriers[seq.preperiod], seq.loop()))


@dataclass
class Limit:
    """Limit of an EPTower: elements are identified with their stage-q component."""

    tower: EPTower
    evim: EventualImage

    @property
    def carrier(self) -> HomObject:
        return self.evim.image

    def leg(self, n: int, e):
        """Cone leg to absolute stage n."""
        t = self.tower
        q, p = t.preperiod, t.period
        if n <= q:
            return t.down(e, q, n)
        k, r = divmod(n - q, p)
        if r == 0:
            return self.evim.h_inv(e, k)
        top = self.evim.h_inv(e, k + 1)
        return t.down(top, q + (k + 1) * p, n)

    def lift(self, n: int, x):
        """The limit element whose stage-n component is x (n >= q, n = q mod p), or None."""
        t = self.tower
        q, p = t.preperiod, t.period
        k, r = divmod(n - q, p)
        if n < q or r:
            raise SequenceError("lift needs a stage congruent to the preperiod")
        if x not in self.carrier:
            return None
        return self.evim.h_pow(x, k)


def sequential_limit(tower: EPTower) -> Limit:
    problems = tower.check()
    if problems:
        raise SequenceError("; ".join(problems))
    return Limit(tower, EventualImage(tower.carriers[tower.preperiod], tower.loop()))


def constant_loop_sequence(carrier: HomObject, g: Callable) -> EPSequence:
    return EPSequence([carrier], [g], 0, 1)


def constant_loop_tower(carrier: HomObject, g: Callable) -> EPTower:
    return EPTower([carrier], [g], 0, 1)
