"""Exact rational matrix helpers.

Matrices are tuples of row tuples of :class:`fractions.Fraction`. Row reduction
is delegated to sympy; everything else is plain Python so hot loops stay cheap.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

import sympy

Vector = tuple
Matrix = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


def vector(values) -> Vector:
    return tuple(frac(v) for v in values)


def zeros(n: int) -> Vector:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def add(u: Vector, v: Vector) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def scale(c, u: Vector) -> Vector:
    return tuple(c * a for a in u)


def combine(coeffs: Sequence, vectors: Sequence[Vector], n: int) -> Vector:
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for k, a in enumerate(v):
                if a:
                    out[k] += c * a
    return tuple(out)


def identity(n: int) -> Matrix:
    return tuple(unit(n, i) for i in range(n))


def transpose(m: Matrix, ncols: Optional[int] = None) -> Matrix:
    if not m:
        return tuple(() for _ in range(ncols or 0))
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix, inner: Optional[int] = None, ncols: Optional[int] = None) -> Matrix:
    if ncols is None:
        ncols = len(b[0]) if b else 0
    cols = transpose(b, ncols)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), ZERO) for col in cols) for row in a)


def matvec(m: Matrix, v: Vector) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), ZERO) for row in m)


def _sym(rows: Sequence[Sequence[Fraction]], ncols: int) -> sympy.Matrix:
    return sympy.Matrix(len(rows), ncols, lambda i, j: sympy.Rational(rows[i][j].numerator, rows[i][j].denominator))


def rref(rows: Sequence[Vector], ncols: int) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form with zero rows dropped, and pivot columns."""
    if not rows or ncols == 0:
        return (), ()
    reduced, pivots = _sym(rows, ncols).rref()
    out = tuple(tuple(frac(reduced[i, j]) for j in range(ncols)) for i in range(len(pivots)))
    return out, tuple(pivots)


def rank(rows: Sequence[Vector], ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Vector], ncols: int) -> list[Vector]:
    """Basis of {x : rows @ x = 0}."""
    if ncols == 0:
        return []
    if not rows:
        return [unit(ncols, i) for i in range(ncols)]
    return [tuple(frac(x) for x in v) for v in _sym(rows, ncols).nullspace()]


def solve(a: Sequence[Vector], b: Vector, ncols: int) -> Optional[Vector]:
    """One solution of a @ x = b, or None."""
    if ncols == 0:
        return () if all(x == 0 for x in b) else None
    aug = [tuple(row) + (bi,) for row, bi in zip(a, b)]
    reduced, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    x = [ZERO] * ncols
    for row, p in zip(reduced, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(m: Matrix) -> Optional[Matrix]:
    n = len(m)
    if n == 0:
        return ()
    aug = [tuple(row) + unit(n, i) for i, row in enumerate(m)]
    reduced, pivots = rref(aug, 2 * n)
    if pivots[:n] != tuple(range(n)) or len(pivots) < n:
        return None
    return tuple(tuple(row[n:]) for row in reduced[:n])


def matpow(m: Matrix, k: int) -> Matrix:
    out = identity(len(m))
    for _ in range(k):
        out = matmul(m, out, ncols=len(m))
    return out


class Coordinates:
    """Coordinate extraction for a fixed list of linearly independent vectors.

    Picks pivot rows once so later lookups are a small matrix product.
    """

    def __init__(self, basis: Sequence[Vector], ambient: int):
        self.basis = tuple(basis)
        self.ambient = ambient
        r = len(self.basis)
        if r:
            _, pivots = rref(self.basis, ambient)
            if len(pivots) != r:
                raise ValueError("basis vectors are linearly dependent")
            self._rows = pivots
            square = tuple(tuple(v[p] for v in self.basis) for p in pivots)
            self._inv = inverse(square)
        else:
            self._rows = ()
            self._inv = ()

    def __len__(self):
        return len(self.basis)

    def coords(self, x: Vector) -> Optional[Vector]:
        """Coordinates of x, or None if x is outside the span."""
        r = len(self.basis)
        c = matvec(self._inv, tuple(x[p] for p in self._rows)) if r else ()
        if combine(c, self.basis, self.ambient) != tuple(x):
            return None
        return c

    def vector(self, c: Sequence) -> Vector:
        return combine(c, self.basis, self.ambient)


def canonical_basis(vectors: Sequence[Vector], ambient: int) -> tuple[Vector, ...]:
    """RREF basis of the span; equal subspaces get identical bases."""
    return rref(list(vectors), ambient)[0]
