"""Affine maps between coordinate charts and the exact linear algebra they need."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import as_fraction

Point = tuple[Fraction, ...]


def det(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by fraction-valued Gaussian elimination."""
    m = [[as_fraction(x) for x in row] for row in matrix]
    n = len(m)
    if n == 0:
        return Fraction(1)
    sign = 1
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            m[col], m[pivot] = m[pivot], m[col]
            sign = -sign
        p = m[col][col]
        result *= p
        for r in range(col + 1, n):
            f = m[r][col] / p
            if f:
                row_r, row_c = m[r], m[col]
                for c in range(col, n):
                    row_r[c] -= f * row_c[c]
    return result * sign


def rank(vectors: Sequence[Sequence]) -> int:
    m = [[as_fraction(x) for x in v] for v in vectors]
    if not m:
        return 0
    ncols = len(m[0])
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        for i in range(len(m)):
            if i != r and m[i][col]:
                f = m[i][col] / m[r][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def minor(columns: Sequence[Sequence], rows: Sequence[int]) -> Fraction:
    """Determinant of the square matrix ``[columns[i][rows[j]]]``."""
    return det([[columns[i][j] for i in range(len(columns))] for j in rows])


def solve(matrix: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve a square nonsingular system exactly."""
    n = len(matrix)
    m = [[as_fraction(x) for x in row] + [as_fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if m[r][col]), None)
        if pivot is None:
            raise ValueError("singular matrix")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


@dataclass(frozen=True)
class AffineMap:
    """``t -> translation + sum_i t_i * directions[i]`` from R^k into R^d."""

    translation: Point
    directions: tuple[Point, ...]

    def __post_init__(self):
        object.__setattr__(self, "translation", tuple(as_fraction(x) for x in self.translation))
        object.__setattr__(
            self,
            "directions",
            tuple(tuple(as_fraction(x) for x in v) for v in self.directions),
        )
        d = len(self.translation)
        if any(len(v) != d for v in self.directions):
            raise ValueError("direction vectors must live in the target space")

    @property
    def source_dim(self) -> int:
        return len(self.directions)

    @property
    def target_dim(self) -> int:
        return len(self.translation)

    @classmethod
    def identity(cls, d: int) -> "AffineMap":
        return cls(
            (0,) * d,
            tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d)),
        )

    @classmethod
    def from_points(cls, points: Sequence[Sequence]) -> "AffineMap":
        """Parameterize the simplex ``points`` over the standard simplex."""
        p0 = tuple(as_fraction(x) for x in points[0])
        dirs = tuple(tuple(as_fraction(a) - b for a, b in zip(p, p0)) for p in points[1:])
        return cls(p0, dirs)

    def is_embedding(self) -> bool:
        return rank(self.directions) == self.source_dim

    def __call__(self, t: Sequence) -> Point:
        out = list(self.translation)
        for ti, v in zip(t, self.directions):
            ti = as_fraction(ti)
            if ti:
                for j in range(len(out)):
                    out[j] += ti * v[j]
        return tuple(out)

    def jacobian_minor(self, rows: Sequence[int]) -> Fraction:
        """Minor of the Jacobian on the target coordinates ``rows``."""
        if len(rows) != self.source_dim:
            raise ValueError("need exactly one row per source variable")
        return minor(self.directions, rows)

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """``self o inner``."""
        if inner.target_dim != self.source_dim:
            raise ValueError("cannot compose: dimension mismatch")
        base = self(inner.translation)
        zero = (0,) * self.target_dim
        lin = AffineMap(zero, self.directions)
        dirs = tuple(lin(v) for v in inner.directions)
        return AffineMap(base, dirs)

    def inverse(self) -> "AffineMap":
        """Inverse of a square invertible map."""
        d = self.target_dim
        if self.source_dim != d:
            raise ValueError("only square maps are invertible")
        # matrix A with columns = directions; x = b + A t  =>  t = A^{-1}(x - b)
        a = [[self.directions[i][j] for i in range(d)] for j in range(d)]
        cols = []
        for j in range(d):
            e = [1 if k == j else 0 for k in range(d)]
            cols.append(tuple(solve(a, e)))
        shift = solve(a, self.translation)
        return AffineMap(tuple(-s for s in shift), tuple(cols))

    def linear_determinant(self) -> Fraction:
        return det([[self.directions[i][j] for i in range(self.source_dim)] for j in range(self.target_dim)])
