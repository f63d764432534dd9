"""Exact rational linear algebra for affine solution sets over Q.

Used by the field-additive backend: algebraic sets of linear systems are
affine subspaces, represented by one particular point plus a basis of the
homogeneous directions (or the empty marker).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence


def rref(mat: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot column indices."""
    work = [row[:] for row in mat]
    m = len(work)
    n = len(work[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = Fraction(1) / work[r][c]
        work[r] = [a * inv for a in work[r]]
        for i in range(m):
            if i != r and work[i][c] != 0:
                f = work[i][c]
                work[i] = [a - f * b for a, b in zip(work[i], work[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return work[:r], pivots


def solve_affine(
    mat: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]
) -> Optional[tuple[list[Fraction], list[list[Fraction]]]]:
    """Solve mat @ x = rhs over Q: (particular, homogeneous basis) or None."""
    m = len(mat)
    n = len(mat[0]) if m else 0
    aug = [[Fraction(v) for v in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    red, pivots = rref(aug)
    for row in red:
        if all(v == 0 for v in row[:n]) and row[n] != 0:
            return None
    particular = [Fraction(0)] * n
    for r, c in enumerate(pivots):
        if c < n:
            particular[c] = red[r][n]
    free_cols = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free_cols:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for r, c in enumerate(pivots):
            if c < n:
                vec[c] = -red[r][fc]
        basis.append(vec)
    return particular, basis


@dataclass
class AffineSubspace:
    """Affine subspace of Q^n: a point plus direction basis, or empty."""

    n: int
    point: Optional[list[Fraction]]
    directions: list[list[Fraction]]

    @staticmethod
    def empty(n: int) -> "AffineSubspace":
        return AffineSubspace(n, None, [])

    @staticmethod
    def full(n: int) -> "AffineSubspace":
        ident = [
            [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i in range(n)
        ]
        return AffineSubspace(n, [Fraction(0)] * n, ident)

    @staticmethod
    def from_system(mat, rhs, n: int) -> "AffineSubspace":
        if not mat:
            return AffineSubspace.full(n)
        sol = solve_affine(mat, rhs)
        if sol is None:
            return AffineSubspace.empty(n)
        point, basis = sol
        return AffineSubspace(n, point, basis)

    @property
    def is_empty(self) -> bool:
        return self.point is None

    def dim(self) -> int:
        if self.is_empty:
            return -1
        red, _ = rref([row[:] for row in self.directions]) if self.directions else ([], [])
        return len(red)

    def contains(self, x: Sequence[Fraction]) -> bool:
        if self.is_empty:
            return False
        diff = [Fraction(a) - b for a, b in zip(x, self.point)]
        if not self.directions:
            return all(v == 0 for v in diff)
        sol = solve_affine(
            [[self.directions[j][i] for j in range(len(self.directions))] for i in range(self.n)],
            diff,
        )
        return sol is not None

    def includes(self, other: "AffineSubspace") -> bool:
        """Whether ``other`` is a subset of this subspace."""
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        if not self.contains(other.point):
            return False
        return all(
            self.contains([p + d for p, d in zip(other.point, vec)])
            for vec in other.directions
        )

    def __eq__(self, other):
        return (
            isinstance(other, AffineSubspace)
            and self.includes(other)
            and other.includes(self)
        )
