"""Exact integer linear algebra: Hermite normal form, integer kernels,
Smith normal form with transforms, and canonical lattice handles.

Everything works on plain Python ints (no overflow) and lists of lists.
Matrices are row-major; a lattice is the set of integer combinations of the
rows of its basis matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence


def _copy(mat) -> list[list[int]]:
    return [list(map(int, row)) for row in mat]


def hnf(mat: Sequence[Sequence[int]]) -> list[list[int]]:
    """Canonical row Hermite normal form of the lattice spanned by the rows.

    Pivots are positive, entries above each pivot lie in [0, pivot), zero
    rows are dropped.  Two row sets span the same lattice iff their HNFs are
    identical, which makes this the lattice equality oracle.
    """
    m = len(mat)
    if m == 0:
        return []
    work = _copy(mat)
    n = len(work[0])
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if work[i][c] != 0), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        for i in range(r + 1, m):
            while work[i][c] != 0:
                q = work[r][c] // work[i][c]
                work[r] = [a - q * b for a, b in zip(work[r], work[i])]
                work[r], work[i] = work[i], work[r]
        if work[r][c] < 0:
            work[r] = [-a for a in work[r]]
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        r += 1
        if r == m:
            break
    return work[:r]


def kernel_basis(mat: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the right kernel {x in Z^ncols : mat @ x = 0}.

    Returned rows are themselves in HNF, so the kernel handle is canonical.
    Works by reducing [mat^T | I]: rows whose mat^T part vanishes carry
    kernel vectors in their identity part.
    """
    m = len(mat)
    aug = []
    for i in range(ncols):
        row = [mat[j][i] for j in range(m)] + [0] * ncols
        row[m + i] = 1
        aug.append(row)
    reduced = hnf(aug)
    kernel = [row[m:] for row in reduced if all(v == 0 for v in row[:m])]
    return hnf(kernel)


def in_lattice(basis: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Membership of an integer vector in the lattice spanned by ``basis``.

    ``basis`` must be in HNF (as produced by :func:`hnf`).
    """
    v = list(map(int, vec))
    for row in basis:
        p = next((j for j, a in enumerate(row) if a != 0), None)
        if p is None:
            continue
        if v[p] % row[p] != 0:
            return False
        q = v[p] // row[p]
        if q:
            v = [a - q * b for a, b in zip(v, row)]
    return all(a == 0 for a in v)


def lattice_eq(basis_a, basis_b) -> bool:
    return hnf(basis_a) == hnf(basis_b)


def lattice_rank(basis) -> int:
    return len(hnf(basis))


@dataclass(frozen=True)
class KernelLattice:
    """Canonical handle for an integer kernel: HNF basis rows plus the anchor
    data (net-exponent vector, coefficient element) of the affine carrier
    when one applies."""

    basis: tuple
    anchor: Optional[tuple] = None

    @staticmethod
    def from_rows(rows, ncols: int) -> "KernelLattice":
        if not rows:
            ident = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]
            return KernelLattice(tuple(tuple(r) for r in ident))
        return KernelLattice(tuple(tuple(r) for r in kernel_basis(rows, ncols)))

    def contains(self, vec) -> bool:
        return in_lattice([list(r) for r in self.basis], vec)

    def rank(self) -> int:
        return len(self.basis)


def _ident(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def snf_with_transforms(mat: Sequence[Sequence[int]]):
    """Smith normal form with transforms: returns (U, D, V) with D = U @ mat @ V,
    U and V unimodular, D diagonal with non-negative entries d1 | d2 | ...
    """
    D = _copy(mat)
    m = len(D)
    n = len(D[0]) if m else 0
    U = _ident(m)
    V = _ident(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    def negate_row(i):
        D[i] = [-a for a in D[i]]
        U[i] = [-a for a in U[i]]

    t = 0
    while t < min(m, n):
        piv = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] != 0 and (piv is None or abs(D[i][j]) < abs(D[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(t, piv[0])
        swap_cols(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(i, t, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(j, t, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        dirty = True
        if D[t][t] < 0:
            negate_row(t)
        # divisibility fix: fold any non-multiple into position t and redo
        bad = None
        for i in range(t + 1, min(m, n)):
            if D[i][i] % D[t][t] != 0:
                bad = i
                break
        if bad is not None:
            add_col(t, bad, 1)
            continue
        t += 1
    return U, D, V


def solve_integer(
    mat: Sequence[Sequence[int]], rhs: Sequence[int]
) -> Optional[list[int]]:
    """One integer solution of mat @ x = rhs, or None when unsolvable."""
    m = len(mat)
    if m == 0:
        return []
    n = len(mat[0])
    U, D, V = snf_with_transforms(mat)
    c = [sum(U[i][j] * rhs[j] for j in range(m)) for i in range(m)]
    y = [0] * n
    for i in range(min(m, n)):
        d = D[i][i]
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d != 0:
                return None
            y[i] = c[i] // d
    for i in range(min(m, n), m):
        if c[i] != 0:
            return None
    return [sum(V[i][j] * y[j] for j in range(n)) for i in range(n)]


def matvec(mat, vec) -> list[int]:
    return [sum(r * v for r, v in zip(row, vec)) for row in mat]
