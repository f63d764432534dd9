"""Radicals of tuple sets, algebraic sets, separation, and the finite
witness extractors.

A radical is represented extensionally by its defining tuple set: membership
of a word is evaluation over the base.  Separation of a tuple from a finite
set is exact on two backend families: finite groups (breadth-first closure
of the joint-evaluation subgroup, with word tracking) and the abelian
backends (integer kernel lattices of difference rows, with a constructive
separating word from any kernel vector).

Witness extraction is greedy and deterministic: tuples are scanned in input
order, the first tuple is always kept, and a tuple is kept exactly when a
separating word over the current kept set exists.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Optional, Sequence, Union

from .closure_core import Closure, default_budget, run_closure
from .errors import (
    ArityError,
    BudgetExceeded,
    UndecidedError,
    ValidationError,
)
from .groups import (
    DirectProductGroup,
    FgAbelianGroup,
    FieldAdditiveGroup,
    GroupBackend,
    QmodZGroup,
    realize,
)
from .intlin import KernelLattice, hnf, kernel_basis, matvec, snf_with_transforms, solve_integer
from .words import (
    CoefLetter,
    VarLetter,
    Word,
    coefficient_image,
    evaluate,
    identity_word,
    net_exponents,
    normalize,
    vanishes,
    word_from_parts,
)

CoeffSpec = Union[str, Sequence]  # "diophantine" | "none" | explicit elements


# ---------------------------------------------------------------------------
# tuple sets and systems


class TupleSet:
    """Finite ordered set of distinct tuples in H^n."""

    def __init__(self, backend: GroupBackend, arity: int, tuples: Sequence):
        if arity < 1:
            raise ArityError("arity must be at least 1")
        self.backend = backend
        self.arity = arity
        seen = []
        for t in tuples:
            t = tuple(t)
            if len(t) != arity:
                raise ArityError(
                    f"tuple of length {len(t)} in a set of arity {arity}"
                )
            for prev in seen:
                if all(backend.eq(a, b) for a, b in zip(prev, t)):
                    raise ValidationError(f"duplicate tuple {t!r}")
            seen.append(t)
        self.tuples = tuple(seen)

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def subset(self, indices: Sequence[int]) -> "TupleSet":
        return TupleSet(self.backend, self.arity, [self.tuples[i] for i in indices])

    def serialize(self) -> dict:
        return {
            "group": self.backend.describe(),
            "arity": self.arity,
            "tuples": [
                [self.backend.serialize_elem(x) for x in t] for t in self.tuples
            ],
        }

    @staticmethod
    def from_dict(spec: dict, backend: Optional[GroupBackend] = None) -> "TupleSet":
        from .groups import group_from_dict

        if backend is None:
            backend = group_from_dict(spec["group"])
        arity = int(spec["arity"])
        tuples = [
            tuple(backend.parse_elem(x) for x in row) for row in spec["tuples"]
        ]
        return TupleSet(backend, arity, tuples)


class EquationSystem:
    """Finite system of words sharing one arity; may be explicitly empty."""

    def __init__(self, backend: GroupBackend, arity: int, words: Sequence[Word]):
        self.backend = backend
        self.arity = arity
        for w in words:
            if w.arity != arity:
                raise ArityError("system mixes arities")
        self.words = tuple(words)


# ---------------------------------------------------------------------------
# coefficient handling

_ABELIAN = (FgAbelianGroup, QmodZGroup, FieldAdditiveGroup)


def coefficient_generators(backend: GroupBackend, coeffs: CoeffSpec) -> list:
    """Resolve a coefficient mode to a concrete generator list."""
    if coeffs == "none":
        return []
    if coeffs == "diophantine":
        return backend.generators()
    return list(coeffs)


def serialize_coeffs(backend: GroupBackend, coeffs: CoeffSpec):
    if isinstance(coeffs, str):
        return coeffs
    return {"gens": [backend.serialize_elem(g) for g in coeffs]}


def parse_coeffs(backend: GroupBackend, spec) -> CoeffSpec:
    if isinstance(spec, str):
        if spec not in ("diophantine", "none"):
            raise ValidationError(f"bad coefficient mode {spec!r}")
        return spec
    return [backend.parse_elem(x) for x in spec["gens"]]


# ---------------------------------------------------------------------------
# linearization over abelian backends


@dataclass(frozen=True)
class LinearizedWord:
    """Net exponent vector plus the combined coefficient, so that the value
    at v over an abelian backend is sum(alpha[i] * v[i]) + const."""

    alpha: tuple
    const: object


def linearize(w: Word) -> LinearizedWord:
    return LinearizedWord(tuple(net_exponents(w)), coefficient_image(w))


def _scaled_tuple_action(backend, alpha: Sequence[int], point: Sequence):
    acc = backend.identity
    for a, x in zip(alpha, point):
        if a:
            acc = backend.op(acc, backend.power(x, a))
    return acc


_WORD_EXPANSION_MAX = 100_000


def abelian_word(backend, arity: int, alpha: Sequence[int], const) -> Word:
    if sum(abs(a) for a in alpha) > _WORD_EXPANSION_MAX:
        raise ValidationError(
            "exponents too large to expand into a letter sequence; "
            "keep the linear form"
        )
    parts = [(i + 1, a) for i, a in enumerate(alpha) if a]
    if not backend.is_identity(const):
        parts.append(const)
    return word_from_parts(backend, arity, parts)


@dataclass(frozen=True)
class LinearWitness:
    """Separating word in exponent form: x^alpha times a constant.  Exact to
    evaluate at any scale (square-and-multiply), unlike the expanded Word
    whose length is the exponent sum."""

    alpha: tuple
    const: object

    def evaluate(self, backend, point):
        val = _scaled_tuple_action(backend, self.alpha, point)
        return backend.op(val, self.const)

    def vanishes_at(self, backend, point) -> bool:
        return backend.is_identity(self.evaluate(backend, point))

    def to_word(self, backend, arity: int) -> Word:
        return abelian_word(backend, arity, self.alpha, self.const)

    def text(self, backend) -> str:
        terms = [
            f"x{i+1}" if a == 1 else f"x{i+1}^{a}"
            for i, a in enumerate(self.alpha)
            if a
        ]
        if not backend.is_identity(self.const):
            terms.append(f"g:{backend.format_elem(self.const)}")
        return " * ".join(terms) if terms else "1"


# constraint rows: (integer row over alpha, modulus or None)


def _difference_constraints(backend, diff: Sequence) -> list:
    """Scalar constraints making alpha annihilate one difference tuple."""
    rows = []
    if isinstance(backend, FgAbelianGroup):
        r = backend.free_rank
        for rho in range(backend.width):
            row = [int(h[rho]) for h in diff]
            if any(row):
                modulus = None if rho < r else backend.torsion[rho - r]
                rows.append((row, modulus))
    elif isinstance(backend, QmodZGroup):
        denom = lcm(*[f.denominator for f in diff]) if diff else 1
        row = [int(f * denom) for f in diff]
        if any(v % denom for v in row):
            rows.append((row, denom))
    elif isinstance(backend, FieldAdditiveGroup):
        denom = lcm(*[f.denominator for f in diff]) if diff else 1
        row = [int(f * denom) for f in diff]
        if any(row):
            rows.append((row, None))
    else:
        raise UndecidedError(f"no kernel method for backend {backend.kind}")
    return rows


def _constraint_kernel(constraints: list, n: int) -> KernelLattice:
    """Lattice of alpha in Z^n satisfying all (row, modulus) constraints."""
    if not constraints:
        return KernelLattice.from_rows([], n)
    mods = [m for _, m in constraints if m is not None]
    rows = []
    for i, (row, modulus) in enumerate(constraints):
        aux = [0] * len(mods)
        if modulus is not None:
            aux[len([m for r, m in constraints[:i] if m is not None])] = modulus
        rows.append(list(row) + aux)
    big = kernel_basis(rows, n + len(mods))
    projected = [vec[:n] for vec in big]
    return KernelLattice(tuple(tuple(r) for r in hnf(projected)))


class AbelianSeparator:
    """Incremental difference-row kernel over one reference tuple.

    Maintains the lattice of exponent vectors annihilating every kept
    difference; a new tuple is separable exactly when some basis vector
    fails on its difference, and that vector yields the separating word.
    """

    def __init__(self, backend, arity: int, reference: Sequence):
        self.backend = backend
        self.arity = arity
        self.reference = tuple(reference)
        self._constraints: list = []
        self.kernel = KernelLattice.from_rows([], arity)

    def _difference(self, point: Sequence) -> list:
        return [
            self.backend.op(x, self.backend.inv(r))
            for x, r in zip(point, self.reference)
        ]

    def separator(self, point: Sequence) -> Optional[Word]:
        """Word vanishing on everything absorbed so far but not at ``point``."""
        diff = self._difference(point)
        for alpha in self.kernel.basis:
            val = _scaled_tuple_action(self.backend, alpha, diff)
            if not self.backend.is_identity(val):
                const = self.backend.inv(
                    _scaled_tuple_action(self.backend, alpha, self.reference)
                )
                return abelian_word(self.backend, self.arity, alpha, const)
        return None

    def absorb(self, point: Sequence):
        diff = self._difference(point)
        self._constraints.extend(_difference_constraints(self.backend, diff))
        self.kernel = _constraint_kernel(self._constraints, self.arity)


def _abelian_separation_from_empty(backend, arity: int, point) -> Optional[Word]:
    for i, x in enumerate(point):
        if not backend.is_identity(x):
            return word_from_parts(backend, arity, [(i + 1, 1)])
    for g in backend.generators():
        if not backend.is_identity(g):
            return word_from_parts(backend, arity, [g])
    if isinstance(backend, (QmodZGroup, FieldAdditiveGroup)):
        return word_from_parts(backend, arity, [backend.parse_elem("1/2")])
    return None


# ---------------------------------------------------------------------------
# finite-backend closure machinery


@dataclass
class ColumnSearch:
    """One closure over the joint-evaluation subgroup of a finite backend,
    with the move labels needed to rebuild words."""

    backend: GroupBackend
    arity: int
    columns: list
    labels: list
    closure: Closure

    def word_of(self, state_index: int) -> Word:
        letters = [self.labels[m] for m in self.closure.move_path(state_index)]
        return normalize(self.backend, self.arity, letters)


def _column_search(
    backend: GroupBackend,
    arity: int,
    columns: Sequence,
    coeffs: CoeffSpec,
    budget: Optional[int],
    context: str = "",
) -> ColumnSearch:
    real = realize(backend)
    gens = coefficient_generators(backend, coeffs)
    ncols = len(columns)
    moves = []
    labels = []
    for g in gens:
        gi = real.index[g]
        if gi == 0:
            continue
        moves.append([gi] * ncols)
        labels.append(CoefLetter(g))
        inv_i = int(real.inv[gi])
        if inv_i != gi:
            moves.append([inv_i] * ncols)
            labels.append(CoefLetter(real.elems[inv_i]))
    for i in range(arity):
        col = [real.index[t[i]] for t in columns]
        icol = [int(real.inv[c]) for c in col]
        moves.append(col)
        labels.append(VarLetter(i + 1, 1))
        moves.append(icol)
        labels.append(VarLetter(i + 1, -1))
    closure = run_closure(real.table, moves, ncols, budget, context)
    return ColumnSearch(backend, arity, list(columns), labels, closure)


def _closure_separator(
    search: ColumnSearch, zero_cols: Sequence[int], probe_cols: Sequence[int]
) -> Optional[tuple[Word, int]]:
    """First closure state trivial on ``zero_cols`` but not on some probe
    column; returns the rebuilt word and the offending probe column."""
    for si, state in enumerate(search.closure.states):
        if any(state[c] != 0 for c in zero_cols):
            continue
        for c in probe_cols:
            if state[c] != 0:
                return search.word_of(si), c
    return None


# ---------------------------------------------------------------------------
# separation and radical comparison


def is_kernel_backend(backend) -> bool:
    return isinstance(backend, _ABELIAN)


def separation(
    E0: TupleSet,
    point: Sequence,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> Optional[Word]:
    """A word vanishing on all of E0 but not at ``point``, or None.

    Exact for finite backends (closure search) and the abelian family
    (kernel lattices); anything else raises UndecidedError.
    """
    backend = E0.backend
    point = tuple(point)
    if len(point) != E0.arity:
        raise ArityError("point arity mismatch")
    for t in E0.tuples:
        if all(backend.eq(a, b) for a, b in zip(t, point)):
            return None
    if is_kernel_backend(backend):
        if not E0.tuples:
            return _abelian_separation_from_empty(backend, E0.arity, point)
        sep = AbelianSeparator(backend, E0.arity, E0.tuples[0])
        for t in E0.tuples[1:]:
            sep.absorb(t)
        return sep.separator(point)
    if backend.is_finite:
        columns = list(E0.tuples) + [point]
        search = _column_search(
            backend, E0.arity, columns, coeffs, budget, "separation"
        )
        hit = _closure_separator(
            search, range(len(E0.tuples)), [len(E0.tuples)]
        )
        return hit[0] if hit else None
    raise UndecidedError(
        f"backend {backend.kind} has no exact separation method"
    )


def radical_le_raw(
    backend,
    arity: int,
    tuples1: Sequence,
    tuples2: Sequence,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> Optional[tuple[Word, int]]:
    """Core of :func:`radical_le` on plain tuple lists (duplicates allowed):
    None when every word vanishing on tuples1 vanishes on tuples2, else a
    counterexample (word, index into tuples2)."""
    tuples1 = [tuple(t) for t in tuples1]
    tuples2 = [tuple(t) for t in tuples2]
    if is_kernel_backend(backend):
        if not tuples1:
            for j, t in enumerate(tuples2):
                w = _abelian_separation_from_empty(backend, arity, t)
                if w is not None:
                    return (w, j)
            return None
        sep = AbelianSeparator(backend, arity, tuples1[0])
        for t in tuples1[1:]:
            sep.absorb(t)
        for j, t in enumerate(tuples2):
            w = sep.separator(t)
            if w is not None:
                return (w, j)
        return None
    if backend.is_finite:
        columns = tuples1 + tuples2
        search = _column_search(
            backend, arity, columns, coeffs, budget, "radical comparison"
        )
        m = len(tuples1)
        hit = _closure_separator(search, range(m), range(m, len(columns)))
        if hit is None:
            return None
        return hit[0], hit[1] - m
    raise UndecidedError(f"backend {backend.kind} has no exact radical oracle")


def radical_le(
    E1: TupleSet,
    E2: TupleSet,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> Optional[tuple[Word, int]]:
    """Check Rad(E1) included in Rad(E2): None when it holds, otherwise a
    counterexample (word vanishing on E1, index into E2 where it does not)."""
    if E1.arity != E2.arity:
        raise ArityError("arity mismatch")
    return radical_le_raw(
        E1.backend, E1.arity, E1.tuples, E2.tuples, coeffs, budget
    )


def radical_equal(
    E1: TupleSet,
    E2: TupleSet,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> bool:
    return (
        radical_le(E1, E2, coeffs, budget) is None
        and radical_le(E2, E1, coeffs, budget) is None
    )


# ---------------------------------------------------------------------------
# radical handles


class RadicalHandle:
    """Membership-testable radical, defined extensionally by a base tuple
    set or by an affine description of an infinite abelian algebraic set."""

    def __init__(self, backend, arity, base: Optional[TupleSet] = None, affine=None):
        self.backend = backend
        self.arity = arity
        self.base = base
        self.affine = affine

    @staticmethod
    def of(base: TupleSet) -> "RadicalHandle":
        return RadicalHandle(base.backend, base.arity, base=base)

    def contains(self, w: Word) -> bool:
        if w.arity != self.arity:
            raise ArityError("word arity mismatch")
        if self.base is not None:
            return all(vanishes(w, t, target=self.backend) for t in self.base)
        return self.affine.radical_contains(w)


def radical_contains(handle: RadicalHandle, w: Word) -> bool:
    return handle.contains(w)


# ---------------------------------------------------------------------------
# algebraic sets


class AbelianSolutionSet:
    """Solution set of a linear system over an abelian backend: a particular
    tuple plus integer lattice directions (flattened coordinates), or empty.
    Finite sets can be materialized; infinite ones expose an enumerator and
    exact radical membership."""

    def __init__(self, backend, arity, particular, directions, note="", explicit=None):
        self.backend = backend
        self.arity = arity
        self.particular = particular  # H-tuple or None
        self.directions = directions  # rows over flattened coords, [] if none
        self.note = note
        self.explicit = explicit  # full point list, when already enumerated

    @property
    def is_empty(self) -> bool:
        return self.particular is None

    def _width(self) -> int:
        if isinstance(self.backend, FgAbelianGroup):
            return self.backend.width
        return 1

    def _free_part_zero(self, vec) -> bool:
        if isinstance(self.backend, FgAbelianGroup):
            r = self.backend.free_rank
            w = self.backend.width
            return all(vec[i * w + rho] == 0 for i in range(self.arity) for rho in range(r))
        if isinstance(self.backend, FieldAdditiveGroup):
            return all(v == 0 for v in vec)
        return True

    @property
    def is_finite(self) -> bool:
        if self.is_empty:
            return True
        return all(self._free_part_zero(v) for v in self.directions)

    def _shift(self, point, vec, times: int):
        w = self._width()
        out = []
        for i, x in enumerate(point):
            block = vec[i * w : (i + 1) * w]
            if isinstance(self.backend, FgAbelianGroup):
                delta = self.backend.reduce([times * b for b in block])
            elif isinstance(self.backend, FieldAdditiveGroup):
                delta = Fraction(times * block[0])
            else:
                delta = Fraction(times * block[0])
            out.append(self.backend.op(x, delta))
        return tuple(out)

    def enumerate(self, limit: int = 100):
        """Deterministic spiral over lattice coefficients 0, 1, -1, 2, ..."""
        if self.is_empty:
            return
        if self.explicit is not None:
            yield from self.explicit[:limit]
            return
        if not self.directions:
            yield self.particular
            return
        emitted = []
        count = 0
        for radius in itertools.count(0):
            coeff_range = [0] + [s * k for k in range(1, radius + 1) for s in (1, -1)]
            for combo in itertools.product(coeff_range, repeat=len(self.directions)):
                if max((abs(c) for c in combo), default=0) != radius:
                    continue
                point = self.particular
                for c, vec in zip(combo, self.directions):
                    if c:
                        point = self._shift(point, vec, c)
                if any(
                    all(self.backend.eq(a, b) for a, b in zip(point, prev))
                    for prev in emitted
                ):
                    continue
                emitted.append(point)
                yield point
                count += 1
                if count >= limit:
                    return
            if radius > limit:
                return

    def as_tupleset(self, budget: Optional[int] = None) -> TupleSet:
        if not self.is_finite:
            raise ValidationError(
                "infinite solution set requested as explicit finite set"
            )
        if self.is_empty:
            return TupleSet(self.backend, self.arity, [])
        budget = budget or default_budget()
        points = list(self.enumerate(limit=budget))
        return TupleSet(self.backend, self.arity, points)

    def radical_contains(self, w: Word) -> bool:
        if self.is_empty:
            return True
        if self.explicit is not None:
            return all(vanishes(w, p, target=self.backend) for p in self.explicit)
        lin = linearize(w)
        val = _scaled_tuple_action(self.backend, lin.alpha, self.particular)
        if not self.backend.is_identity(self.backend.op(val, lin.const)):
            return False
        for vec in self.directions:
            delta = self._shift(
                tuple([self.backend.identity] * self.arity), vec, 1
            )
            dval = _scaled_tuple_action(self.backend, lin.alpha, delta)
            if not self.backend.is_identity(dval):
                return False
        return True

    def describe(self) -> dict:
        return {
            "empty": self.is_empty,
            "finite": self.is_finite,
            "particular": None
            if self.is_empty
            else [self.backend.serialize_elem(x) for x in self.particular],
            "directions": [list(map(int, v)) for v in self.directions],
            "note": self.note,
        }


def _linear_system_rows(system: EquationSystem):
    """Linearize every word: rows of alpha plus the negated constant."""
    rows = []
    for w in system.words:
        lin = linearize(w)
        rows.append((lin.alpha, system.backend.inv(lin.const)))
    return rows


def _algebraic_set_fgabelian(system: EquationSystem) -> AbelianSolutionSet:
    backend: FgAbelianGroup = system.backend
    n = system.arity
    w = backend.width
    r = backend.free_rank
    lin = _linear_system_rows(system)
    mat = []
    rhs = []
    mods = []
    for alpha, target in lin:
        for rho in range(w):
            row = [0] * (n * w)
            for i in range(n):
                row[i * w + rho] = alpha[i]
            mat.append(row)
            rhs.append(int(target[rho]))
            mods.append(None if rho < r else backend.torsion[rho - r])
    naux = sum(1 for m in mods if m is not None)
    aux_at = 0
    for i, m in enumerate(mods):
        row = mat[i]
        row.extend([0] * naux)
        if m is not None:
            row[n * w + aux_at] = m
            aux_at += 1
    total = n * w + naux
    part = solve_integer(mat, rhs) if mat else [0] * total
    if part is None:
        return AbelianSolutionSet(backend, n, None, [])
    point = tuple(
        backend.reduce(part[i * w : (i + 1) * w]) for i in range(n)
    )
    kern = kernel_basis(mat, total) if mat else [
        [1 if i == j else 0 for j in range(total)] for i in range(total)
    ]
    directions = [vec[: n * w] for vec in kern]
    directions = [v for v in hnf(directions)]
    return AbelianSolutionSet(backend, n, point, directions)


def _algebraic_set_field(system: EquationSystem) -> AbelianSolutionSet:
    from .rationallin import AffineSubspace

    backend = system.backend
    n = system.arity
    lin = _linear_system_rows(system)
    mat = [[Fraction(a) for a in alpha] for alpha, _ in lin]
    rhs = [Fraction(t) for _, t in lin]
    space = AffineSubspace.from_system(mat, rhs, n)
    if space.is_empty:
        return AbelianSolutionSet(backend, n, None, [])
    point = tuple(space.point)
    directions = []
    for vec in space.directions:
        denom = lcm(*[f.denominator for f in vec]) if vec else 1
        directions.append([int(f * denom) for f in vec])
    return AbelianSolutionSet(backend, n, point, directions, note="affine over Q")


def _algebraic_set_qmodz(system: EquationSystem) -> AbelianSolutionSet:
    backend = system.backend
    n = system.arity
    lin = _linear_system_rows(system)
    mat = [list(alpha) for alpha, _ in lin]
    rhs = [t for _, t in lin]
    if not mat:
        raise ValidationError(
            "solution set is all of the backend: no lattice form over Q/Z"
        )
    U, D, V = snf_with_transforms(mat)
    m = len(mat)
    c = [
        sum(Fraction(U[i][j]) * rhs[j] for j in range(m)) % 1 for i in range(m)
    ]
    ys: list[list[Fraction]] = []
    for i in range(n):
        d = D[i][i] if i < min(m, n) else 0
        if d == 0:
            raise ValidationError(
                "solution set has a free Q/Z direction: no lattice form"
            )
        base = c[i] / d if i < m else Fraction(0)
        ys.append([(base + Fraction(j, d)) % 1 for j in range(d)])
    for i in range(n, m):
        if c[i] % 1 != 0:
            return AbelianSolutionSet(backend, n, None, [])
    points = []
    for combo in itertools.product(*ys):
        x = [
            sum(Fraction(V[i][j]) * combo[j] for j in range(n)) % 1
            for i in range(n)
        ]
        points.append(tuple(x))
    dedup = []
    for p in points:
        if not any(p == q for q in dedup):
            dedup.append(p)
    if not dedup:
        return AbelianSolutionSet(backend, n, None, [])
    return AbelianSolutionSet(backend, n, dedup[0], [], explicit=dedup)


def algebraic_set(
    system: EquationSystem, budget: Optional[int] = None
) -> Union[TupleSet, AbelianSolutionSet]:
    """All common roots of the system: an explicit TupleSet over finite
    backends, an AbelianSolutionSet over the abelian family."""
    backend = system.backend
    n = system.arity
    if isinstance(backend, FgAbelianGroup) and not backend.is_finite:
        return _algebraic_set_fgabelian(system)
    if isinstance(backend, FieldAdditiveGroup):
        return _algebraic_set_field(system)
    if isinstance(backend, QmodZGroup):
        sol = _algebraic_set_qmodz(system)
        return sol
    if backend.is_finite:
        budget = budget or default_budget()
        if backend.order() ** n > budget:
            raise BudgetExceeded(budget, "exhaustive root scan")
        hits = []
        for v in itertools.product(list(backend.elements()), repeat=n):
            if all(vanishes(w, v, target=backend) for w in system.words):
                hits.append(v)
        return TupleSet(backend, n, hits)
    raise UndecidedError(f"cannot solve systems over backend {backend.kind}")


def radical_of_system(
    system: EquationSystem, budget: Optional[int] = None
) -> RadicalHandle:
    """Radical of a system: the radical of its algebraic set.  Verifies that
    every system word is a member (it must be, by construction)."""
    sol = algebraic_set(system, budget)
    if isinstance(sol, TupleSet):
        handle = RadicalHandle.of(sol)
    elif sol.is_finite:
        handle = RadicalHandle.of(sol.as_tupleset(budget))
    else:
        handle = RadicalHandle(system.backend, system.arity, affine=sol)
    for w in system.words:
        if not handle.contains(w):
            raise ValidationError("system word missing from its own radical")
    return handle


# ---------------------------------------------------------------------------
# witnesses

from .certificates import WitnessCertificate, WitnessStep  # noqa: E402  (cycle-free)


def _greedy_finite(
    backend, arity, tuples, coeffs, budget
) -> tuple[list[int], list[WitnessStep]]:
    kept: list[int] = []
    steps: list[WitnessStep] = []
    for j, t in enumerate(tuples):
        if not kept:
            kept.append(j)
            steps.append(WitnessStep(added_index=j, separator=None, vanishes_on=()))
            continue
        columns = [tuples[i] for i in kept] + [t]
        search = _column_search(backend, arity, columns, coeffs, budget, "witness")
        hit = _closure_separator(search, range(len(kept)), [len(kept)])
        if hit is not None:
            steps.append(
                WitnessStep(
                    added_index=j, separator=hit[0], vanishes_on=tuple(kept)
                )
            )
            kept.append(j)
    return kept, steps


def _greedy_abelian(backend, arity, tuples) -> tuple[list[int], list[WitnessStep]]:
    kept: list[int] = []
    steps: list[WitnessStep] = []
    sep: Optional[AbelianSeparator] = None
    for j, t in enumerate(tuples):
        if sep is None:
            kept.append(j)
            steps.append(WitnessStep(added_index=j, separator=None, vanishes_on=()))
            sep = AbelianSeparator(backend, arity, t)
            continue
        w = sep.separator(t)
        if w is not None:
            steps.append(
                WitnessStep(added_index=j, separator=w, vanishes_on=tuple(kept))
            )
            kept.append(j)
            sep.absorb(t)
    return kept, steps


def witness_abelian(E: TupleSet, budget: Optional[int] = None) -> WitnessCertificate:
    """Finite witness over the abelian family via difference-row kernels."""
    backend = E.backend
    if not is_kernel_backend(backend):
        raise UndecidedError("witness_abelian requires an abelian backend")
    kept, steps = _greedy_abelian(backend, E.arity, list(E.tuples))
    oracle = "congruence" if isinstance(backend, QmodZGroup) else "lattice"
    return WitnessCertificate(
        tuple_set=E,
        kept=tuple(kept),
        steps=tuple(steps),
        oracle=oracle,
        engine="abelian-lattice",
        coeffs="diophantine",
    )


def witness(
    E: TupleSet,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> WitnessCertificate:
    """Generic greedy witness; dispatches to the exact separation method of
    the backend.  Deterministic given the input tuple order."""
    backend = E.backend
    if is_kernel_backend(backend):
        return witness_abelian(E, budget)
    if backend.is_finite:
        kept, steps = _greedy_finite(backend, E.arity, list(E.tuples), coeffs, budget)
        return WitnessCertificate(
            tuple_set=E,
            kept=tuple(kept),
            steps=tuple(steps),
            oracle="closure",
            engine="greedy-closure",
            coeffs=coeffs,
        )
    raise UndecidedError(f"backend {backend.kind} admits no exact witness")


def witness_product(E: TupleSet, budget: Optional[int] = None) -> WitnessCertificate:
    """Witness over a binary direct product: per-factor witnesses with shared
    indexing; the kept set is the union of both factors' kept index sets."""
    backend = E.backend
    if not isinstance(backend, DirectProductGroup):
        raise UndecidedError("witness_product requires a direct product backend")
    left, right = backend.left, backend.right
    lefts = [tuple(x[0] for x in t) for t in E.tuples]
    rights = [tuple(x[1] for x in t) for t in E.tuples]

    def factor_run(fac, tuples):
        if is_kernel_backend(fac):
            return _greedy_abelian(fac, E.arity, tuples)
        if fac.is_finite:
            return _greedy_finite(fac, E.arity, tuples, "diophantine", budget)
        raise UndecidedError(f"factor backend {fac.kind} admits no exact witness")

    kept_l, steps_l = factor_run(left, lefts)
    kept_r, steps_r = factor_run(right, rights)
    kept = sorted(set(kept_l) | set(kept_r))

    # separators stay factor-level words: a factor word's claim is about the
    # factor projections, and that is exactly how the checker re-evaluates it
    steps = []
    for side, fsteps in (("left", steps_l), ("right", steps_r)):
        for st in fsteps:
            steps.append(
                WitnessStep(
                    added_index=st.added_index,
                    separator=st.separator,
                    vanishes_on=st.vanishes_on,
                    factor=side,
                )
            )
    steps.sort(key=lambda s: (s.added_index, s.factor or ""))
    oracle_l = "congruence" if isinstance(left, QmodZGroup) else (
        "lattice" if is_kernel_backend(left) else "closure"
    )
    oracle_r = "congruence" if isinstance(right, QmodZGroup) else (
        "lattice" if is_kernel_backend(right) else "closure"
    )
    return WitnessCertificate(
        tuple_set=E,
        kept=tuple(kept),
        steps=tuple(steps),
        oracle=f"product({oracle_l},{oracle_r})",
        engine="product",
        coeffs="diophantine",
        extra={"kept_left": list(kept_l), "kept_right": list(kept_r)},
    )


# ---------------------------------------------------------------------------
# coefficient elimination


@dataclass
class CoefficientElimination:
    """Lift of a tuple set along a coefficient list: each tuple e becomes
    (e, a1..ak) and words over the coefficients lift to coefficient-free
    words with one fresh variable per listed coefficient."""

    base: TupleSet
    coeffs: tuple
    lifted: TupleSet
    expressions: dict = field(default_factory=dict)

    @property
    def lifted_arity(self) -> int:
        return self.base.arity + len(self.coeffs)

    def lift_word(self, w: Word, budget: Optional[int] = None) -> Word:
        """Coefficient-free form: coefficients are rewritten as products of
        the fresh variables standing for the listed generators."""
        backend = self.base.backend
        n = self.base.arity
        k = len(self.coeffs)

        def var_map(i, s):
            return [VarLetter(i, s)]

        def coef_map(elem):
            path = self._express(elem, budget)
            return [
                VarLetter(n + gi + 1, sign) for gi, sign in path
            ]

        from .words import transform

        return transform(w, backend, n + k, var_map, coef_map)

    def _express(self, elem, budget) -> list[tuple[int, int]]:
        key = self.base.backend.serialize_elem(elem)
        if key in self.expressions:
            return self.expressions[key]
        backend = self.base.backend
        real = realize(backend)
        moves = []
        labels = []
        for gi, g in enumerate(self.coeffs):
            idx = real.index[g]
            moves.append([idx])
            labels.append((gi, 1))
            inv_i = int(real.inv[idx])
            moves.append([inv_i])
            labels.append((gi, -1))
        closure = run_closure(real.table, moves, 1, budget, "coefficient expression")
        target = real.index[elem]
        for si, state in enumerate(closure.states):
            if state[0] == target:
                path = [labels[m] for m in closure.move_path(si)]
                self.expressions[key] = path
                return path
        raise ValidationError(
            "coefficient is not expressible in the given generator list"
        )


def eliminate_coefficients(
    E: TupleSet, coeffs: Sequence, budget: Optional[int] = None
) -> CoefficientElimination:
    backend = E.backend
    if not backend.is_finite:
        raise UndecidedError("coefficient elimination needs an enumerable backend")
    coeffs = tuple(coeffs)
    lifted = TupleSet(
        backend,
        E.arity + len(coeffs),
        [tuple(t) + coeffs for t in E.tuples],
    )
    return CoefficientElimination(base=E, coeffs=coeffs, lifted=lifted)


def witness_via_elimination(
    E: TupleSet, coeffs: Sequence, budget: Optional[int] = None
) -> tuple[WitnessCertificate, CoefficientElimination]:
    """Coefficient-free witness over the lifted set, mapped back: the kept
    indices transfer unchanged because lifted tuples align with base tuples."""
    elim = eliminate_coefficients(E, coeffs, budget)
    cert = witness(elim.lifted, coeffs="none", budget=budget)
    return cert, elim


# ---------------------------------------------------------------------------
# coordinate groups


def coordinate_group(
    E: TupleSet,
    coeffs: CoeffSpec = "diophantine",
    budget: Optional[int] = None,
) -> tuple[int, list]:
    """Order of the joint-evaluation image in H^|E| plus the generator
    images.  The empty set yields the trivial group by convention."""
    backend = E.backend
    if not backend.is_finite:
        raise UndecidedError("coordinate groups are computed over finite backends")
    if not E.tuples:
        return 1, []
    search = _column_search(
        backend, E.arity, list(E.tuples), coeffs, budget, "coordinate group"
    )
    images = []
    gens = coefficient_generators(backend, coeffs)
    for g in gens:
        images.append((f"g:{backend.format_elem(g)}", tuple([g] * len(E.tuples))))
    for i in range(E.arity):
        images.append((f"x{i+1}", tuple(t[i] for t in E.tuples)))
    return len(search.closure), images
