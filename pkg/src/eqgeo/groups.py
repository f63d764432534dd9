"""Concrete groups that equations are evaluated over.

Five families share one interface: finite groups given by a Cayley table,
finitely generated abelian groups (free rank plus invariant factors),
the rationals mod one, the additive rationals, and semidirect products of a
finite group acting on another backend.  Binary direct products and direct
powers round the family out so product and wreath constructions have a home.

Additive groups expose the same multiplicative word interface: a variable
exponent k acts as k-fold addition.  Backends are immutable after
construction and validation; every operation here is pure.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import random
from fractions import Fraction
from typing import Any, Iterator, Optional, Sequence

import numpy as np

from .errors import ValidationError


class GroupBackend:
    """Shared interface: identity, op, inv, equality, optional enumeration,
    generators, and two element codecs (JSON value and DSL name)."""

    kind: str = "abstract"
    is_finite: bool = False

    @property
    def identity(self):
        raise NotImplementedError

    def op(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def eq(self, a, b) -> bool:
        return a == b

    def is_identity(self, a) -> bool:
        return self.eq(a, self.identity)

    def power(self, a, k: int):
        if k < 0:
            return self.power(self.inv(a), -k)
        acc = self.identity
        base = a
        while k:
            if k & 1:
                acc = self.op(acc, base)
            base = self.op(base, base)
            k >>= 1
        return acc

    def order(self) -> int:
        raise ValidationError(f"{self.kind} backend is not finite")

    def elements(self) -> Iterator:
        raise ValidationError(f"{self.kind} backend is not enumerable")

    def generators(self) -> list:
        raise NotImplementedError

    def serialize_elem(self, a):
        raise NotImplementedError

    def parse_elem(self, obj):
        raise NotImplementedError

    def format_elem(self, a) -> str:
        raise NotImplementedError

    def resolve_name(self, name: str):
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def elem_order(self, a) -> int:
        k = 1
        acc = a
        while not self.is_identity(acc):
            acc = self.op(acc, a)
            k += 1
            if k > 10**7:
                raise ValidationError("element order exceeds sanity bound")
        return k


_ASSOC_SAMPLES = 10_000
_ASSOC_EXHAUSTIVE_MAX = 12


class FiniteGroup(GroupBackend):
    """Group given by an explicit Cayley table; elements are indices 0..n-1
    with index 0 the identity.  The table is fully validated at load."""

    kind = "finite"
    is_finite = True

    def __init__(self, table: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None):
        n = len(table)
        if n == 0:
            raise ValidationError("empty Cayley table")
        self._table = tuple(tuple(int(v) for v in row) for row in table)
        if any(len(row) != n for row in self._table):
            raise ValidationError("Cayley table is not square")
        if names is None:
            names = ["e"] + [f"g{i}" for i in range(1, n)]
        if len(names) != n or len(set(names)) != n:
            raise ValidationError("element names must be distinct, one per element")
        self.names = tuple(str(x) for x in names)
        self._name_index = {nm: i for i, nm in enumerate(self.names)}
        self._order = n
        self._validate()
        self._inv = tuple(next(j for j in range(n) if self._table[i][j] == 0) for i in range(n))
        self._gens: Optional[tuple] = None
        self._realized = None

    def _validate(self):
        n = self._order
        full = frozenset(range(n))
        for i in range(n):
            if frozenset(self._table[i]) != full:
                raise ValidationError(f"row {i} is not a permutation")
            if frozenset(self._table[j][i] for j in range(n)) != full:
                raise ValidationError(f"column {i} is not a permutation")
        for j in range(n):
            if self._table[0][j] != j or self._table[j][0] != j:
                raise ValidationError("index 0 does not act as the identity")
        if n <= _ASSOC_EXHAUSTIVE_MAX:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0xA550C)
            triples = (
                (rng.randrange(n), rng.randrange(n), rng.randrange(n))
                for _ in range(_ASSOC_SAMPLES)
            )
        t = self._table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise ValidationError(f"associativity fails at ({a},{b},{c})")

    @property
    def identity(self):
        return 0

    def op(self, a, b):
        return self._table[a][b]

    def inv(self, a):
        return self._inv[a]

    def order(self) -> int:
        return self._order

    def elements(self):
        return iter(range(self._order))

    def subgroup_closure(self, seeds: Sequence[int]) -> frozenset:
        """Elements of the subgroup generated by ``seeds`` (orbit algorithm)."""
        seen = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for s in seeds:
                for y in (self._table[x][s], self._table[x][self._inv[s]]):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return frozenset(seen)

    def generators(self) -> list:
        if self._gens is None:
            gens: list[int] = []
            covered = self.subgroup_closure(gens)
            for x in range(1, self._order):
                if x not in covered:
                    gens.append(x)
                    covered = self.subgroup_closure(gens)
                    if len(covered) == self._order:
                        break
            self._gens = tuple(gens)
        return list(self._gens)

    def serialize_elem(self, a):
        return self.names[a]

    def parse_elem(self, obj):
        return self.resolve_name(str(obj))

    def format_elem(self, a) -> str:
        return self.names[a]

    def resolve_name(self, name: str):
        if name not in self._name_index:
            raise ValidationError(f"unknown element name {name!r}")
        return self._name_index[name]

    def describe(self) -> dict:
        return {
            "kind": "finite",
            "table": [list(row) for row in self._table],
            "names": list(self.names),
        }


class FgAbelianGroup(GroupBackend):
    """Finitely generated abelian group: free rank r plus invariant factors
    d1 | d2 | ... | ds (each >= 2).  Elements are integer vectors of length
    r+s, free coordinates first, torsion coordinates reduced into [0, di)."""

    kind = "fgabelian"

    def __init__(self, free_rank: int, torsion: Sequence[int] = ()):
        if free_rank < 0:
            raise ValidationError("free rank must be non-negative")
        torsion = [int(d) for d in torsion]
        for d in torsion:
            if d < 2:
                raise ValidationError("invariant factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a != 0:
                raise ValidationError("invariant factors must form a divisibility chain")
        self.free_rank = free_rank
        self.torsion = tuple(torsion)
        self.width = free_rank + len(torsion)
        if self.width == 0:
            raise ValidationError("trivial presentation: need rank or torsion")
        self.is_finite = free_rank == 0

    def reduce(self, vec: Sequence[int]) -> tuple:
        if len(vec) != self.width:
            raise ValidationError(
                f"element width {len(vec)} != {self.width} for this group"
            )
        r = self.free_rank
        out = list(map(int, vec))
        for i, d in enumerate(self.torsion):
            out[r + i] %= d
        return tuple(out)

    @property
    def identity(self):
        return (0,) * self.width

    def op(self, a, b):
        return self.reduce([x + y for x, y in zip(a, b)])

    def inv(self, a):
        return self.reduce([-x for x in a])

    def order(self) -> int:
        if not self.is_finite:
            raise ValidationError("group has positive free rank")
        out = 1
        for d in self.torsion:
            out *= d
        return out

    def elements(self):
        if not self.is_finite:
            raise ValidationError("group has positive free rank")
        for combo in itertools.product(*(range(d) for d in self.torsion)):
            yield tuple(combo)

    def generators(self) -> list:
        gens = []
        for i in range(self.width):
            vec = [0] * self.width
            vec[i] = 1
            gens.append(self.reduce(vec))
        return gens

    def serialize_elem(self, a):
        return list(a)

    def parse_elem(self, obj):
        return self.reduce([int(v) for v in obj])

    def format_elem(self, a) -> str:
        return ",".join(str(v) for v in a)

    def resolve_name(self, name: str):
        try:
            return self.reduce([int(p) for p in name.split(",")])
        except ValueError as exc:
            raise ValidationError(f"bad abelian element {name!r}") from exc

    def describe(self) -> dict:
        return {
            "kind": "fgabelian",
            "free_rank": self.free_rank,
            "torsion": list(self.torsion),
        }


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValidationError(f"bad rational {text!r}") from exc


class QmodZGroup(GroupBackend):
    """Additive rationals modulo one: elements are reduced fractions in
    [0, 1).  Every element has finite order equal to its denominator."""

    kind = "qmodz"

    @property
    def identity(self):
        return Fraction(0)

    def reduce(self, f: Fraction) -> Fraction:
        return f % 1

    def op(self, a, b):
        return (a + b) % 1

    def inv(self, a):
        return (-a) % 1

    def generators(self) -> list:
        return []

    def serialize_elem(self, a):
        return f"{a.numerator}/{a.denominator}"

    def parse_elem(self, obj):
        return self.reduce(_parse_fraction(str(obj)))

    def format_elem(self, a) -> str:
        return f"{a.numerator}/{a.denominator}"

    def resolve_name(self, name: str):
        return self.parse_elem(name)

    def describe(self) -> dict:
        return {"kind": "qmodz"}


class FieldAdditiveGroup(GroupBackend):
    """Additive group of the rational field, with exact arithmetic."""

    kind = "field_q"

    @property
    def identity(self):
        return Fraction(0)

    def op(self, a, b):
        return a + b

    def inv(self, a):
        return -a

    def generators(self) -> list:
        return []

    def serialize_elem(self, a):
        return f"{a.numerator}/{a.denominator}"

    def parse_elem(self, obj):
        return _parse_fraction(str(obj))

    def format_elem(self, a) -> str:
        if a.denominator == 1:
            return str(a.numerator)
        return f"{a.numerator}/{a.denominator}"

    def resolve_name(self, name: str):
        return self.parse_elem(name)

    def describe(self) -> dict:
        return {"kind": "field_q"}


class DirectProductGroup(GroupBackend):
    """Binary direct product; elements are (left, right) pairs."""

    kind = "product"

    def __init__(self, left: GroupBackend, right: GroupBackend):
        self.left = left
        self.right = right
        self.is_finite = left.is_finite and right.is_finite
        self._realized = None

    @property
    def identity(self):
        return (self.left.identity, self.right.identity)

    def op(self, a, b):
        return (self.left.op(a[0], b[0]), self.right.op(a[1], b[1]))

    def inv(self, a):
        return (self.left.inv(a[0]), self.right.inv(a[1]))

    def eq(self, a, b):
        return self.left.eq(a[0], b[0]) and self.right.eq(a[1], b[1])

    def order(self) -> int:
        return self.left.order() * self.right.order()

    def elements(self):
        for a in self.left.elements():
            for b in self.right.elements():
                yield (a, b)

    def generators(self) -> list:
        out = [(g, self.right.identity) for g in self.left.generators()]
        out += [(self.left.identity, g) for g in self.right.generators()]
        return out

    def serialize_elem(self, a):
        return [self.left.serialize_elem(a[0]), self.right.serialize_elem(a[1])]

    def parse_elem(self, obj):
        return (self.left.parse_elem(obj[0]), self.right.parse_elem(obj[1]))

    def format_elem(self, a) -> str:
        return f"{self.left.format_elem(a[0])}|{self.right.format_elem(a[1])}"

    def resolve_name(self, name: str):
        for pos in range(len(name)):
            if name[pos] != "|":
                continue
            try:
                return (
                    self.left.resolve_name(name[:pos]),
                    self.right.resolve_name(name[pos + 1 :]),
                )
            except ValidationError:
                continue
        raise ValidationError(f"bad product element {name!r}")

    def describe(self) -> dict:
        return {
            "kind": "product",
            "factors": [self.left.describe(), self.right.describe()],
        }


class DirectPowerGroup(GroupBackend):
    """k-fold direct power of one backend; elements are k-tuples."""

    kind = "power"

    def __init__(self, base: GroupBackend, copies: int):
        if copies < 1:
            raise ValidationError("need at least one copy")
        self.base = base
        self.copies = copies
        self.is_finite = base.is_finite
        self._realized = None

    @property
    def identity(self):
        return (self.base.identity,) * self.copies

    def op(self, a, b):
        return tuple(self.base.op(x, y) for x, y in zip(a, b))

    def inv(self, a):
        return tuple(self.base.inv(x) for x in a)

    def eq(self, a, b):
        return all(self.base.eq(x, y) for x, y in zip(a, b))

    def order(self) -> int:
        return self.base.order() ** self.copies

    def elements(self):
        pools = [list(self.base.elements()) for _ in range(self.copies)]
        for combo in itertools.product(*pools):
            yield tuple(combo)

    def generators(self) -> list:
        out = []
        for i in range(self.copies):
            for g in self.base.generators():
                vec = [self.base.identity] * self.copies
                vec[i] = g
                out.append(tuple(vec))
        return out

    def serialize_elem(self, a):
        return [self.base.serialize_elem(x) for x in a]

    def parse_elem(self, obj):
        if len(obj) != self.copies:
            raise ValidationError("wrong number of components")
        return tuple(self.base.parse_elem(x) for x in obj)

    def format_elem(self, a) -> str:
        return "|".join(self.base.format_elem(x) for x in a)

    def resolve_name(self, name: str):
        parts = name.split("|")
        if len(parts) != self.copies:
            raise ValidationError(f"bad power element {name!r}")
        return tuple(self.base.resolve_name(p) for p in parts)

    def describe(self) -> dict:
        return {
            "kind": "power",
            "base": self.base.describe(),
            "copies": self.copies,
        }


# ---------------------------------------------------------------------------
# standard finite groups


def cyclic(n: int, gen_name: str = "a") -> FiniteGroup:
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    names = ["e"] + [gen_name if k == 1 else f"{gen_name}{k}" for k in range(1, n)]
    return FiniteGroup(table, names)


def _perm_compose(p, q):
    # apply p first, then q
    return tuple(q[p[i]] for i in range(len(p)))


def _cycle_name(p) -> str:
    n = len(p)
    seen = [False] * n
    parts = []
    for i in range(n):
        if seen[i] or p[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = p[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = p[j]
        parts.append("(" + "".join(str(k + 1) for k in cyc) + ")")
    return "".join(parts) if parts else "e"


def symmetric(n: int) -> FiniteGroup:
    perms = sorted(itertools.permutations(range(n)))
    ident = tuple(range(n))
    perms.remove(ident)
    perms.insert(0, ident)
    index = {p: i for i, p in enumerate(perms)}
    table = [[index[_perm_compose(p, q)] for q in perms] for p in perms]
    return FiniteGroup(table, [_cycle_name(p) for p in perms])


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon: r of order n, f of order 2, f r f = r^-1."""
    elems = [(i, j) for j in (0, 1) for i in range(n)]
    index = {e: k for k, e in enumerate(elems)}

    def mul(a, b):
        i, j = a
        k, l = b
        return ((i + (k if j == 0 else -k)) % n, (j + l) % 2)

    table = [[index[mul(a, b)] for b in elems] for a in elems]

    def nm(e):
        i, j = e
        r = "" if i == 0 else ("r" if i == 1 else f"r{i}")
        f = "f" if j else ""
        return (r + f) or "e"

    return FiniteGroup(table, [nm(e) for e in elems])


def quaternion() -> FiniteGroup:
    names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
    index = {nm: k for k, nm in enumerate(names)}

    def neg(x):
        return x[1:] if x.startswith("-") else "-" + x

    base = {
        ("i", "i"): "-1", ("j", "j"): "-1", ("k", "k"): "-1",
        ("i", "j"): "k", ("j", "k"): "i", ("k", "i"): "j",
        ("j", "i"): "-k", ("k", "j"): "-i", ("i", "k"): "-j",
    }

    def mul(a, b):
        sign = (a.startswith("-")) ^ (b.startswith("-"))
        ua, ub = a.lstrip("-"), b.lstrip("-")
        if ua == "1":
            out = ub
        elif ub == "1":
            out = ua
        elif ua == ub:
            out = "-1"
        else:
            out = base[(ua, ub)]
        if sign:
            out = neg(out)
        return out

    table = [[index[mul(a, b)] for b in names] for a in names]
    return FiniteGroup(table, names)


def klein_four() -> FiniteGroup:
    table = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]
    return FiniteGroup(table, ["e", "a", "b", "ab"])


def finite_direct_product(a: FiniteGroup, b: FiniteGroup) -> FiniteGroup:
    """Materialize A x B as one Cayley table with pair names joined by '|'."""
    na, nb = a.order(), b.order()
    table = [
        [
            a.op(i // nb, k // nb) * nb + b.op(i % nb, k % nb)
            for k in range(na * nb)
        ]
        for i in range(na * nb)
    ]
    names = [f"{a.names[i // nb]}|{b.names[i % nb]}" for i in range(na * nb)]
    return FiniteGroup(table, names)


# ---------------------------------------------------------------------------
# finite realization (shared by the closure oracles)

_REALIZE_MAX_ORDER = 4096


class CayleyRealization:
    """Indexed view of any finite backend: element list, index lookup,
    numpy Cayley and inverse tables, and a small generating set."""

    def __init__(self, backend: GroupBackend):
        if not backend.is_finite:
            raise ValidationError("cannot realize a non-finite backend")
        elems = list(backend.elements())
        if not backend.eq(elems[0], backend.identity):
            elems.remove(next(e for e in elems if backend.eq(e, backend.identity)))
            elems.insert(0, backend.identity)
        q = len(elems)
        if q > _REALIZE_MAX_ORDER:
            raise ValidationError(
                f"backend of order {q} exceeds realization bound {_REALIZE_MAX_ORDER}"
            )
        self.backend = backend
        self.elems = elems
        self.index = {e: i for i, e in enumerate(elems)}
        table = np.zeros((q, q), dtype=np.int32)
        for i, a in enumerate(elems):
            for j, b in enumerate(elems):
                table[i, j] = self.index[backend.op(a, b)]
        self.table = table
        inv = np.zeros(q, dtype=np.int32)
        for i, a in enumerate(elems):
            inv[i] = self.index[backend.inv(a)]
        self.inv = inv
        if isinstance(backend, FiniteGroup):
            self.gen_indices = [self.index[g] for g in backend.generators()]
        else:
            self.gen_indices = self._greedy_generators()

    def _greedy_generators(self) -> list[int]:
        q = len(self.elems)
        gens: list[int] = []
        covered = self._closure(gens)
        for x in range(1, q):
            if x not in covered:
                gens.append(x)
                covered = self._closure(gens)
                if len(covered) == q:
                    break
        return gens

    def _closure(self, seeds: list[int]) -> set[int]:
        seen = {0}
        frontier = [0]
        t = self.table
        while frontier:
            x = frontier.pop()
            for s in seeds:
                for y in (int(t[x, s]), int(t[x, self.inv[s]])):
                    if y not in seen:
                        seen.add(y)
                        frontier.append(y)
        return seen


def realize(backend: GroupBackend) -> CayleyRealization:
    cached = getattr(backend, "_realized", None)
    if cached is None:
        cached = CayleyRealization(backend)
        try:
            backend._realized = cached
        except AttributeError:
            pass
    return cached


# ---------------------------------------------------------------------------
# JSON schema

_CANONICAL = {"sort_keys": True, "separators": (",", ":")}


def group_to_json(backend: GroupBackend) -> str:
    return json.dumps(backend.describe(), **_CANONICAL)


def group_hash(backend: GroupBackend) -> str:
    return hashlib.sha256(group_to_json(backend).encode()).hexdigest()


def group_from_dict(spec: dict) -> GroupBackend:
    from .semidirect import SemidirectGroup

    if not isinstance(spec, dict) or "kind" not in spec:
        raise ValidationError("group definition must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "finite":
        return FiniteGroup(spec["table"], spec.get("names"))
    if kind == "fgabelian":
        return FgAbelianGroup(spec.get("free_rank", 0), spec.get("torsion", ()))
    if kind == "qmodz":
        return QmodZGroup()
    if kind == "field_q":
        return FieldAdditiveGroup()
    if kind == "product":
        f = spec["factors"]
        if len(f) != 2:
            raise ValidationError("product takes exactly two factors")
        return DirectProductGroup(group_from_dict(f[0]), group_from_dict(f[1]))
    if kind == "power":
        return DirectPowerGroup(group_from_dict(spec["base"]), int(spec["copies"]))
    if kind == "semidirect":
        return SemidirectGroup.from_dict(spec)
    raise ValidationError(f"unknown group kind {kind!r}")


def group_from_json(text: str) -> GroupBackend:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"bad group JSON: {exc}") from exc
    return group_from_dict(spec)
