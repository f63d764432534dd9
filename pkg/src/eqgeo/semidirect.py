"""Semidirect products T x| H with T finite, and the wreath-product
embedding for a finite group with a designated subgroup.

The product convention is (t, h) * (t', h') = (t t', act(t')(h) h'), which
matches the normal form t*h of a group with normal H: act(t) is conjugation
x -> t^-1 x t, and act(t t') = act(t') o act(t).

Supported action encodings: permutations of element indices (finite H),
integer matrices (finitely generated abelian H, torsion respected), and
coordinate permutations (direct powers, as produced by wreath embedding).
"""

from __future__ import annotations

import itertools
import random
from typing import Optional, Sequence

from .errors import ValidationError
from .groups import (
    DirectPowerGroup,
    FgAbelianGroup,
    FiniteGroup,
    GroupBackend,
    group_from_dict,
)

_ACTION_KINDS = ("perm", "matrix", "coordperm")


class SemidirectGroup(GroupBackend):
    """Pairs (t, h) with t an index into the finite acting group T and h an
    element of the backend H.  Validated at construction: the action must be
    a homomorphism-compatible family of automorphisms."""

    kind = "semidirect"

    def __init__(
        self,
        acting: FiniteGroup,
        normal: GroupBackend,
        action_kind: str,
        action_data: Sequence,
        names: Optional[Sequence[str]] = None,
    ):
        if action_kind not in _ACTION_KINDS:
            raise ValidationError(f"unknown action kind {action_kind!r}")
        self.acting = acting
        self.normal = normal
        self.action_kind = action_kind
        k = acting.order()
        if len(action_data) != k:
            raise ValidationError("need one action entry per element of the acting group")
        if action_kind == "perm":
            if not isinstance(normal, FiniteGroup):
                raise ValidationError("perm actions require a finite Cayley-table group")
            self.action_data = tuple(tuple(int(v) for v in p) for p in action_data)
            for p in self.action_data:
                if sorted(p) != list(range(normal.order())):
                    raise ValidationError("action entry is not a permutation")
        elif action_kind == "matrix":
            if not isinstance(normal, FgAbelianGroup):
                raise ValidationError("matrix actions require an abelian group")
            self.action_data = tuple(
                tuple(tuple(int(v) for v in row) for row in mat) for mat in action_data
            )
            self._validate_matrices()
        else:
            if not isinstance(normal, DirectPowerGroup):
                raise ValidationError("coordinate permutations require a direct power")
            self.action_data = tuple(tuple(int(v) for v in p) for p in action_data)
            for p in self.action_data:
                if sorted(p) != list(range(normal.copies)):
                    raise ValidationError("action entry is not a coordinate permutation")
        self.is_finite = normal.is_finite
        self.names = tuple(names) if names is not None else None
        self._name_map = None
        if self.names is not None:
            if not self.is_finite or len(self.names) != self.order():
                raise ValidationError("custom names require one name per element")
            self._name_map = {nm: e for nm, e in zip(self.names, self.elements())}
        self._realized = None
        self._validate_action()

    # -- action ----------------------------------------------------------

    def act(self, t: int, h):
        """Image of h under the automorphism attached to t (conjugation by t)."""
        if self.action_kind == "perm":
            return self.action_data[t][h]
        if self.action_kind == "matrix":
            mat = self.action_data[t]
            return self.normal.reduce(
                [sum(mat[i][j] * h[j] for j in range(len(h))) for i in range(len(h))]
            )
        perm = self.action_data[t]
        return tuple(h[perm[j]] for j in range(len(perm)))

    def _validate_matrices(self):
        H = self.normal
        r = H.free_rank
        for mat in self.action_data:
            if len(mat) != H.width or any(len(row) != H.width for row in mat):
                raise ValidationError("action matrix has wrong shape")
            for j, dj in enumerate(H.torsion):
                for i in range(H.width):
                    src_mod = None if i < r else H.torsion[i - r]
                    entry = mat[r + j][i]
                    if src_mod is not None and (entry * src_mod) % dj != 0:
                        raise ValidationError(
                            "action matrix does not respect the torsion orders"
                        )
            for i in range(r):
                for j in range(H.width):
                    if j >= r and mat[i][j] != 0:
                        raise ValidationError(
                            "action matrix maps a torsion coordinate to a free one"
                        )

    def _validate_action(self):
        T, H = self.acting, self.normal
        probes = list(H.generators())
        if H.is_finite and H.order() <= 64:
            probes = list(H.elements())
        if not probes:
            probes = [H.identity]
        for h in probes:
            if not H.eq(self.act(0, h), h):
                raise ValidationError("identity of T must act trivially")
        for t1 in T.elements():
            for t2 in T.elements():
                t12 = T.op(t1, t2)
                for h in probes:
                    if not H.eq(self.act(t12, h), self.act(t2, self.act(t1, h))):
                        raise ValidationError(
                            "action is not compatible with the product of T"
                        )
        rng = random.Random(0x5D17)
        pairs = list(itertools.product(probes, probes))
        if len(pairs) > 64:
            pairs = rng.sample(pairs, 64)
        for t in T.elements():
            for h1, h2 in pairs:
                if not H.eq(
                    self.act(t, H.op(h1, h2)), H.op(self.act(t, h1), self.act(t, h2))
                ):
                    raise ValidationError("action entries are not homomorphisms")

    # -- group interface --------------------------------------------------

    @property
    def identity(self):
        return (0, self.normal.identity)

    def op(self, a, b):
        t1, h1 = a
        t2, h2 = b
        return (self.acting.op(t1, t2), self.normal.op(self.act(t2, h1), h2))

    def inv(self, a):
        t, h = a
        ti = self.acting.inv(t)
        return (ti, self.act(ti, self.normal.inv(h)))

    def eq(self, a, b):
        return a[0] == b[0] and self.normal.eq(a[1], b[1])

    def split(self, a):
        """Unique (torsion-part, normal-part) decomposition of an element."""
        return (a[0], a[1])

    def build(self, t: int, h):
        return (int(t), h)

    def order(self) -> int:
        return self.acting.order() * self.normal.order()

    def elements(self):
        hs = list(self.normal.elements())
        for t in self.acting.elements():
            for h in hs:
                yield (t, h)

    def generators(self) -> list:
        out = [(g, self.normal.identity) for g in self.acting.generators()]
        out += [(0, g) for g in self.normal.generators()]
        return out

    def serialize_elem(self, a):
        return [self.acting.serialize_elem(a[0]), self.normal.serialize_elem(a[1])]

    def parse_elem(self, obj):
        return (self.acting.parse_elem(obj[0]), self.normal.parse_elem(obj[1]))

    def format_elem(self, a) -> str:
        if self.names is not None:
            t, h = a
            hs = list(self.normal.elements())
            pos = next(i for i, x in enumerate(hs) if self.normal.eq(x, h))
            return self.names[t * len(hs) + pos]
        return f"{self.acting.format_elem(a[0])}|{self.normal.format_elem(a[1])}"

    def resolve_name(self, name: str):
        if self._name_map is not None and name in self._name_map:
            return self._name_map[name]
        for pos in range(len(name)):
            if name[pos] != "|":
                continue
            try:
                return (
                    self.acting.resolve_name(name[:pos]),
                    self.normal.resolve_name(name[pos + 1 :]),
                )
            except ValidationError:
                continue
        raise ValidationError(f"bad semidirect element {name!r}")

    def describe(self) -> dict:
        spec = {
            "kind": "semidirect",
            "acting": self.acting.describe(),
            "normal": self.normal.describe(),
            "action": {
                "type": self.action_kind,
                "data": [
                    [list(row) for row in entry]
                    if self.action_kind == "matrix"
                    else list(entry)
                    for entry in self.action_data
                ],
            },
        }
        if self.names is not None:
            spec["names"] = list(self.names)
        return spec

    @staticmethod
    def from_dict(spec: dict) -> "SemidirectGroup":
        acting = group_from_dict(spec["acting"])
        if not isinstance(acting, FiniteGroup):
            raise ValidationError("acting group must be finite")
        normal = group_from_dict(spec["normal"])
        action = spec["action"]
        return SemidirectGroup(
            acting, normal, action["type"], action["data"], spec.get("names")
        )


def split(group: SemidirectGroup, a):
    return group.split(a)


# ---------------------------------------------------------------------------
# standard split groups


def s3_split() -> SemidirectGroup:
    """S3 presented as Z/2 acting on Z/3 by inversion, with the familiar
    element names e, r, r2, f, fr, fr2."""
    T = cyclic2 = _cyclic_named(2, "f")
    H = _cyclic_named(3, "r")
    perms = [[0, 1, 2], [0, 2, 1]]
    names = ["e", "r", "r2", "f", "fr", "fr2"]
    return SemidirectGroup(cyclic2, H, "perm", perms, names)


def d4_split() -> SemidirectGroup:
    T = _cyclic_named(2, "f")
    H = _cyclic_named(4, "r")
    perms = [[0, 1, 2, 3], [0, 3, 2, 1]]
    names = ["e", "r", "r2", "r3", "f", "fr", "fr2", "fr3"]
    return SemidirectGroup(T, H, "perm", perms, names)


def d5_split() -> SemidirectGroup:
    T = _cyclic_named(2, "f")
    H = _cyclic_named(5, "r")
    perms = [[0, 1, 2, 3, 4], [0, 4, 3, 2, 1]]
    return SemidirectGroup(T, H, "perm", perms)


def d6_split() -> SemidirectGroup:
    T = _cyclic_named(2, "f")
    H = _cyclic_named(6, "r")
    perms = [list(range(6)), [0, 5, 4, 3, 2, 1]]
    return SemidirectGroup(T, H, "perm", perms)


def a4_split() -> SemidirectGroup:
    """A4 as Z/3 acting on the Klein four group by cycling its involutions."""
    T = _cyclic_named(3, "c")
    H = FgAbelianGroup(0, [2, 2])
    m0 = [[1, 0], [0, 1]]
    m1 = [[0, 1], [1, 1]]
    m2 = [[1, 1], [1, 0]]
    return SemidirectGroup(T, H, "matrix", [m0, m1, m2])


def v4_split() -> SemidirectGroup:
    """Klein four group as a split extension with trivial action."""
    T = _cyclic_named(2, "f")
    H = _cyclic_named(2, "b")
    return SemidirectGroup(T, H, "perm", [[0, 1], [0, 1]])


def z2_on_z2_squared() -> SemidirectGroup:
    """Z/2 acting on Z^2 by negation (an infinite split backend)."""
    T = _cyclic_named(2, "t")
    H = FgAbelianGroup(2)
    ident = [[1, 0], [0, 1]]
    neg = [[-1, 0], [0, -1]]
    return SemidirectGroup(T, H, "matrix", [ident, neg])


def _cyclic_named(n: int, gen: str) -> FiniteGroup:
    from .groups import cyclic

    return cyclic(n, gen)


# ---------------------------------------------------------------------------
# wreath embedding

_WREATH_EXHAUSTIVE_MAX = 24


def wreath_embed(group: FiniteGroup, subgroup_elems: Sequence[int]):
    """Embed a finite group into T x| (core H)^|T| where T is the quotient by
    the core of the given subgroup and T permutes the coordinates.

    Returns (W, images) with W a SemidirectGroup over a direct power and
    ``images`` the list mapping each element index of the input group to its
    image in W.  The map is verified to be an injective homomorphism
    (exhaustively up to order 24, on random pairs above).
    """
    n = group.order()
    hset = sorted(set(int(x) for x in subgroup_elems))
    if 0 not in hset:
        raise ValidationError("subgroup must contain the identity")
    hfr = frozenset(hset)
    for a in hset:
        if group.inv(a) not in hfr:
            raise ValidationError("subgroup is not closed under inverses")
        for b in hset:
            if group.op(a, b) not in hfr:
                raise ValidationError("subgroup is not closed under the operation")

    core = set(hset)
    for g in range(n):
        gi = group.inv(g)
        core &= {group.op(group.op(gi, h), g) for h in hset}
    core = sorted(core)
    cidx = {h: i for i, h in enumerate(core)}
    for g in range(n):
        gi = group.inv(g)
        for h in core:
            if group.op(group.op(gi, h), g) not in cidx:
                raise ValidationError("core is not normal (internal error)")

    core_group = FiniteGroup(
        [[cidx[group.op(a, b)] for b in core] for a in core],
        [group.names[h] for h in core],
    )

    # left cosets of the core, identity coset first, earliest-element reps
    coset_of = [-1] * n
    reps: list[int] = []
    for a in range(n):
        if coset_of[a] >= 0:
            continue
        j = len(reps)
        reps.append(a)
        for h in core:
            coset_of[group.op(a, h)] = j
    k = len(reps)
    ttable = [[coset_of[group.op(reps[u], reps[v])] for v in range(k)] for u in range(k)]
    T = FiniteGroup(ttable, [group.names[r] for r in reps])

    base = DirectPowerGroup(core_group, k)
    coordperms = [[T.op(t, j) for j in range(k)] for t in range(k)]
    W = SemidirectGroup(T, base, "coordperm", coordperms)

    def phi(a: int):
        u = coset_of[a]
        f = []
        for j in range(k):
            m = group.op(group.op(group.inv(reps[T.op(u, j)]), a), reps[j])
            f.append(cidx[m])
        return (u, tuple(f))

    images = [phi(a) for a in range(n)]

    if n <= _WREATH_EXHAUSTIVE_MAX:
        pairs = itertools.product(range(n), repeat=2)
    else:
        rng = random.Random(0x37EA)
        pairs = ((rng.randrange(n), rng.randrange(n)) for _ in range(2000))
    for a, b in pairs:
        if not W.eq(W.op(images[a], images[b]), images[group.op(a, b)]):
            raise ValidationError("wreath embedding failed the homomorphism check")
    if len({img for img in images}) != n:
        raise ValidationError("wreath embedding is not injective")
    return W, images
