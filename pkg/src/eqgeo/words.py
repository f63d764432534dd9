"""Words over a coefficient group: reduced elements of the free product of a
backend group with a free group on variables x1..xn.

A word is a sequence of letters, each either a signed variable occurrence or
a coefficient drawn from a fixed backend group.  Normalization enforces the
free-product reduced form: no identity coefficients, no two adjacent
coefficients (they merge), no adjacent x*x^-1 pair.  The reduced form is
unique, so words compare by plain sequence equality.

Exponents other than +-1 are stored as letter repetition; builders and the
text parser accept integer exponents and expand them.  Words are immutable
and all operations are pure, so they are safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .errors import ArityError, SubstitutionError


@dataclass(frozen=True)
class VarLetter:
    """One occurrence of a variable, 1-based index, sign +1 or -1."""

    index: int
    sign: int


@dataclass(frozen=True)
class CoefLetter:
    """One non-identity coefficient from the word's backend group."""

    elem: Any


Letter = VarLetter | CoefLetter


class Word:
    """Reduced word over ``group`` in variables x1..x{arity}.

    Equality and hashing use the letter sequence and arity only; two words
    built over equal backends compare equal letter-for-letter.
    """

    __slots__ = ("group", "arity", "letters")

    def __init__(self, group, arity: int, letters: tuple):
        self.group = group
        self.arity = arity
        self.letters = letters

    def __eq__(self, other):
        return (
            isinstance(other, Word)
            and self.arity == other.arity
            and self.letters == other.letters
        )

    def __hash__(self):
        return hash((self.arity, self.letters))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __repr__(self):
        from .parser import print_word

        return f"Word({print_word(self)!r}, arity={self.arity})"

    def is_identity(self) -> bool:
        return not self.letters

    def inverse(self) -> "Word":
        return invert(self)

    def variables_used(self) -> set[int]:
        return {l.index for l in self.letters if isinstance(l, VarLetter)}


def _reduce(group, arity: int, raw: Iterable[Letter]) -> tuple:
    """Single left-to-right pass keeping the stack in reduced form."""
    stack: list[Letter] = []
    pending = list(raw)
    pending.reverse()
    while pending:
        let = pending.pop()
        if isinstance(let, CoefLetter):
            if group.is_identity(let.elem):
                continue
            if stack and isinstance(stack[-1], CoefLetter):
                merged = group.op(stack[-1].elem, let.elem)
                stack.pop()
                pending.append(CoefLetter(merged))
                continue
            stack.append(let)
        else:
            if let.sign not in (1, -1):
                raise ArityError(f"variable sign must be +-1, got {let.sign}")
            if not 1 <= let.index <= arity:
                raise ArityError(
                    f"variable x{let.index} out of range for arity {arity}"
                )
            top = stack[-1] if stack else None
            if (
                isinstance(top, VarLetter)
                and top.index == let.index
                and top.sign == -let.sign
            ):
                stack.pop()
                continue
            stack.append(let)
    return tuple(stack)


def normalize(group, arity: int, raw: Sequence[Letter]) -> Word:
    """Reduce an arbitrary letter sequence to the unique normal form."""
    return Word(group, arity, _reduce(group, arity, raw))


def identity_word(group, arity: int) -> Word:
    return Word(group, arity, ())


def variable_word(group, arity: int, index: int, exponent: int = 1) -> Word:
    if not 1 <= index <= arity:
        raise ArityError(f"variable x{index} out of range for arity {arity}")
    sign = 1 if exponent > 0 else -1
    return Word(group, arity, (VarLetter(index, sign),) * abs(exponent))


def coefficient_word(group, arity: int, elem) -> Word:
    if group.is_identity(elem):
        return identity_word(group, arity)
    return Word(group, arity, (CoefLetter(elem),))


def word_from_parts(group, arity: int, parts: Sequence) -> Word:
    """Build a word from (index, exponent) pairs and raw coefficient elements."""
    letters: list[Letter] = []
    for p in parts:
        if isinstance(p, tuple):
            index, exponent = p
            sign = 1 if exponent > 0 else -1
            letters.extend([VarLetter(index, sign)] * abs(exponent))
        else:
            letters.append(CoefLetter(p))
    return normalize(group, arity, letters)


def multiply(u: Word, v: Word) -> Word:
    if u.arity != v.arity:
        raise ArityError(f"arity mismatch: {u.arity} vs {v.arity}")
    return normalize(u.group, u.arity, u.letters + v.letters)


def invert(u: Word) -> Word:
    letters = []
    for let in reversed(u.letters):
        if isinstance(let, VarLetter):
            letters.append(VarLetter(let.index, -let.sign))
        else:
            letters.append(CoefLetter(u.group.inv(let.elem)))
    return normalize(u.group, u.arity, letters)


def power(u: Word, k: int) -> Word:
    if k < 0:
        return power(invert(u), -k)
    out = identity_word(u.group, u.arity)
    for _ in range(k):
        out = multiply(out, u)
    return out


def substitute(w: Word, assignment: Mapping[int, Word]) -> Word:
    """Homomorphic image of ``w`` under a per-variable replacement.

    Every variable occurring in ``w`` must be assigned; all replacement
    words must share one group and arity, which become those of the result.
    Coefficient letters pass through unchanged.
    """
    used = w.variables_used()
    missing = sorted(i for i in used if i not in assignment)
    if missing:
        raise SubstitutionError(
            f"no replacement assigned for x{missing[0]}"
        )
    if used:
        some = assignment[next(iter(used))]
        target_group, target_arity = some.group, some.arity
        for i in used:
            if assignment[i].arity != target_arity:
                raise ArityError("replacement words disagree on arity")
    else:
        target_group, target_arity = w.group, w.arity

    letters: list[Letter] = []
    inverses: dict[int, Word] = {}
    for let in w.letters:
        if isinstance(let, CoefLetter):
            letters.append(let)
        elif let.sign == 1:
            letters.extend(assignment[let.index].letters)
        else:
            if let.index not in inverses:
                inverses[let.index] = invert(assignment[let.index])
            letters.extend(inverses[let.index].letters)
    return normalize(target_group, target_arity, letters)


def transform(
    w: Word,
    group,
    arity: int,
    var_map: Callable[[int, int], Sequence[Letter]],
    coef_map: Callable[[Any], Sequence[Letter]],
) -> Word:
    """Rebuild ``w`` letter by letter into a word over another group/arity.

    ``var_map(index, sign)`` and ``coef_map(elem)`` return replacement letter
    sequences; the result is normalized.  This is the common core of
    coefficient lifting and quotient coefficient wrapping.
    """
    letters: list[Letter] = []
    for let in w.letters:
        if isinstance(let, VarLetter):
            letters.extend(var_map(let.index, let.sign))
        else:
            letters.extend(coef_map(let.elem))
    return normalize(group, arity, letters)


def evaluate(
    w: Word,
    point: Sequence,
    target=None,
    embed: Optional[Callable] = None,
):
    """Evaluate ``w`` at a tuple of target-group elements.

    ``target`` defaults to the word's own group (coefficients evaluate as
    themselves).  When the coefficients live in a subgroup of the target,
    ``embed`` maps coefficient elements into the target group.
    """
    H = target if target is not None else w.group
    if len(point) != w.arity:
        raise ArityError(
            f"tuple length {len(point)} does not match arity {w.arity}"
        )
    acc = H.identity
    for let in w.letters:
        if isinstance(let, VarLetter):
            x = point[let.index - 1]
            acc = H.op(acc, x if let.sign == 1 else H.inv(x))
        else:
            c = embed(let.elem) if embed is not None else let.elem
            acc = H.op(acc, c)
    return acc


def vanishes(w: Word, point: Sequence, target=None, embed=None) -> bool:
    H = target if target is not None else w.group
    return H.is_identity(evaluate(w, point, target=target, embed=embed))


def net_exponents(w: Word) -> list[int]:
    """Signed occurrence count of each variable (index i at position i-1)."""
    alpha = [0] * w.arity
    for let in w.letters:
        if isinstance(let, VarLetter):
            alpha[let.index - 1] += let.sign
    return alpha


def coefficient_image(w: Word):
    """Product of all coefficient letters in order (their image when the
    target is abelian and all variables map to the identity)."""
    acc = w.group.identity
    for let in w.letters:
        if isinstance(let, CoefLetter):
            acc = w.group.op(acc, let.elem)
    return acc
