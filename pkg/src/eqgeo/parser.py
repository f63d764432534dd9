"""Text form of words.

Grammar:

    word := term { ("*" | whitespace) term } | "1" ;
    term := atom [ "^" integer ] ;
    atom := "x" index | "g:" name ;

"1" is the empty word.  Coefficient names resolve against the word's group.
In decomposition output an extra atom form "y:i:j" addresses the doubly
indexed variables of a conjugate block; pass ``y_block`` (the block width k)
to enable it, mapping y:i:j to variable (i-1)*k + j.
"""

from __future__ import annotations

from typing import Optional

from .errors import ParseError, ValidationError
from .words import CoefLetter, VarLetter, Word, normalize

_STOP = set(" \t*^")


def _scan_int(text: str, pos: int) -> tuple[int, int]:
    start = pos
    if pos < len(text) and text[pos] in "+-":
        pos += 1
    digits = pos
    while pos < len(text) and text[pos].isdigit():
        pos += 1
    if pos == digits:
        raise ParseError("expected an integer", start)
    return int(text[start:pos]), pos


def parse_word(
    text: str, group, arity: int, y_block: Optional[int] = None
) -> Word:
    stripped = text.strip()
    if stripped == "1":
        return Word(group, arity, ())
    letters = []
    pos = 0
    n = len(text)
    saw_term = False
    while pos < n:
        ch = text[pos]
        if ch in " \t*":
            pos += 1
            continue
        if ch == "x":
            index, pos = _scan_int(text, pos + 1)
            if not 1 <= index <= arity:
                raise ParseError(
                    f"variable x{index} out of range for arity {arity}", pos - 1
                )
        elif ch == "y" and y_block is not None and text[pos : pos + 2] == "y:":
            i, pos = _scan_int(text, pos + 2)
            if pos >= n or text[pos] != ":":
                raise ParseError("expected ':' in y:i:j", pos)
            j, pos = _scan_int(text, pos + 1)
            if not 1 <= j <= y_block:
                raise ParseError(f"block index {j} exceeds width {y_block}", pos - 1)
            index = (i - 1) * y_block + j
            if not 1 <= index <= arity:
                raise ParseError(f"y:{i}:{j} out of range for arity {arity}", pos - 1)
        elif ch == "g" and text[pos : pos + 2] == "g:":
            start = pos + 2
            end = start
            while end < n and text[end] not in _STOP:
                end += 1
            name = text[start:end]
            if not name:
                raise ParseError("empty coefficient name", start)
            try:
                elem = group.resolve_name(name)
            except ValidationError as exc:
                raise ParseError(str(exc), start) from exc
            pos = end
            exponent, pos = _maybe_exponent(text, pos)
            letters.extend(_coef_letters(group, elem, exponent))
            saw_term = True
            continue
        else:
            raise ParseError(f"unexpected character {ch!r}", pos)
        exponent, pos = _maybe_exponent(text, pos)
        sign = 1 if exponent > 0 else -1
        letters.extend([VarLetter(index, sign)] * abs(exponent))
        saw_term = True
    if not saw_term:
        raise ParseError("empty word text (write '1' for the identity)", 0)
    return normalize(group, arity, letters)


def _maybe_exponent(text: str, pos: int) -> tuple[int, int]:
    if pos < len(text) and text[pos] == "^":
        return _scan_int(text, pos + 1)
    return 1, pos


def _coef_letters(group, elem, exponent: int):
    if exponent < 0:
        elem = group.inv(elem)
        exponent = -exponent
    return [CoefLetter(elem)] * exponent


def print_word(w: Word, y_block: Optional[int] = None) -> str:
    if not w.letters:
        return "1"
    terms = []
    run_index = None
    run_sign = 0
    run_len = 0

    def flush():
        nonlocal run_index, run_len, run_sign
        if run_index is None:
            return
        name = _var_name(run_index, y_block)
        e = run_sign * run_len
        terms.append(name if e == 1 else f"{name}^{e}")
        run_index = None
        run_len = 0

    for let in w.letters:
        if isinstance(let, VarLetter):
            if run_index == let.index and run_sign == let.sign:
                run_len += 1
            else:
                flush()
                run_index, run_sign, run_len = let.index, let.sign, 1
        else:
            flush()
            terms.append(f"g:{w.group.format_elem(let.elem)}")
    flush()
    return " * ".join(terms)


def _var_name(index: int, y_block: Optional[int]) -> str:
    if y_block is None:
        return f"x{index}"
    i = (index - 1) // y_block + 1
    j = (index - 1) % y_block + 1
    return f"y:{i}:{j}"
