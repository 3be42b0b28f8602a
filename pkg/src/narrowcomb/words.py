"""Free-group words over the fixed alphabet {x, y, z}.

Letters are small signed integers: ``x = 1``, ``y = 2``, ``z = 3`` and the
inverse of a letter is its negation.  ``0`` is the pause symbol, which may
only appear as a step of a combing path, never inside a word.  A word is a
plain tuple of letters.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator

Letter = int
Word = tuple[int, ...]

X, Y, Z = 1, 2, 3
PAUSE = 0
GENERATORS: tuple[Letter, ...] = (X, -X, Y, -Y, Z, -Z)

_NAMES = {X: "x", Y: "y", Z: "z"}
_TOKEN = re.compile(r"([xyzXYZ1])(?:\^(-?\d+))?")


class WordSyntaxError(ValueError):
    pass


def inverse(letter: Letter) -> Letter:
    return -letter


def inverse_word(w: Iterable[Letter]) -> Word:
    return tuple(-a for a in reversed(tuple(w)))


def power(letter: Letter, e: int) -> Word:
    """``letter^e`` spelled out letter by letter."""
    return (letter,) * e if e >= 0 else (-letter,) * (-e)


def free_reduce(w: Iterable[Letter]) -> Word:
    out: list[int] = []
    for a in w:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def cyclic_reduce(w: Iterable[Letter]) -> Word:
    r = free_reduce(w)
    i, j = 0, len(r)
    while j - i >= 2 and r[i] == -r[j - 1]:
        i += 1
        j -= 1
    return r[i:j]


def is_freely_reduced(w: Word) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def commutator(a: Iterable[Letter], b: Iterable[Letter]) -> Word:
    a, b = tuple(a), tuple(b)
    return free_reduce(a + b + inverse_word(a) + inverse_word(b))


def word_w_n(n: int, q: int) -> Word:
    """The hard family ``[x^n, y^(qn)] . [y^(-qn), x^(-n)]``."""
    if n < 1 or q < 1:
        raise ValueError("n and q must be positive")
    first = commutator(power(X, n), power(Y, q * n))
    second = commutator(power(Y, -q * n), power(X, -n))
    return free_reduce(first + second)


def runs(w: Iterable[Letter]) -> Iterator[tuple[int, int]]:
    """Yield ``(generator, exponent)`` for maximal runs of one generator."""
    gen, exp = 0, 0
    for a in w:
        g = abs(a)
        s = 1 if a > 0 else -1
        if g == gen and (exp > 0) == (s > 0):
            exp += s
        else:
            if gen:
                yield gen, exp
            gen, exp = g, s
    if gen:
        yield gen, exp


def parse_word(text: str) -> Word:
    """Parse ``"x y^2 X z^-3"``-style text; uppercase letters are inverses.

    ``1`` denotes the empty word.
    """
    s = "".join(text.split())
    letters: list[int] = []
    pos = 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if m is None:
            raise WordSyntaxError(f"unexpected symbol {s[pos]!r} at position {pos} in {text!r}")
        name, exp = m.group(1), m.group(2)
        pos = m.end()
        if name == "1":
            if exp is not None:
                raise WordSyntaxError("the identity takes no exponent")
            continue
        base = {"x": X, "y": Y, "z": Z}[name.lower()]
        if name.isupper():
            base = -base
        letters.extend(power(base, int(exp) if exp is not None else 1))
    return tuple(letters)


def format_word(w: Iterable[Letter]) -> str:
    parts = []
    for gen, e in runs(w):
        name = _NAMES[gen] if e > 0 else _NAMES[gen].upper()
        parts.append(name if abs(e) == 1 else f"{name}^{abs(e)}")
    return " ".join(parts) if parts else "1"
