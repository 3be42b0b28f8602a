"""Exact arithmetic in G_q = <x, y, z | [x, y^q] = z, [x, z] = [y, z] = 1>.

Elements are kept in the canonical form

    y^s x^r1 y^s1 x^r2 ... y^s(m-1) x^rm y^p z^n

with every ``r_i != 0``, the head ``s`` and the interior runs ``s_i`` in the
window ``S_q`` (interior runs nonzero) and ``p`` unrestricted.  For ``q = 1``
the window is ``{0}`` and the shape collapses to ``x^r y^p z^n``.

Two independent normalisers are provided: a fast fold of right
multiplication by single letters, and a small-step rewriting engine that
applies relators of the presentation one at a time and tallies them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .words import PAUSE, X, Y, Z, Letter, Word, format_word, inverse_word, power, runs


@dataclass(frozen=True)
class GroupParams:
    """The group G_q together with its narrow-shape constants.

    ``M`` defaults to ``24 q + 18``; overriding it is only useful for
    exercising deeper diagram recursion.
    """

    q: int
    M: int | None = None
    k: Fraction = Fraction(11, 5)

    def __post_init__(self):
        if not isinstance(self.q, int) or self.q < 1:
            raise ValueError(f"q must be a positive integer, got {self.q!r}")
        if self.M is None:
            object.__setattr__(self, "M", 24 * self.q + 18)
        if self.M <= 1 or self.k <= 2:
            raise ValueError("narrow shape needs M > 1 and k > 2")

    def f(self, d: int) -> int:
        """Recursivity polynomial bounding combing-line length by distance."""
        if self.q == 1:
            return d * d + d
        return 2 * d * d + 3 * d

    @property
    def window(self) -> tuple[int, int]:
        """Inclusive bounds of the y-exponent window S_q."""
        q = self.q
        if q % 2 == 0:
            return -q // 2 + 1, q // 2
        return -(q - 1) // 2, (q - 1) // 2

    def in_window(self, s: int) -> bool:
        lo, hi = self.window
        return lo <= s <= hi

    def shift(self, p: int) -> int:
        """The unique ``l`` with ``p - l*q`` inside the window."""
        hi = self.window[1]
        return -((hi - p) // self.q)


@lru_cache(maxsize=None)
def params_for(q: int) -> GroupParams:
    return GroupParams(q)


class NormalForm(NamedTuple):
    """Canonical element of G_q.

    ``ys`` holds the y-exponents ``(s, s1, ..., s(m-1), p)`` (length m+1),
    ``xs`` the x-exponents ``(r1, ..., rm)`` and ``n`` the z-exponent.  For
    m = 0 the element is ``y^p z^n`` and ``ys == (p,)``.
    """

    ys: tuple[int, ...] = (0,)
    xs: tuple[int, ...] = ()
    n: int = 0

    @property
    def m(self) -> int:
        return len(self.xs)

    @property
    def head_s(self) -> int:
        return self.ys[0] if self.xs else 0

    @property
    def p(self) -> int:
        return self.ys[-1]

    @property
    def body(self) -> tuple[tuple[int, int], ...]:
        """Pairs ``(r_i, y_i)`` where the last y-run is ``p``."""
        return tuple(zip(self.xs, self.ys[1:]))

    @classmethod
    def from_parts(cls, head_s: int = 0, body: Iterable[tuple[int, int]] = (), n: int = 0,
                   p: int = 0) -> "NormalForm":
        """Build from the ``(head_s, body, n)`` view; ``p`` is used only when body is empty."""
        body = tuple(body)
        if not body:
            if head_s:
                raise ValueError("head_s must be 0 when there is no x-block")
            return cls((p,), (), n)
        xs = tuple(r for r, _ in body)
        ys = (head_s,) + tuple(y for _, y in body)
        return cls(ys, xs, n)

    def is_identity(self) -> bool:
        return self.n == 0 and not self.xs and self.ys[0] == 0

    def length(self) -> int:
        return sum(abs(v) for v in self.ys) + sum(abs(v) for v in self.xs) + abs(self.n)


IDENTITY = NormalForm()


def nf_identity() -> NormalForm:
    return IDENTITY


def is_valid(g: NormalForm, params: GroupParams) -> bool:
    ys, xs = g.ys, g.xs
    if len(ys) != len(xs) + 1 or any(r == 0 for r in xs):
        return False
    if not xs:
        return True
    if not params.in_window(ys[0]):
        return False
    return all(s != 0 and params.in_window(s) for s in ys[1:-1])


def nf_mul_gen(g: NormalForm, letter: Letter, params: GroupParams) -> NormalForm:
    """Right-multiply ``g`` by one generator letter (pauses are ignored)."""
    ys, xs, n = g
    gen = abs(letter)
    e = 1 if letter > 0 else -1
    if gen == Z:
        return NormalForm(ys, xs, n + e)
    if gen == Y:
        return NormalForm(ys[:-1] + (ys[-1] + e,), xs, n)
    if gen != X:
        if letter == PAUSE:
            return g
        raise ValueError(f"not a letter: {letter!r}")
    # y^p x^e = y^(p-lq) x^e y^(lq) z^(-e*l)
    p = ys[-1]
    l = params.shift(p)
    rest = p - l * params.q
    lq = l * params.q
    n -= e * l
    if rest != 0 or not xs:
        return NormalForm(ys[:-1] + (rest, lq), xs + (e,), n)
    r = xs[-1] + e
    if r != 0:
        return NormalForm(ys[:-1] + (lq,), xs[:-1] + (r,), n)
    # the last x-block cancels; its flanking y-runs fuse into a trailing run
    return NormalForm(ys[:-2] + (ys[-2] + lq,), xs[:-1], n)


def nf_mul_word(g: NormalForm, w: Iterable[Letter], params: GroupParams) -> NormalForm:
    """Right-multiply by a word; y- and z-runs are absorbed in one step."""
    for gen, e in runs(l for l in w if l != PAUSE):
        if gen == X:
            letter = X if e > 0 else -X
            for _ in range(abs(e)):
                g = nf_mul_gen(g, letter, params)
        elif gen == Y:
            ys = g.ys
            g = NormalForm(ys[:-1] + (ys[-1] + e,), g.xs, g.n)
        else:
            g = NormalForm(g.ys, g.xs, g.n + e)
    return g


def normalize(w: Iterable[Letter], params: GroupParams) -> NormalForm:
    return nf_mul_word(IDENTITY, w, params)


def nf_to_word(g: NormalForm) -> Word:
    ys, xs, n = g
    out: list[int] = list(power(Y, ys[0]))
    for r, s in zip(xs, ys[1:]):
        out.extend(power(X, r))
        out.extend(power(Y, s))
    out.extend(power(Z, n))
    return tuple(out)


def nf_mul(a: NormalForm, b: NormalForm, params: GroupParams) -> NormalForm:
    return nf_mul_word(a, nf_to_word(b), params)


def nf_inverse(g: NormalForm, params: GroupParams) -> NormalForm:
    return normalize(inverse_word(nf_to_word(g)), params)


def nf_quotient(a: NormalForm, b: NormalForm, params: GroupParams) -> NormalForm:
    """``a^-1 . b``."""
    return nf_mul_word(nf_inverse(a, params), nf_to_word(b), params)


def heisenberg_matrix(w: Iterable[Letter]) -> tuple[int, int, int]:
    """Image of ``w`` in the upper unitriangular 3x3 integer matrices.

    Returns the entries ``(a12, a23, a13)`` under ``x -> I+E12``,
    ``y -> I+E23``, ``z -> I+E13``.  Only meaningful for q = 1.
    """
    a, b, c = 0, 0, 0
    for letter in w:
        if letter == X:
            a += 1
        elif letter == -X:
            a -= 1
        elif letter == Y:
            b += 1
            c += a
        elif letter == -Y:
            b -= 1
            c -= a
        elif letter == Z:
            c += 1
        elif letter == -Z:
            c -= 1
    return a, b, c


def nf_heisenberg(g: NormalForm) -> tuple[int, int, int]:
    return heisenberg_matrix(nf_to_word(g))


# ---------------------------------------------------------------------------
# traced small-step rewriting

@dataclass(frozen=True)
class RewriteTrace:
    """Signed application counts of ``[x,y^q] z^-1``, ``[x,z]`` and ``[y,z]``.

    A step that replaces a subword ``a`` by ``b`` counts ``e`` against
    relator ``r`` when ``a b^-1`` is a cyclic permutation of ``r^e``.  With
    that convention ``w = (product of relator conjugates) . nf(w)`` in the
    free group and the tallies are the exponent sums of that product.
    """

    c1: int = 0
    c2: int = 0
    c3: int = 0

    def __add__(self, other: "RewriteTrace") -> "RewriteTrace":
        return RewriteTrace(self.c1 + other.c1, self.c2 + other.c2, self.c3 + other.c3)

    def __neg__(self) -> "RewriteTrace":
        return RewriteTrace(-self.c1, -self.c2, -self.c3)

    def __sub__(self, other: "RewriteTrace") -> "RewriteTrace":
        return self + (-other)

    def as_tuple(self) -> tuple[int, int, int]:
        return self.c1, self.c2, self.c3


def relators(q: int) -> tuple[Word, Word, Word]:
    x_yq = (X,) + power(Y, q) + (-X,) + power(Y, -q)
    return (x_yq + (-Z,), (X, Z, -X, -Z), (Y, Z, -Y, -Z))


def _cyclic_perms(w: Word) -> set[Word]:
    return {w[i:] + w[:i] for i in range(len(w))}


@lru_cache(maxsize=None)
def _relator_perms(q: int) -> dict[Word, tuple[int, int]]:
    table: dict[Word, tuple[int, int]] = {}
    for j, r in enumerate(relators(q)):
        for e, word in ((1, r), (-1, inverse_word(r))):
            for perm in _cyclic_perms(word):
                table[perm] = (j, e)
    return table


def classify_move(old: Word, new: Word, q: int) -> tuple[int, int]:
    """Return ``(relator index, exponent)`` for the move ``old -> new``.

    Raises ``ValueError`` if ``old . new^-1`` is not a single relator
    occurrence; every move of the traced engine passes through here once.
    """
    key = old + inverse_word(new)
    try:
        return _relator_perms(q)[key]
    except KeyError:
        raise ValueError(f"{old} -> {new} is not a single relator application") from None


@lru_cache(maxsize=None)
def _rule_table(q: int) -> dict[tuple[Word, Word], tuple[int, int]]:
    rules: dict[tuple[Word, Word], tuple[int, int]] = {}
    for d in (1, -1):
        for a in (X, -X, Y, -Y):
            old, new = (d * Z, a), (a, d * Z)
            rules[old, new] = classify_move(old, new, q)
    yq, ym = power(Y, q), power(Y, -q)
    for old, new in (
        (yq + (X,), (-Z, X) + yq),
        (yq + (-X,), (-X, Z) + yq),
        (ym + (-X,), (-X,) + ym + (-Z,)),
        (ym + (-Z, X), (X,) + ym),
    ):
        rules[old, new] = classify_move(old, new, q)
    return rules


class _TracedWord:
    """A letter list kept in normal-form spelling, rewritten one relator at a time."""

    def __init__(self, params: GroupParams):
        self.params = params
        self.q = params.q
        self.rules = _rule_table(params.q)
        self.letters: list[int] = []
        self.counts = [0, 0, 0]

    # -- primitive moves -------------------------------------------------
    def _apply(self, i: int, old: Word, new: Word) -> None:
        assert tuple(self.letters[i:i + len(old)]) == old
        j, e = self.rules[old, new]
        self.counts[j] += e
        self.letters[i:i + len(old)] = new

    def _cancel(self, i: int) -> None:
        """Freely reduce around the junction between ``i-1`` and ``i``."""
        L = self.letters
        while 0 < i < len(L) and L[i - 1] == -L[i]:
            del L[i - 1:i + 1]
            i -= 1

    def _tail_start(self) -> int:
        L = self.letters
        i = len(L)
        while i > 0 and abs(L[i - 1]) == Z:
            i -= 1
        return i

    def _bubble_left(self, i: int, stop: int) -> int:
        """Move the x/y letter at ``i`` left across z letters down to ``stop``."""
        L = self.letters
        while i > stop:
            zl = L[i - 1]
            self._apply(i - 1, (zl, L[i]), (L[i], zl))
            i -= 1
        return i

    def _push_z_right(self, i: int) -> None:
        """Carry the z letter at ``i`` right to the z tail, then reduce."""
        L = self.letters
        while i + 1 < len(L) and abs(L[i + 1]) != Z:
            self._apply(i, (L[i], L[i + 1]), (L[i + 1], L[i]))
            i += 1
        self._cancel(i + 1)

    # -- right multiplication -------------------------------------------
    def append(self, letter: Letter) -> None:
        L = self.letters
        if letter == PAUSE:
            return
        if abs(letter) == Z:
            L.append(letter)
            self._cancel(len(L) - 1)
            return
        tail = self._tail_start()
        L.append(letter)
        i = self._bubble_left(len(L) - 1, tail)
        if abs(letter) == Y:
            self._cancel(i)
            return
        self._x_across_y(i, letter)

    def _x_across_y(self, i: int, e_letter: int) -> None:
        L, q = self.letters, self.q
        # trailing y-run immediately left of the x letter at i
        j = i
        while j > 0 and abs(L[j - 1]) == Y:
            j -= 1
        p = sum(1 if a > 0 else -1 for a in L[j:i])
        l = self.params.shift(p)
        rest = p - l * q
        if rest * p < 0:
            # y^p = y^rest y^-rest y^p by free insertion so the blocks are spelled out
            L[j:j] = power(Y, rest) + power(Y, -rest)
            i += 2 * abs(rest)
        sigma = 1 if l > 0 else -1
        yb = power(Y, sigma * q)
        for _ in range(abs(l)):
            start = i - q
            if sigma == 1 and e_letter == X:
                self._apply(start, yb + (X,), (-Z, X) + yb)
                self._push_z_right(start)
            elif sigma == 1:
                self._apply(start, yb + (-X,), (-X, Z) + yb)
                self._push_z_right(start + 1)
            elif e_letter == -X:
                self._apply(start, yb + (-X,), (-X,) + yb + (-Z,))
                self._push_z_right(start + 1 + q)
            else:
                # y^-q x: free insertion of z^-1 z, carry z across x, then swap
                L[i:i] = [-Z, Z]
                self._apply(i + 1, (Z, X), (X, Z))
                self._apply(start, yb + (-Z, X), (X,) + yb)
                self._push_z_right(start + 1 + q)
            i = start
        self._cancel(i)


def normalize_traced(w: Iterable[Letter], params: GroupParams) -> tuple[NormalForm, RewriteTrace]:
    """Normalise by single relator applications and tally them."""
    tw = _TracedWord(params)
    for letter in w:
        tw.append(letter)
    nf = _read_normal_form(tw.letters)
    return nf, RewriteTrace(*tw.counts)


def _read_normal_form(letters: list[int]) -> NormalForm:
    ys: list[int] = [0]
    xs: list[int] = []
    n = 0
    for gen, e in runs(letters):
        if gen == X:
            xs.append(e)
            ys.append(0)
        elif gen == Y:
            ys[-1] += e
        else:
            n += e
    return NormalForm(tuple(ys), tuple(xs), n)


def trace_of(w: Iterable[Letter], params: GroupParams) -> RewriteTrace:
    return normalize_traced(w, params)[1]


def format_normal_form(g: NormalForm) -> str:
    return format_word(nf_to_word(g))
