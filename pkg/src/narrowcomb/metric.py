"""Word metric on the Cayley graph of G_q by breadth-first search."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .group import IDENTITY, GroupParams, NormalForm, nf_mul_gen, nf_mul_word, nf_to_word
from .words import GENERATORS, PAUSE, Letter, Word, inverse_word

DEFAULT_BUDGET = 10 ** 6


class BallBudgetExceeded(RuntimeError):
    pass


class OutOfBall(KeyError):
    pass


@dataclass(frozen=True)
class Violation:
    """One failed inequality; ``fields`` are rendered as a CSV row."""

    fields: tuple

    def __str__(self) -> str:
        return ",".join(str(v) for v in self.fields)


@dataclass
class ViolationReport:
    checked: int = 0
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def add(self, *fields) -> None:
        self.violations.append(Violation(tuple(fields)))


@dataclass
class Ball:
    """All elements within ``radius`` of the identity.

    ``entries`` maps an element to its distance; ``parents`` maps it to the
    element it was first reached from and the generator used.
    """

    params: GroupParams
    radius: int
    entries: dict[NormalForm, int]
    parents: dict[NormalForm, tuple[NormalForm, Letter]]

    def __contains__(self, g: NormalForm) -> bool:
        return g in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[NormalForm]:
        return iter(self.entries)

    def sphere_sizes(self) -> list[tuple[int, int]]:
        counts = Counter(self.entries.values())
        return sorted(counts.items())


def build_ball(params: GroupParams, radius: int, budget: int = DEFAULT_BUDGET) -> Ball:
    """BFS from the identity; generators are tried in the order x, X, y, Y, z, Z."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    entries = {IDENTITY: 0}
    parents: dict[NormalForm, tuple[NormalForm, Letter]] = {}
    frontier = [IDENTITY]
    for d in range(1, radius + 1):
        nxt = []
        for g in frontier:
            for a in GENERATORS:
                h = nf_mul_gen(g, a, params)
                if h not in entries:
                    entries[h] = d
                    parents[h] = (g, a)
                    nxt.append(h)
        if len(entries) > budget:
            raise BallBudgetExceeded(f"ball of radius {d} has {len(entries)} > {budget} elements")
        frontier = nxt
    return Ball(params, radius, entries, parents)


def dist(g: NormalForm, ball: Ball) -> int:
    try:
        return ball.entries[g]
    except KeyError:
        raise OutOfBall(g) from None


def geodesic_word(g: NormalForm, ball: Ball) -> Word:
    if g not in ball.entries:
        raise OutOfBall(g)
    out = []
    while g in ball.parents:
        g, a = ball.parents[g]
        out.append(a)
    return tuple(reversed(out))


def check_recursive(params: GroupParams, radius: int, ball: Ball | None = None) -> ViolationReport:
    """Compare normal-form length with the recursivity polynomial of the distance."""
    ball = ball or build_ball(params, radius)
    report = ViolationReport()
    for g, d in ball.entries.items():
        report.checked += 1
        length = g.length()
        if length > params.f(d):
            report.add(g, d, length, params.f(d))
    return report


def _prefix_points(base: NormalForm, w: Word, params: GroupParams) -> list[NormalForm]:
    pts = [base]
    for a in w:
        pts.append(nf_mul_gen(pts[-1], a, params))
    return pts


def check_geodesic_two_sided(params: GroupParams, radius: int) -> ViolationReport:
    """Two-sided bound for the equivariant BFS-geodesic bicombing.

    For every ``h`` within ``radius`` and ``a, b`` in the generators or the
    identity with ``a^-1 h b`` also within ``radius``, the distance between
    the points at time ``t`` of ``sigma(1, h)`` and ``sigma(a, h b)`` is at
    most half the summed lengths plus one.  Distances are looked up in a
    ball of radius ``radius + 1``, which covers every right-hand side.
    """
    big = build_ball(params, radius + 1)
    letters = (PAUSE,) + GENERATORS
    report = ViolationReport()
    for h, dh in big.entries.items():
        if dh > radius:
            continue
        path_a = _prefix_points(IDENTITY, geodesic_word(h, big), params)
        for a in letters:
            base = nf_mul_gen(IDENTITY, a, params)
            inv_a = (-a,) if a else ()
            for b in letters:
                end = nf_mul_word(h, (b,) if b else (), params)
                target = nf_mul_word(nf_mul_word(IDENTITY, inv_a, params), nf_to_word(end), params)
                if big.entries.get(target, radius + 1) > radius:
                    continue
                path_b = _prefix_points(base, geodesic_word(target, big), params)
                len_a, len_b = len(path_a) - 1, len(path_b) - 1
                rhs = Fraction(len_a + len_b, 2) + 1
                for t in range(max(len_a, len_b) + 1):
                    pa = path_a[min(t, len_a)]
                    pb = path_b[min(t, len_b)]
                    gap = nf_mul_word(IDENTITY, inverse_word(nf_to_word(pa)), params)
                    gap = nf_mul_word(gap, nf_to_word(pb), params)
                    lhs = big.entries.get(gap)
                    report.checked += 1
                    if lhs is None or lhs > rhs:
                        report.add(h, a, b, t, lhs if lhs is not None else f">{big.radius}", rhs)
    return report
