"""The normal-form bicombing and its narrow-shape verification."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .group import (IDENTITY, GroupParams, NormalForm, nf_inverse, nf_mul_gen, nf_mul_word,
                    nf_to_word)
from .metric import Ball, ViolationReport, build_ball
from .words import GENERATORS, PAUSE, Letter, inverse_word

STEP_LETTERS: tuple[Letter, ...] = (PAUSE,) + GENERATORS


@dataclass(frozen=True)
class CombingPath:
    """An edge path from ``base`` given by its steps; ``0`` steps are pauses."""

    base: NormalForm
    steps: tuple[Letter, ...] = ()

    @property
    def length(self) -> int:
        """Time after which the path is constant, counting interior pauses."""
        for i in range(len(self.steps), 0, -1):
            if self.steps[i - 1] != PAUSE:
                return i
        return 0

    def __len__(self) -> int:
        return self.length

    def points(self, params: GroupParams) -> list[NormalForm]:
        """Vertices at times ``0 .. length``."""
        pts = [self.base]
        for a in self.steps[:self.length]:
            pts.append(nf_mul_gen(pts[-1], a, params))
        return pts


def combing_line(g: NormalForm, h: NormalForm, params: GroupParams) -> CombingPath:
    """``sigma(g, h)``: translate the normal-form spelling of ``g^-1 h`` to start at ``g``."""
    if g == h:
        return CombingPath(g)
    gap = nf_mul_word(nf_inverse(g, params), nf_to_word(h), params)
    return CombingPath(g, nf_to_word(gap))


def path_point(path: CombingPath, t: int, params: GroupParams) -> NormalForm:
    if t < 0:
        raise ValueError("time must be nonnegative")
    steps = [a for a in path.steps[:min(t, path.length)] if a != PAUSE]
    return nf_mul_word(path.base, steps, params)


def _gap_length(u: NormalForm, v: NormalForm, params: GroupParams) -> int:
    """Length of the combing line from ``u`` to ``v``."""
    gap = nf_mul_word(IDENTITY, inverse_word(nf_to_word(u)), params)
    return nf_mul_word(gap, nf_to_word(v), params).length()


def combing_distance(pa: CombingPath, pb: CombingPath, t: int, params: GroupParams) -> int:
    return _gap_length(path_point(pa, t, params), path_point(pb, t, params), params)


def _delta_points(pts_a: list[NormalForm], pts_b: list[NormalForm], params: GroupParams,
                  inv_a: list[NormalForm] | None = None) -> list[int]:
    la, lb = len(pts_a) - 1, len(pts_b) - 1
    out = []
    for t in range(max(la, lb) + 1):
        b = pts_b[min(t, lb)]
        if inv_a is None:
            out.append(_gap_length(pts_a[min(t, la)], b, params))
        else:
            out.append(nf_mul_word(inv_a[min(t, la)], nf_to_word(b), params).length())
    return out


def delta(pa: CombingPath, pb: CombingPath, params: GroupParams) -> int:
    """Maximal combing distance over integer times up to the longer length."""
    return max(_delta_points(pa.points(params), pb.points(params), params))


@dataclass
class NarrowShapeReport(ViolationReport):
    """Violations plus the worst combing distance for every ``(a, b)``.

    ``witnesses[(a, b)]`` is ``(h, t, distance, allowance)`` for a time at
    which the maximal distance was attained.
    """

    max_delta: dict[tuple[Letter, Letter], int] = field(default_factory=dict)
    witnesses: dict[tuple[Letter, Letter], tuple] = field(default_factory=dict)


def allowance(len_a: int, len_b: int, params: GroupParams) -> Fraction:
    return max(Fraction(len_a + len_b) / params.k, Fraction(params.M, 2))


def check_narrow_shape(params: GroupParams, radius: int, ball: Ball | None = None) -> NarrowShapeReport:
    """Check the narrow-shape inequality for ``g = 1`` and every ``h`` in the ball.

    Equivariance of the combing reduces the general case to ``g = 1``.
    """
    ball = ball or build_ball(params, radius)
    report = NarrowShapeReport()
    for h in ball:
        word_h = nf_to_word(h)
        pts_a = CombingPath(IDENTITY, word_h).points(params)
        inv_a = [IDENTITY]
        for i in range(1, len(pts_a)):
            inv_a.append(nf_mul_word(IDENTITY, inverse_word(word_h[:i]), params))
        for a in STEP_LETTERS:
            base = nf_mul_gen(IDENTITY, a, params)
            inv_base = nf_mul_gen(IDENTITY, -a, params)
            for b in STEP_LETTERS:
                end = nf_mul_gen(h, b, params)
                target = nf_mul_word(inv_base, nf_to_word(end), params)
                pts_b = CombingPath(base, nf_to_word(target)).points(params)
                bound = allowance(len(pts_a) - 1, len(pts_b) - 1, params)
                dists = _delta_points(pts_a, pts_b, params, inv_a)
                report.checked += len(dists)
                worst = max(dists)
                if worst > report.max_delta.get((a, b), -1):
                    t = dists.index(worst)
                    report.max_delta[a, b] = worst
                    report.witnesses[a, b] = (h, t, worst, bound)
                if worst > bound:
                    for t, d in enumerate(dists):
                        if d > bound:
                            report.add(h, a, b, t, d, bound)
    return report
