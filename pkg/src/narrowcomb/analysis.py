"""Cubic lower-bound experiments, growth surveys and trace-invariance fuzzing."""

from __future__ import annotations

import csv
import io
import math
import random
import time
from dataclasses import astuple, dataclass, field, fields
from typing import Iterable, NamedTuple

from .diagram import (DepthExceeded, area, build_diagram, diameter, isodiametric_bound,
                      isoperimetric_bound)
from .group import GroupParams, RewriteTrace, normalize, normalize_traced, nf_to_word, relators
from .words import GENERATORS, Word, free_reduce, inverse_word, word_w_n

MAX_FUZZ_ITERATIONS = 10 ** 5


class LowerBound(NamedTuple):
    n: int
    trace: RewriteTrace
    area_built: int

    @property
    def holds(self) -> bool:
        cube = self.n ** 3
        return abs(self.trace.c2) == cube and self.area_built >= cube


def lower_bound_check(n: int, params: GroupParams) -> LowerBound:
    """Signed ``[x,z]`` count of ``w_n`` next to the area of the built diagram."""
    w = word_w_n(n, params.q)
    nf, trace = normalize_traced(w, params)
    if not nf.is_identity():
        raise AssertionError("w_n must be trivial")
    return LowerBound(n, trace, area(build_diagram(w, params)))


@dataclass
class SurveyRow:
    n: int
    word_length: int
    area: int | str
    area_bound: int | str
    diameter: int | str
    diameter_bound: int | str
    depth_used: int | str
    trace_c1: int
    trace_c2: int
    trace_c3: int
    wall_time_ms: str = ""

    @property
    def within_bounds(self) -> bool:
        if isinstance(self.area, str):
            return False
        return self.area <= self.area_bound and self.diameter <= self.diameter_bound


SURVEY_HEADER = [f.name for f in fields(SurveyRow)]


def random_trivial_word(length: int, rng: random.Random, params: GroupParams) -> Word:
    """``u . perturb(u^-1)`` where the perturbation inserts one relator conjugate pair."""
    while True:
        u = tuple(rng.choice(GENERATORS) for _ in range(length))
        tail = list(inverse_word(u))
        r = rng.choice(relators(params.q))
        cut = rng.randrange(len(r))
        rho = r[cut:] + r[:cut]
        if rng.random() < 0.5:
            rho = inverse_word(rho)
        pos = rng.randint(0, len(tail))
        tail[pos:pos] = rho
        pos = rng.randint(0, len(tail))
        tail[pos:pos] = inverse_word(rho)
        w = free_reduce(u + tuple(tail))
        if w:
            return w


def survey_word(n: int, w: Word, params: GroupParams, timing: bool = False) -> SurveyRow:
    start = time.perf_counter()
    trace = normalize_traced(w, params)[1]
    row = SurveyRow(n, len(w), "", math.floor(isoperimetric_bound(len(w), params)), "",
                    math.floor(isodiametric_bound(len(w), params)), "", *trace.as_tuple())
    try:
        d = build_diagram(w, params)
        row.area, row.diameter, row.depth_used = area(d), diameter(d), d.max_depth_used
    except DepthExceeded:
        row.area = row.diameter = row.depth_used = "error:depth"
    if timing:
        row.wall_time_ms = f"{1000 * (time.perf_counter() - start):.1f}"
    return row


def survey(params: GroupParams, n_list: Iterable[int], random_words: int = 0, seed: int = 0,
           timing: bool = False) -> list[SurveyRow]:
    """One row per ``n`` for ``w_n``, then ``random_words`` random trivial words per ``n``.

    Random words are built from a seeded generator, so rows depend only on
    the arguments unless ``timing`` is set.
    """
    rng = random.Random(seed)
    rows = []
    n_list = list(n_list)
    for n in n_list:
        rows.append(survey_word(n, word_w_n(n, params.q), params, timing))
    for n in n_list:
        for _ in range(random_words):
            rows.append(survey_word(n, random_trivial_word(n, rng, params), params, timing))
    return rows


def rows_to_csv(rows: Iterable[SurveyRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SURVEY_HEADER)
    for row in rows:
        writer.writerow(astuple(row))
    return buf.getvalue()


# ---------------------------------------------------------------------------
# trace invariance

@dataclass
class FuzzReport:
    reference: RewriteTrace
    iterations: int = 0
    mismatches: list[tuple[Word, str, RewriteTrace]] = field(default_factory=list)
    traces: set[RewriteTrace] = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def _perturb(w: list[int], rng: random.Random, params: GroupParams) -> None:
    kind = rng.randrange(2)
    if kind == 0:
        a = rng.choice(GENERATORS)
        pos = rng.randint(0, len(w))
        w[pos:pos] = [a, -a]
        return
    r = rng.choice(relators(params.q))
    cut = rng.randrange(len(r))
    rho = r[cut:] + r[:cut]
    if rng.random() < 0.5:
        rho = inverse_word(rho)
    for piece in (rho, inverse_word(rho)):
        u = tuple(rng.choice(GENERATORS) for _ in range(rng.randint(0, 3)))
        pos = rng.randint(0, len(w))
        w[pos:pos] = u + piece + inverse_word(u)


def routed_trace(w: Word, route: str, cut: int, params: GroupParams) -> RewriteTrace:
    """Trace of a trivial word along one of several normalisation orders.

    ``plain`` rewrites left to right; ``rotate`` rewrites the cyclic
    conjugate starting at ``cut``; ``split`` normalises both halves
    separately and then their normal forms jointly.
    """
    if route == "plain":
        return normalize_traced(w, params)[1]
    if route == "rotate":
        return normalize_traced(w[cut:] + w[:cut], params)[1]
    if route == "split":
        left, t1 = normalize_traced(w[:cut], params)
        right, t2 = normalize_traced(w[cut:], params)
        return t1 + t2 + normalize_traced(nf_to_word(left) + nf_to_word(right), params)[1]
    raise ValueError(f"unknown route {route!r}")


def invariance_fuzz(w: Word, iterations: int, seed: int, params: GroupParams,
                    max_perturbations: int = 3) -> FuzzReport:
    """Perturb a trivial word by trivial insertions and compare traces along random routes."""
    from .diagram import NotTrivial

    w = tuple(w)
    if not normalize(w, params).is_identity():
        raise NotTrivial("fuzzing needs a trivial word")
    if not 0 < iterations <= MAX_FUZZ_ITERATIONS:
        raise ValueError(f"iterations must be in 1..{MAX_FUZZ_ITERATIONS}")
    rng = random.Random(seed)
    report = FuzzReport(normalize_traced(w, params)[1])
    report.traces.add(report.reference)
    for _ in range(iterations):
        v = list(w)
        for _ in range(rng.randint(1, max_perturbations)):
            _perturb(v, rng, params)
        v = tuple(v)
        route = rng.choice(("plain", "rotate", "split"))
        cut = rng.randint(0, len(v))
        trace = routed_trace(v, route, cut, params)
        report.iterations += 1
        report.traces.add(trace)
        if trace != report.reference:
            report.mismatches.append((v, route, trace))
    return report
