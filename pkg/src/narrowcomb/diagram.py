"""Van Kampen diagrams from a fan of combing lines and recursive ladders.

For a trivial word ``w = x1 ... xn`` the fan consists of the combing lines
from the basepoint to every prefix ``w_i``.  The sector between consecutive
fan lines is closed off by the boundary edge ``x_(i+1)``.  A region bounded
by two rails ``P``, ``Q`` and short joining paths ``near``, ``far`` becomes a
single cell once ``|P| + |Q| <= M``; otherwise it is cut into a ladder by the
combing lines between ``P(t)`` and ``Q(t)`` and each rung-to-rung strip is
treated the same way one level deeper.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .combing import combing_line
from .group import (IDENTITY, GroupParams, NormalForm, RewriteTrace, nf_mul_gen, nf_to_word,
                    normalize, normalize_traced)
from .words import PAUSE, Letter, Word, cyclic_reduce, format_word, is_freely_reduced


class NotTrivial(ValueError):
    pass


class DepthExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class DiagramVertex:
    id: int
    element: NormalForm
    generation: int


@dataclass(frozen=True)
class DiagramEdge:
    id: int
    source: int
    target: int
    letter: Letter


@dataclass(frozen=True)
class DiagramCell:
    """A 2-cell; ``boundary`` lists ``(edge id, +1 | -1)`` read cyclically."""

    boundary: tuple[tuple[int, int], ...]
    depth: int
    degenerate: bool


@dataclass
class VanKampenDiagram:
    params: GroupParams
    word: Word
    vertices: dict[int, DiagramVertex]
    edges: dict[int, DiagramEdge]
    cells: list[DiagramCell]
    basepoint: int
    outer: list[int]
    max_depth_used: int = 0
    rung_max: dict[int, int] = field(default_factory=dict)

    def boundary_word(self, cell: DiagramCell) -> Word:
        out = []
        for eid, direction in cell.boundary:
            letter = self.edges[eid].letter
            if letter != PAUSE:
                out.append(letter if direction > 0 else -letter)
        return tuple(out)

    def outer_word(self) -> Word:
        return tuple(self.edges[e].letter for e in self.outer)

    def to_dict(self) -> dict[str, Any]:
        return {
            "q": self.params.q,
            "word": format_word(self.word),
            "basepoint": self.basepoint,
            "vertices": [
                {"id": v.id, "element": format_word(nf_to_word(v.element)), "generation": v.generation}
                for v in self.vertices.values()
            ],
            "edges": [
                {"id": e.id, "from": e.source, "to": e.target, "letter": _letter_name(e.letter)}
                for e in self.edges.values()
            ],
            "outer": self.outer,
            "cells": [
                {"boundary": [list(b) for b in c.boundary], "depth": c.depth, "degenerate": c.degenerate}
                for c in self.cells
            ],
            "area": area(self),
            "diameter": diameter(self),
            "depth_used": self.max_depth_used,
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def _letter_name(letter: Letter) -> str:
    return format_word((letter,)) if letter != PAUSE else "1"


def _ceil_half(n: int) -> int:
    return (n + 1) // 2


def recursion_depth(n: int, params: GroupParams) -> int:
    """Smallest ``d >= 1`` with ``(k/2)^d >= 2 f(ceil(n/2)) / M``, in exact arithmetic."""
    target = Fraction(2 * params.f(_ceil_half(n)), params.M)
    ratio = params.k / 2
    d, acc = 1, ratio
    while acc < target:
        d += 1
        acc *= ratio
    return d


def max_depth(n: int, params: GroupParams) -> int:
    return recursion_depth(n, params) + 2


def isoperimetric_bound(n: int, params: GroupParams) -> Fraction:
    """Cell-count bound ``n (f+2)^d 2^(d(d-1)/2) / k^(d(d-1)/2)`` with ``f = f(ceil(n/2))``."""
    if n < 1:
        raise ValueError("n must be positive")
    d = recursion_depth(n, params)
    tri = d * (d - 1) // 2
    return n * Fraction(params.f(_ceil_half(n)) + 2) ** d * (2 / params.k) ** tri


def isodiametric_bound(n: int, params: GroupParams) -> Fraction:
    """``k/(k-2) f(ceil(n/2))``; equals ``11 f`` for ``k = 11/5``."""
    k = params.k
    return k / (k - 2) * params.f(_ceil_half(n))


@dataclass
class _Path:
    """Vertex ids at times ``0..len`` and the edge ids between them."""

    vertices: list[int]
    edges: list[int]

    def __len__(self) -> int:
        return len(self.edges)


class _Builder:
    def __init__(self, word: Word, params: GroupParams, d_max: int):
        self.params = params
        self.word = word
        self.d_max = d_max
        self.vertices: dict[int, DiagramVertex] = {}
        self.edges: dict[int, DiagramEdge] = {}
        self.cells: list[DiagramCell] = []
        self.parent: dict[int, int] = {}
        self.pause_edge: dict[int, int] = {}
        self.max_depth = 0
        self.rung_max: dict[int, int] = {}

    # -- storage -----------------------------------------------------------
    def vertex(self, element: NormalForm, generation: int) -> int:
        vid = len(self.vertices)
        self.vertices[vid] = DiagramVertex(vid, element, generation)
        self.parent[vid] = vid
        return vid

    def edge(self, source: int, target: int, letter: Letter) -> int:
        eid = len(self.edges)
        self.edges[eid] = DiagramEdge(eid, source, target, letter)
        return eid

    def find(self, v: int) -> int:
        while self.parent[v] != v:
            self.parent[v] = self.parent[self.parent[v]]
            v = self.parent[v]
        return v

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)

    def pause_at(self, v: int) -> int:
        if v not in self.pause_edge:
            self.pause_edge[v] = self.edge(v, v, PAUSE)
        return self.pause_edge[v]

    def element(self, v: int) -> NormalForm:
        return self.vertices[v].element

    # -- paths -------------------------------------------------------------
    def line(self, start: int, end: int, generation: int) -> _Path:
        """Materialise the combing line between two existing vertices."""
        g, h = self.element(start), self.element(end)
        steps = combing_line(g, h, self.params).steps
        if not steps:
            self.union(start, end)
            return _Path([start], [])
        verts, edges = [start], []
        cur = g
        for i, a in enumerate(steps):
            cur = nf_mul_gen(cur, a, self.params)
            v = end if i == len(steps) - 1 else self.vertex(cur, generation)
            edges.append(self.edge(verts[-1], v, a))
            verts.append(v)
        return _Path(verts, edges)

    def fan_line(self, base: int, h: NormalForm) -> _Path:
        verts, edges = [base], []
        cur = IDENTITY
        for a in nf_to_word(h):
            cur = nf_mul_gen(cur, a, self.params)
            v = self.vertex(cur, 0)
            edges.append(self.edge(verts[-1], v, a))
            verts.append(v)
        return _Path(verts, edges)

    @staticmethod
    def at(path: _Path, t: int) -> int:
        return path.vertices[min(t, len(path))]

    def step(self, path: _Path, t: int) -> _Path:
        """The piece of ``path`` from time ``t`` to ``t+1`` (a pause once it has ended)."""
        if t < len(path):
            return _Path(path.vertices[t:t + 2], [path.edges[t]])
        v = path.vertices[-1]
        return _Path([v, v], [self.pause_at(v)])

    # -- construction ------------------------------------------------------
    def region(self, p: _Path, q: _Path, near: _Path, far: _Path, depth: int) -> None:
        if depth > 0 and len(p) + len(q) <= self.params.M:
            bnd = ([(e, 1) for e in p.edges] + [(e, 1) for e in far.edges]
                   + [(e, -1) for e in reversed(q.edges)] + [(e, -1) for e in reversed(near.edges)])
            if depth % 2:
                # strips alternate orientation from one level to the next
                bnd = [(e, -d) for e, d in reversed(bnd)]
            cell = DiagramCell(tuple(bnd), depth, False)
            word = _boundary_letters(self.edges, cell)
            self.cells.append(DiagramCell(cell.boundary, depth, not cyclic_reduce(word)))
            self.max_depth = max(self.max_depth, depth)
            return
        if depth + 1 > self.d_max:
            raise DepthExceeded(f"recursion depth {depth + 1} exceeds {self.d_max}")
        span = max(len(p), len(q))
        rungs = [near]
        for t in range(1, span):
            rungs.append(self.line(self.at(p, t), self.at(q, t), depth + 1))
        rungs.append(far)
        longest = max(len(r) for r in rungs)
        self.rung_max[depth + 1] = max(self.rung_max.get(depth + 1, 0), longest)
        for t in range(span):
            self.region(rungs[t], rungs[t + 1], self.step(p, t), self.step(q, t), depth + 1)

    def build(self) -> VanKampenDiagram:
        params = self.params
        base = self.vertex(IDENTITY, 0)
        prefixes = [IDENTITY]
        for a in self.word:
            prefixes.append(nf_mul_gen(prefixes[-1], a, params))
        fan = [_Path([base], [])]
        for h in prefixes[1:-1]:
            fan.append(self.fan_line(base, h))
        fan.append(_Path([base], []))
        outer = []
        for i, a in enumerate(self.word):
            p, q = fan[i], fan[i + 1]
            e = self.edge(p.vertices[-1], q.vertices[-1], a)
            outer.append(e)
            self.region(p, q, _Path([base], []), _Path([p.vertices[-1], q.vertices[-1]], [e]), 0)
        return self.finish(base, outer)

    def finish(self, base: int, outer: list[int]) -> VanKampenDiagram:
        root = {v: self.find(v) for v in self.vertices}
        vertices: dict[int, DiagramVertex] = {}
        for v in sorted(self.vertices):
            r = root[v]
            old = self.vertices[v]
            if r not in vertices or old.generation < vertices[r].generation:
                vertices[r] = DiagramVertex(r, old.element, min(old.generation, vertices.get(r, old).generation))
        edges = {eid: DiagramEdge(eid, root[e.source], root[e.target], e.letter) for eid, e in self.edges.items()}
        return VanKampenDiagram(params=self.params, word=self.word, vertices=vertices, edges=edges,
                                cells=self.cells, basepoint=root[base], outer=outer,
                                max_depth_used=self.max_depth, rung_max=dict(self.rung_max))


def _boundary_letters(edges: dict[int, DiagramEdge], cell: DiagramCell) -> Word:
    out = []
    for eid, direction in cell.boundary:
        letter = edges[eid].letter
        if letter != PAUSE:
            out.append(letter if direction > 0 else -letter)
    return tuple(out)


def build_diagram(word: Word, params: GroupParams) -> VanKampenDiagram:
    """Build a van Kampen diagram for a freely reduced, nonempty trivial word."""
    word = tuple(word)
    if not word or not is_freely_reduced(word):
        raise ValueError("word must be nonempty and freely reduced")
    if not normalize(word, params).is_identity():
        raise NotTrivial(format_word(word))
    return _Builder(word, params, max_depth(len(word), params)).build()


def area(diagram: VanKampenDiagram) -> int:
    return sum(1 for c in diagram.cells if not c.degenerate)


def diameter(diagram: VanKampenDiagram) -> int:
    """Largest edge distance from the basepoint in the 1-skeleton; pauses are free."""
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in diagram.vertices}
    for e in diagram.edges.values():
        if e.source == e.target:
            continue
        w = 0 if e.letter == PAUSE else 1
        adj[e.source].append((e.target, w))
        adj[e.target].append((e.source, w))
    best = {diagram.basepoint: 0}
    queue = deque([diagram.basepoint])
    while queue:
        v = queue.popleft()
        for u, w in adj[v]:
            d = best[v] + w
            if d < best.get(u, d + 1):
                best[u] = d
                if w:
                    queue.append(u)
                else:
                    queue.appendleft(u)
    return max(best.values())


@dataclass
class ValidationReport:
    cells_ok: bool = True
    edges_ok: bool = True
    boundary_ok: bool = True
    depth_ok: bool = True
    trace_ok: bool = True
    word_trace: RewriteTrace = field(default_factory=RewriteTrace)
    cell_trace: RewriteTrace = field(default_factory=RewriteTrace)
    problems: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.cells_ok and self.edges_ok and self.boundary_ok and self.depth_ok and self.trace_ok


def validate_diagram(diagram: VanKampenDiagram, params: GroupParams) -> ValidationReport:
    report = ValidationReport()
    limit = params.M + 2
    total = RewriteTrace()
    for i, cell in enumerate(diagram.cells):
        word = diagram.boundary_word(cell)
        reduced = cyclic_reduce(word)
        if cell.degenerate:
            if reduced:
                report.cells_ok = False
                report.problems.append(f"cell {i} marked degenerate but reduces to {format_word(reduced)}")
            continue
        nf, trace = normalize_traced(word, params)
        total = total + trace
        if not reduced or len(reduced) > limit or not nf.is_identity():
            report.cells_ok = False
            report.problems.append(f"cell {i}: boundary {format_word(reduced)} is not a relator of length <= {limit}")

    for e in diagram.edges.values():
        src, dst = diagram.vertices[e.source].element, diagram.vertices[e.target].element
        if nf_mul_gen(src, e.letter, params) != dst:
            report.edges_ok = False
            report.problems.append(f"edge {e.id} is inconsistent")

    cur = diagram.basepoint
    for eid in diagram.outer:
        e = diagram.edges[eid]
        if e.source != cur:
            report.boundary_ok = False
        cur = e.target
    if cur != diagram.basepoint or diagram.outer_word() != diagram.word:
        report.boundary_ok = False
    if not report.boundary_ok:
        report.problems.append("outer boundary does not read the input word")

    if diagram.max_depth_used > max_depth(len(diagram.word), params):
        report.depth_ok = False
        report.problems.append("recursion depth exceeds the bound")

    report.word_trace = normalize_traced(diagram.word, params)[1]
    report.cell_trace = total
    if total != report.word_trace:
        report.trace_ok = False
        report.problems.append(f"cell traces {total.as_tuple()} != word trace {report.word_trace.as_tuple()}")
    return report
