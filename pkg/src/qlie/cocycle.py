"""Orientations and the +-1 valued bimultiplicative cocycle attached to each of them."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .cartan import DynkinGraph, build_graph
from .errors import InputError


@dataclass(frozen=True)
class Orientation:
    """A choice of one arrow per edge: ``arrows[e] = (tail_index, head_index)``."""

    graph: DynkinGraph
    arrows: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.arrows) != len(self.graph.edges):
            raise InputError("an orientation picks exactly one arrow per edge")
        for (t, h), (a, b) in zip(self.arrows, self.graph.edges):
            if {t, h} != {a, b}:
                raise InputError("arrow does not lie on its edge")

    @classmethod
    def parse(cls, graph: DynkinGraph | str, text: str) -> "Orientation":
        """Parse ``"0>1,0>2,0>3"`` (vertex labels, one arrow per edge in any order)."""
        if isinstance(graph, str):
            graph = build_graph(graph)
        remaining = list(range(len(graph.edges)))
        arrows: dict[int, tuple[int, int]] = {}
        for tok in filter(None, (t.strip() for t in text.split(","))):
            try:
                a, b = (graph.index(int(x)) for x in tok.split(">"))
            except ValueError:
                raise InputError(f"bad arrow {tok!r}; expected 'i>j'") from None
            for e in remaining:
                if set(graph.edges[e]) == {a, b}:
                    arrows[e] = (a, b)
                    remaining.remove(e)
                    break
            else:
                raise InputError(f"arrow {tok!r} matches no free edge of {graph.label}")
        if remaining:
            raise InputError(f"orientation {text!r} leaves edges unoriented")
        return cls(graph, tuple(arrows[e] for e in range(len(graph.edges))))

    def __str__(self) -> str:
        v = self.graph.vertices
        return ",".join(f"{v[t]}>{v[h]}" for t, h in self.arrows)

    @property
    def bar_arrows(self) -> tuple[tuple[int, int], ...]:
        return tuple((h, t) for t, h in self.arrows)

    @property
    def double_arrows(self) -> tuple[tuple[int, int], ...]:
        """All of H: the Omega arrows followed by their reverses."""
        return self.arrows + self.bar_arrows

    def flipped(self, edges) -> "Orientation":
        edges = set(edges)
        return Orientation(self.graph, tuple((h, t) if e in edges else (t, h)
                                             for e, (t, h) in enumerate(self.arrows)))

    def agreeing_edges(self, other: "Orientation") -> tuple[int, ...]:
        return tuple(e for e in range(len(self.arrows)) if self.arrows[e] == other.arrows[e])

    @cached_property
    def euler_matrix(self) -> np.ndarray:
        n = self.graph.rank
        b = np.eye(n, dtype=np.int64)
        for t, h in self.arrows:
            b[h, t] -= 1
        return b

    def euler_form(self, a: Sequence[int], b: Sequence[int]) -> int:
        """<a,b> = sum_i a_i b_i - sum over arrows t->h of a_h b_t."""
        return int(np.asarray(a, dtype=np.int64) @ self.euler_matrix @ np.asarray(b, dtype=np.int64))

    def epsilon(self, a: Sequence[int], b: Sequence[int]) -> int:
        return -1 if self.euler_form(a, b) % 2 else 1


def reference_orientation(graph: DynkinGraph | str) -> Orientation:
    """Every edge points from the smaller vertex label to the larger one."""
    if isinstance(graph, str):
        graph = build_graph(graph)
    v = graph.vertices
    return Orientation(graph, tuple((a, b) if v[a] < v[b] else (b, a) for a, b in graph.edges))


def all_orientations(graph: DynkinGraph | str) -> list[Orientation]:
    """All 2**#edges orientations; bit e of the enumeration index flips edge e of the reference."""
    ref = reference_orientation(graph)
    n = len(ref.arrows)
    out = []
    for bits in itertools.product((0, 1), repeat=n):
        out.append(ref.flipped(e for e in range(n) if bits[n - 1 - e]))
    return out


def euler_form(orientation: Orientation, a: Sequence[int], b: Sequence[int]) -> int:
    return orientation.euler_form(a, b)


def epsilon(orientation: Orientation, a: Sequence[int], b: Sequence[int]) -> int:
    return orientation.epsilon(a, b)


def bipartite_orientation(graph: DynkinGraph | str, source: int | None = None) -> Orientation:
    """Every vertex is a source or a sink; ``source`` (default: first vertex) is a source.

    Only defined for bipartite graphs (all finite ADE diagrams and even affine cycles).
    """
    if isinstance(graph, str):
        graph = build_graph(graph)
    start = 0 if source is None else graph.index(source)
    colour = {start: 0}
    todo = [start]
    while todo:
        i = todo.pop()
        for j in graph.neighbours(i):
            if j not in colour:
                colour[j] = 1 - colour[i]
                todo.append(j)
            elif colour[j] == colour[i]:
                raise InputError(f"{graph.label} is not bipartite")
    return Orientation(graph, tuple((a, b) if colour[a] == 0 else (b, a) for a, b in graph.edges))
