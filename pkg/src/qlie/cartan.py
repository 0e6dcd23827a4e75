"""Dynkin graphs, root systems and root partitions for finite and affine ADE types.

Roots are integer tuples in the simple-root basis, ordered like ``graph.vertices``.
Vertex labels follow these conventions:

* ``A_n``: chain ``1 - 2 - ... - n``.
* ``D_n``: centre ``0`` with legs ``1`` and ``2`` and the chain ``0 - 3 - 4 - ... - (n-1)``.
* ``E_n``: Bourbaki labels ``1..n`` (``2`` hangs off ``4``).
* affine ``X~n``: the finite diagram plus an extending vertex ``p`` listed first,
  labelled ``0`` for types A and E and ``n`` for type D.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InputError

Root = tuple[int, ...]

_FINITE_LIMITS = {"A": (1, 8), "D": (4, 8), "E": (6, 8)}
_AFFINE_LIMITS = {"A": (1, 8), "D": (4, 8), "E": (6, 8)}


@dataclass(frozen=True)
class DynkinGraph:
    label: str
    kind: str  # "finite" | "affine"
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]  # pairs of vertex *indices*; parallel edges repeat
    extending_vertex: int | None = None

    def __post_init__(self):
        for a, b in self.edges:
            if a == b:
                raise InputError("a Dynkin graph has no edge loops")

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def index(self, vertex: int) -> int:
        try:
            return self.vertices.index(vertex)
        except ValueError:
            raise InputError(f"{self.label} has no vertex {vertex}") from None

    @cached_property
    def oriented_edges(self) -> tuple[tuple[int, int, int], ...]:
        """The set H as ``(edge_id, tail, head)``; entries 2e and 2e+1 are swapped by the bar involution."""
        out = []
        for e, (a, b) in enumerate(self.edges):
            out.append((e, a, b))
            out.append((e, b, a))
        return tuple(out)

    @staticmethod
    def bar(h: int) -> int:
        return h ^ 1

    @cached_property
    def cartan(self) -> np.ndarray:
        n = self.rank
        c = 2 * np.eye(n, dtype=np.int64)
        for a, b in self.edges:
            c[a, b] -= 1
            c[b, a] -= 1
        return c

    def neighbours(self, i: int) -> list[int]:
        return [b if a == i else a for a, b in self.edges if i in (a, b)]

    @cached_property
    def p_index(self) -> int | None:
        return None if self.extending_vertex is None else self.index(self.extending_vertex)

    def subgraph_without_extending(self) -> "DynkinGraph":
        if self.kind != "affine":
            raise InputError("only affine graphs have an extending vertex")
        return build_graph(self.label.replace("~", ""))


def _finite(letter: str, n: int) -> tuple[tuple[int, ...], list[tuple[int, int]]]:
    if letter == "A":
        verts = tuple(range(1, n + 1))
        pairs = [(i, i + 1) for i in range(1, n)]
    elif letter == "D":
        verts = tuple(range(n))
        pairs = [(0, 1), (0, 2), (0, 3)] + [(i, i + 1) for i in range(3, n - 1)]
    else:
        verts = tuple(range(1, n + 1))
        pairs = [(1, 3), (3, 4), (4, 5), (2, 4)] + [(i, i + 1) for i in range(5, n)]
    return verts, pairs


@lru_cache(maxsize=None)
def build_graph(label: str) -> DynkinGraph:
    """Build the Dynkin (``"D4"``) or extended Dynkin (``"D~4"``) diagram for a type label."""
    m = re.fullmatch(r"\s*([ADE])(~?)(\d+)\s*", label)
    if not m:
        raise InputError(f"unknown type label {label!r}")
    letter, tilde, n = m.group(1), m.group(2), int(m.group(3))
    lo, hi = (_AFFINE_LIMITS if tilde else _FINITE_LIMITS)[letter]
    if not lo <= n <= hi:
        raise InputError(f"type {label!r} outside supported range {letter}{tilde}{lo}..{hi}")
    verts, pairs = _finite(letter, n)
    name = f"{letter}{n}"
    if not tilde:
        idx = {v: i for i, v in enumerate(verts)}
        return DynkinGraph(name, "finite", verts, tuple((idx[a], idx[b]) for a, b in pairs))
    # extending vertex joined to i by (theta, alpha_i) edges
    fin = root_system(name)
    theta = fin.highest_root
    p = n if letter == "D" else 0
    allv = (p,) + verts
    idx = {v: i for i, v in enumerate(allv)}
    edges = [(idx[a], idx[b]) for a, b in pairs]
    for i, v in enumerate(verts):
        mult = int(np.dot(fin.graph.cartan[i], theta))
        edges.extend([(0, idx[v])] * mult)
    return DynkinGraph(f"{letter}~{n}", "affine", allv, tuple(edges), extending_vertex=p)


def root_height(r: Sequence[int]) -> int:
    return sum(r)


def root_key(r: Sequence[int]):
    """Canonical sort key: height, then coordinates lexicographically (larger leading coordinates first)."""
    return (sum(r), tuple(-c for c in r))


def encode_root(r: Sequence[int]) -> str:
    return ",".join(str(int(c)) for c in r)


def decode_root(s: str, rank: int | None = None) -> Root:
    try:
        r = tuple(int(c) for c in s.split(","))
    except ValueError:
        raise InputError(f"bad root encoding {s!r}") from None
    if rank is not None and len(r) != rank:
        raise InputError(f"root {s!r} has {len(r)} coordinates, expected {rank}")
    return r


def _add(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x + y for x, y in zip(a, b))


def _sub(a: Sequence[int], b: Sequence[int]) -> Root:
    return tuple(x - y for x, y in zip(a, b))


def leq(a: Sequence[int], b: Sequence[int]) -> bool:
    return all(x <= y for x, y in zip(a, b))


@dataclass(frozen=True)
class RootSystem:
    graph: DynkinGraph

    @property
    def kind(self) -> str:
        return self.graph.kind

    @property
    def rank(self) -> int:
        return self.graph.rank

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        c = self.graph.cartan
        return int(np.asarray(a, dtype=np.int64) @ c @ np.asarray(b, dtype=np.int64))

    def simple_root(self, vertex: int) -> Root:
        i = self.graph.index(vertex)
        return tuple(int(j == i) for j in range(self.rank))

    @cached_property
    def simple_roots(self) -> tuple[Root, ...]:
        return tuple(tuple(int(j == i) for j in range(self.rank)) for i in range(self.rank))

    def reflect(self, r: Sequence[int], i: int) -> Root:
        c = int(np.dot(self.graph.cartan[i], r))
        return tuple(x - c * (j == i) for j, x in enumerate(r))

    # finite type ----------------------------------------------------------
    @cached_property
    def positive_roots(self) -> tuple[Root, ...]:
        """Positive roots by closing the simple roots under simple reflections (finite type)."""
        if self.kind != "finite":
            raise InputError("affine root systems need a cutoff; use affine_positive_roots")
        seen = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            nxt = []
            for r in frontier:
                for i in range(self.rank):
                    s = self.reflect(r, i)
                    if all(x >= 0 for x in s) and s not in seen:
                        seen.add(s)
                        nxt.append(s)
            frontier = nxt
        return tuple(sorted(seen, key=root_key))

    @cached_property
    def _positive_set(self) -> frozenset:
        return frozenset(self.positive_roots)

    @property
    def highest_root(self) -> Root:
        return max(self.positive_roots, key=root_key)

    @cached_property
    def roots(self) -> tuple[Root, ...]:
        pos = self.positive_roots
        return pos + tuple(tuple(-x for x in r) for r in pos)

    def is_root(self, r: Sequence[int]) -> bool:
        """Membership in R; for affine type this includes the imaginary roots n*delta, n != 0."""
        r = tuple(r)
        if not any(r):
            return False
        if not (all(x >= 0 for x in r) or all(x <= 0 for x in r)):
            return False
        q = self.pairing(r, r)
        if self.kind == "finite":
            return q == 2
        return q == 2 or (q == 0 and self.delta_multiple(r) is not None)

    def is_positive_root(self, r: Sequence[int]) -> bool:
        return all(x >= 0 for x in r) and self.is_root(r)

    def is_real_root(self, r: Sequence[int]) -> bool:
        return self.is_root(r) and self.pairing(r, r) == 2

    # affine type ----------------------------------------------------------
    @cached_property
    def delta(self) -> Root:
        if self.kind != "affine":
            raise InputError("delta is only defined for affine types")
        fin = self.finite
        theta = fin.highest_root
        return (1,) + tuple(theta)

    @cached_property
    def finite(self) -> "RootSystem":
        """The finite root system on I' = I - {p}."""
        return root_system(self.graph.subgraph_without_extending().label)

    def delta_multiple(self, r: Sequence[int]) -> int | None:
        d = self.delta
        n = r[0]
        if tuple(n * x for x in d) == tuple(r):
            return n
        return None

    def embed(self, r_fin: Sequence[int]) -> Root:
        """Finite-lattice vector on I' into Z[I] (p-coordinate 0)."""
        return (0,) + tuple(r_fin)

    def bar(self, r: Sequence[int]) -> Root:
        """Class of r in Z[I]/Z delta, identified with Z[I'] (finite coordinates)."""
        n = r[0]
        return tuple(x - n * d for x, d in zip(r[1:], self.delta[1:]))

    def affine_real_roots(self, max_delta: int) -> Iterator[Root]:
        """Positive real roots alpha + n delta with n < max_delta+1 (unsorted, generator)."""
        d = self.delta
        for n in range(max_delta + 1):
            for a in self.finite.positive_roots:
                yield _add(self.embed(a), tuple(n * x for x in d))
                if n >= 1:
                    yield _sub(tuple(n * x for x in d), self.embed(a))

    def affine_positive_roots(self, height_cutoff: int) -> list[Root]:
        """Positive real and imaginary roots of height strictly below ``height_cutoff``."""
        hd = sum(self.delta)
        nmax = height_cutoff // hd + 1
        out = {r for r in self.affine_real_roots(nmax) if sum(r) < height_cutoff}
        out |= {tuple(n * x for x in self.delta) for n in range(1, nmax + 1)
                if n * hd < height_cutoff}
        return sorted(out, key=root_key)

    def roots_up_to_degree(self, m: int, imaginary: bool = True) -> list[Root]:
        """Positive roots that are <= m*delta componentwise, plus the finite roots on I'."""
        md = tuple(m * x for x in self.delta)
        out = {r for r in self.affine_real_roots(m + 1) if leq(r, md) or r[0] == 0}
        if imaginary:
            out |= {tuple(n * x for x in self.delta) for n in range(1, m + 1)}
        return sorted(out, key=root_key)


@lru_cache(maxsize=None)
def root_system(label: str | DynkinGraph) -> RootSystem:
    g = label if isinstance(label, DynkinGraph) else build_graph(label)
    return RootSystem(g)


def positive_roots(rs: RootSystem, height_cutoff: int | None = None) -> list[Root]:
    if rs.kind == "finite":
        return list(rs.positive_roots)
    if height_cutoff is None:
        raise InputError("affine root systems need a height cutoff")
    return rs.affine_positive_roots(height_cutoff)


def symmetric_pairing(a: Sequence[int], b: Sequence[int], rs: RootSystem) -> int:
    return rs.pairing(a, b)


def coxeter_number(label: str) -> int:
    letter, n = label[0], int(label[1:])
    return {"A": n + 1, "D": 2 * n - 2}.get(letter) or {6: 12, 7: 18, 8: 30}[n]


@dataclass(frozen=True)
class RootPartition:
    """A multiset of positive roots, kept in canonical order."""

    parts: tuple[Root, ...]
    total: Root = field(default=())

    def __post_init__(self):
        parts = tuple(sorted((tuple(p) for p in self.parts), key=root_key))
        object.__setattr__(self, "parts", parts)
        if parts:
            tot = tuple(map(sum, zip(*parts)))
            if self.total and tuple(self.total) != tot:
                raise InputError("parts do not sum to the stated total")
            object.__setattr__(self, "total", tot)

    @classmethod
    def of(cls, parts: Iterable[Sequence[int]], rank: int | None = None) -> "RootPartition":
        parts = [tuple(p) for p in parts]
        if not parts:
            if rank is None:
                raise InputError("empty partition needs a rank")
            return cls((), (0,) * rank)
        return cls(tuple(parts))

    def __len__(self) -> int:
        return len(self.parts)

    def key(self) -> str:
        """Semicolon-joined root encodings; the empty partition encodes as ``()``."""
        return ";".join(encode_root(p) for p in self.parts) if self.parts else "()"

    @classmethod
    def from_key(cls, key: str, rank: int) -> "RootPartition":
        key = key.strip()
        if key == "()":
            return cls.of([], rank)
        return cls.of([decode_root(s, rank) for s in key.split(";")])

    def multiplicities(self) -> dict[Root, int]:
        out: dict[Root, int] = {}
        for p in self.parts:
            out[p] = out.get(p, 0) + 1
        return out

    def __str__(self) -> str:
        return "{" + " + ".join("(" + encode_root(p) + ")" for p in self.parts) + "}"


def _partition_sort_key(p: RootPartition):
    return (len(p.parts), [root_key(r) for r in p.parts])


def root_partitions(alpha: Sequence[int], rs: RootSystem) -> list[RootPartition]:
    """All multisets of positive roots summing to alpha, each exactly once."""
    if rs.kind != "finite":
        raise InputError("root partitions are only enumerated in finite type")
    alpha = tuple(alpha)
    if len(alpha) != rs.rank or any(x < 0 for x in alpha):
        raise InputError(f"{alpha} is not a dimension vector for {rs.graph.label}")
    return list(_root_partitions(alpha, rs))


@lru_cache(maxsize=4096)
def _root_partitions(alpha: Root, rs: RootSystem) -> tuple[RootPartition, ...]:
    roots = [r for r in rs.positive_roots if leq(r, alpha)]
    out: list[RootPartition] = []

    def rec(rem: Root, start: int, acc: list[Root]):
        if not any(rem):
            out.append(RootPartition.of(acc, rs.rank))
            return
        for i in range(start, len(roots)):
            r = roots[i]
            if leq(r, rem):
                acc.append(r)
                rec(_sub(rem, r), i, acc)
                acc.pop()

    rec(alpha, 0, [])
    return tuple(sorted(out, key=_partition_sort_key))
