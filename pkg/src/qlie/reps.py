"""Representations of an oriented Dynkin quiver over GF(q).

A representation stores one matrix per arrow ``t -> h`` of shape
``dims[h] x dims[t]`` with entries encoded as in :mod:`qlie.fields`.
Iso-classes are named by Gabriel labels (root partitions) and recognised by
the vector of Hom dimensions from the indecomposables.
"""

from __future__ import annotations

import itertools
import zlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .cartan import Root, RootPartition, leq, root_partitions, root_system
from .cocycle import Orientation
from .errors import InputError, InternalError, ResourceError
from .fields import GF, field, gl_order


@dataclass(frozen=True)
class Bounds:
    max_total_dim: int = 8
    max_q: int = 64


DEFAULT_BOUNDS = Bounds()


class FqRep:
    """A representation ``(V, x)`` of a quiver with the given arrows (vertex index pairs)."""

    __slots__ = ("F", "dims", "arrows", "mats")

    def __init__(self, F: GF, dims: Sequence[int], arrows: Sequence[tuple[int, int]],
                 mats: Sequence[np.ndarray]):
        self.F = F
        self.dims = tuple(int(d) for d in dims)
        self.arrows = tuple(tuple(a) for a in arrows)
        if any(d < 0 for d in self.dims):
            raise InputError("dimensions must be nonnegative")
        if len(mats) != len(self.arrows):
            raise InputError("one matrix per arrow is required")
        ms = []
        for (t, h), m in zip(self.arrows, mats):
            m = np.asarray(m, dtype=np.int64).reshape(self.dims[h], self.dims[t])
            if m.size and (m.min() < 0 or m.max() >= F.q):
                raise InputError(f"matrix entries must be field codes 0..{F.q - 1}")
            ms.append(m)
        self.mats = tuple(ms)

    @property
    def q(self) -> int:
        return self.F.q

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    def __repr__(self):
        return f"FqRep(q={self.q}, dims={self.dims})"

    @classmethod
    def zero(cls, F: GF, dims, arrows) -> "FqRep":
        return cls(F, dims, arrows, [F.zeros((dims[h], dims[t])) for t, h in arrows])

    @classmethod
    def of_orientation(cls, orientation: Orientation, q: int, dims, mats) -> "FqRep":
        return cls(field(q), dims, orientation.arrows, mats)

    def direct_sum(self, other: "FqRep") -> "FqRep":
        if self.arrows != other.arrows or self.F is not other.F:
            raise InputError("direct sums need the same quiver and field")
        mats = []
        for (t, h), a, b in zip(self.arrows, self.mats, other.mats):
            m = self.F.zeros((self.dims[h] + other.dims[h], self.dims[t] + other.dims[t]))
            m[: a.shape[0], : a.shape[1]] = a
            m[a.shape[0]:, a.shape[1]:] = b
            mats.append(m)
        return FqRep(self.F, [x + y for x, y in zip(self.dims, other.dims)], self.arrows, mats)

    def is_stable_subspace(self, bases: Sequence[np.ndarray], pivots: Sequence[Sequence[int]]) -> bool:
        """Whether the graded subspace with RREF row bases is x-stable."""
        F = self.F
        for (t, h), m in zip(self.arrows, self.mats):
            bt = bases[t]
            if bt.shape[0] == 0:
                continue
            img = F.matmul(bt, m.T)  # rows: images of the basis of W_t
            if _reduce(F, img, bases[h], pivots[h]).any():
                return False
        return True

    def sub_and_quotient(self, bases, pivots) -> tuple["FqRep", "FqRep"]:
        """Restriction to a stable graded subspace and the induced quotient."""
        F = self.F
        sub_mats, quo_mats = [], []
        comp = [[c for c in range(d) if c not in set(p)] for d, p in zip(self.dims, pivots)]
        for (t, h), m in zip(self.arrows, self.mats):
            bt, ph = bases[t], list(pivots[h])
            img = F.matmul(bt, m.T) if bt.shape[0] else F.zeros((0, self.dims[h]))
            sub_mats.append(img[:, ph].T if ph else F.zeros((0, bt.shape[0])))
            ct = comp[t]
            if ct and comp[h]:
                cols = m[:, ct].T  # rows: images of the complement basis vectors
                red = _reduce(F, cols, bases[h], ph)
                quo_mats.append(red[:, comp[h]].T)
            else:
                quo_mats.append(F.zeros((len(comp[h]), len(ct))))
        sub = FqRep(F, [b.shape[0] for b in bases], self.arrows, sub_mats)
        quo = FqRep(F, [len(c) for c in comp], self.arrows, quo_mats)
        return sub, quo

    def graded_subspaces(self, a: Sequence[int]) -> Iterator[tuple[list, list]]:
        spaces = [list(self.F.subspaces(d, k)) for d, k in zip(self.dims, a)]
        for choice in itertools.product(*spaces):
            yield [c[0] for c in choice], [c[1] for c in choice]

    def stable_subspaces(self, a: Sequence[int]):
        for bases, piv in self.graded_subspaces(a):
            if self.is_stable_subspace(bases, piv):
                yield bases, piv


def _reduce(F: GF, rows: np.ndarray, basis: np.ndarray, pivots) -> np.ndarray:
    """Reduce row vectors modulo the row space of an RREF basis."""
    if basis.shape[0] == 0 or rows.shape[0] == 0:
        return rows
    coeff = rows[:, list(pivots)]
    return F.sub(rows, F.matmul(coeff, basis))


def hom_matrix(X: FqRep, Y: FqRep) -> np.ndarray:
    """Matrix of ``(f_i) -> (Y_a f_t - f_h X_a)_a`` from sum Hom(X_i, Y_i) to sum over arrows."""
    F = X.F
    offs = np.cumsum([0] + [y * x for x, y in zip(X.dims, Y.dims)])
    rows = []
    for (t, h), xa, ya in zip(X.arrows, X.mats, Y.mats):
        nr = Y.dims[h] * X.dims[t]
        if nr == 0:
            continue
        block = F.zeros((nr, int(offs[-1])))
        block[:, offs[t]:offs[t + 1]] = np.kron(ya, np.eye(X.dims[t], dtype=np.int64))
        block[:, offs[h]:offs[h + 1]] = F.neg[np.kron(np.eye(Y.dims[h], dtype=np.int64), xa.T)]
        rows.append(block)
    if not rows:
        return F.zeros((0, int(offs[-1])))
    return np.vstack(rows)


def hom_dim(X: FqRep, Y: FqRep) -> int:
    m = hom_matrix(X, Y)
    return m.shape[1] - X.F.rank(m)


def ext_dim(X: FqRep, Y: FqRep) -> int:
    """dim Ext^1(X, Y)."""
    m = hom_matrix(X, Y)
    return m.shape[0] - X.F.rank(m)


def end_dim(X: FqRep) -> int:
    return hom_dim(X, X)


def extensions(N: FqRep, P: FqRep) -> Iterator[FqRep]:
    """Middle terms of one representative per class in Ext^1(N, P) (P is the sub)."""
    F = N.F
    m = hom_matrix(N, P)
    nrows = sum(P.dims[h] * N.dims[t] for t, h in N.arrows)
    if m.shape[1] and m.shape[0]:
        _, piv = F.rref(m.T)
    else:
        piv = []
    free = [r for r in range(nrows) if r not in set(piv)]
    shapes = [(P.dims[h], N.dims[t]) for t, h in N.arrows]
    for vals in itertools.product(range(F.q), repeat=len(free)):
        z = np.zeros(nrows, dtype=np.int64)
        z[free] = vals
        mats, pos = [], 0
        for (t, h), (ph, nt), pa, na in zip(N.arrows, shapes, P.mats, N.mats):
            za = z[pos:pos + ph * nt].reshape(ph, nt)
            pos += ph * nt
            e = F.zeros((P.dims[h] + N.dims[h], P.dims[t] + N.dims[t]))
            e[: P.dims[h], : P.dims[t]] = pa
            e[: P.dims[h], P.dims[t]:] = za
            e[P.dims[h]:, P.dims[t]:] = na
            mats.append(e)
        yield FqRep(F, [p + n for p, n in zip(P.dims, N.dims)], N.arrows, mats)


def _seed(*parts) -> int:
    return zlib.crc32(repr(parts).encode())


class RepCatalog:
    """Indecomposables, iso-class representatives and identification for one (orientation, q)."""

    def __init__(self, orientation: Orientation, q: int, seed: int = 0,
                 bounds: Bounds = DEFAULT_BOUNDS, max_tries: int = 5000):
        if orientation.graph.kind != "finite":
            raise InputError("representation catalogs need a Dynkin (finite type) quiver")
        if q > bounds.max_q:
            raise ResourceError(f"q={q} exceeds the bound {bounds.max_q}")
        self.orientation, self.q, self.seed, self.bounds = orientation, q, seed, bounds
        self.F = field(q)
        self.rs = root_system(orientation.graph)
        self.max_tries = max_tries
        self._ind: dict[Root, FqRep] = {}
        self._hom: dict[tuple[Root, Root], int] = {}
        self._fp_index: dict[Root, dict[tuple, RootPartition]] = {}
        self._reps: dict[RootPartition, FqRep] = {}

    @property
    def arrows(self):
        return self.orientation.arrows

    def check_dims(self, d: Sequence[int]) -> None:
        if len(d) != self.rs.rank or any(x < 0 for x in d):
            raise InputError(f"bad dimension vector {tuple(d)}")
        if sum(d) > self.bounds.max_total_dim:
            raise ResourceError(f"total dimension {sum(d)} exceeds the bound {self.bounds.max_total_dim}")

    def random_rep(self, d: Sequence[int], rng: np.random.Generator, active=None) -> FqRep:
        mats = []
        for e, (t, h) in enumerate(self.arrows):
            if active is None or e in active:
                mats.append(self.F.random(rng, (d[h], d[t])))
            else:
                mats.append(self.F.zeros((d[h], d[t])))
        return FqRep(self.F, d, self.arrows, mats)

    def indecomposable(self, beta: Root) -> FqRep:
        beta = tuple(beta)
        if beta not in self._ind:
            if not self.rs.is_positive_root(beta):
                raise InputError(f"{beta} is not a positive root")
            rng = np.random.default_rng(_seed(self.seed, str(self.orientation), beta, self.q))
            for _ in range(self.max_tries):
                x = self.random_rep(beta, rng)
                if end_dim(x) == 1:
                    self._ind[beta] = x
                    break
            else:
                raise InternalError(f"no indecomposable of dimension {beta} found over GF({self.q})")
        return self._ind[beta]

    def hom_ind(self, a: Root, b: Root) -> int:
        key = (a, b)
        if key not in self._hom:
            self._hom[key] = hom_dim(self.indecomposable(a), self.indecomposable(b))
        return self._hom[key]

    def roots_below(self, d: Sequence[int]) -> list[Root]:
        return [r for r in self.rs.positive_roots if leq(r, d)]

    def representative(self, label: RootPartition) -> FqRep:
        if label not in self._reps:
            x = FqRep.zero(self.F, (0,) * self.rs.rank, self.arrows)
            for part in label.parts:
                x = x.direct_sum(self.indecomposable(part))
            self._reps[label] = x
        return self._reps[label]

    def _index(self, d: Root) -> dict[tuple, RootPartition]:
        if d not in self._fp_index:
            probes = self.roots_below(d)
            idx = {}
            for lab in root_partitions(d, self.rs):
                fp = tuple(sum(self.hom_ind(b, g) for g in lab.parts) for b in probes)
                if fp in idx:
                    raise InternalError(f"fingerprint collision between {idx[fp]} and {lab}")
                idx[fp] = lab
            self._fp_index[d] = idx
        return self._fp_index[d]

    def fingerprint(self, x: FqRep) -> tuple[int, ...]:
        return tuple(hom_dim(self.indecomposable(b), x) for b in self.roots_below(x.dims))

    def identify(self, x: FqRep) -> RootPartition:
        if x.arrows != self.arrows or x.F is not self.F:
            raise InputError("representation does not belong to this catalog")
        d = x.dims
        if not any(d):
            return RootPartition.of([], self.rs.rank)
        lab = self._index(d).get(self.fingerprint(x))
        if lab is None:
            raise InternalError(f"fingerprint of {x} matches no iso-class")
        return lab

    def enumerate(self, d: Sequence[int]) -> list[tuple[RootPartition, FqRep]]:
        d = tuple(d)
        self.check_dims(d)
        return [(lab, self.representative(lab)) for lab in root_partitions(d, self.rs)]

    def end_dim(self, label: RootPartition) -> int:
        return sum(self.hom_ind(a, b) for a in label.parts for b in label.parts)

    def aut_order(self, label: RootPartition) -> int:
        """|Aut X| = q^(dim End - sum m^2) * prod |GL_m(q)| for X with multiplicities m."""
        mult = list(label.multiplicities().values())
        return self.q ** (self.end_dim(label) - sum(m * m for m in mult)) * _prod(gl_order(m, self.q) for m in mult)


def _prod(it) -> int:
    out = 1
    for x in it:
        out *= x
    return out


_CATALOGS: dict[tuple, RepCatalog] = {}


def catalog(orientation: Orientation, q: int, seed: int = 0) -> RepCatalog:
    key = (orientation, q, seed)
    if key not in _CATALOGS:
        _CATALOGS[key] = RepCatalog(orientation, q, seed)
    return _CATALOGS[key]


def orbit_census(orientation: Orientation, d: Sequence[int], q: int) -> tuple[Fraction, int]:
    """(sum over classes of |G_d| / |Aut X|, q^dim E_d); equal iff the classification is complete."""
    cat = catalog(orientation, q)
    g = _prod(gl_order(x, q) for x in d)
    total = sum(Fraction(g, cat.aut_order(lab)) for lab, _ in cat.enumerate(d))
    e = sum(d[h] * d[t] for t, h in orientation.arrows)
    return total, q**e

