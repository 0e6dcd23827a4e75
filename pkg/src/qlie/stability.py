"""Stability characters and a finite-field stability oracle.

Convention: for a character ``theta`` with ``theta(dim V) = 0``, a representation
is stable when ``theta > 0`` on the dimension of every proper nonzero
subrepresentation and semistable when ``theta >= 0`` there.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .cartan import DynkinGraph, Root, RootSystem, build_graph, encode_root, root_system
from .cocycle import Orientation
from .errors import InputError, ResourceError
from .reps import FqRep, catalog


@dataclass(frozen=True)
class Character:
    values: tuple[Fraction, ...]
    ambient: Root

    def __call__(self, v: Sequence[int]) -> Fraction:
        return sum((c * x for c, x in zip(self.values, v)), Fraction(0))

    def __str__(self):
        return ",".join(str(v) for v in self.values)


@dataclass(frozen=True)
class SlopeCondition:
    c: tuple[Fraction, ...]
    r: tuple[Fraction, ...]

    def __post_init__(self):
        if any(Fraction(x) <= 0 for x in self.r):
            raise InputError("r must be positive on every vertex")

    def mu(self, v: Sequence[int]) -> Fraction:
        rv = sum(Fraction(a) * b for a, b in zip(self.r, v))
        if rv <= 0:
            raise InputError("slope of the zero vector is undefined")
        return sum(Fraction(a) * b for a, b in zip(self.c, v)) / rv


def king_character(orientation: Orientation, ambient: Sequence[int]) -> Character:
    """Theta(V') = sum over arrows t->h of (dim V_t dim V'_h - dim V'_t dim V_h)."""
    ambient = tuple(ambient)
    vals = [Fraction(0)] * orientation.graph.rank
    for t, h in orientation.arrows:
        vals[h] += ambient[t]
        vals[t] -= ambient[h]
    return Character(tuple(vals), ambient)


def slope_character(mu: SlopeCondition, ambient: Sequence[int]) -> Character:
    """theta_mu(V') = -c(V') + c(V)/r(V) r(V')."""
    ambient = tuple(ambient)
    if not any(ambient):
        raise InputError("ambient dimension must be nonzero")
    cv = sum(Fraction(a) * b for a, b in zip(mu.c, ambient))
    rv = sum(Fraction(a) * b for a, b in zip(mu.r, ambient))
    return Character(tuple(-Fraction(c) + cv / rv * Fraction(r) for c, r in zip(mu.c, mu.r)), ambient)


def slope_from_character(theta: Character, r: Sequence[int] | None = None) -> SlopeCondition:
    """A slope condition whose character is theta: c = r - theta."""
    r = tuple(Fraction(x) for x in (r or [1] * len(theta.values)))
    return SlopeCondition(tuple(ri - t for ri, t in zip(r, theta.values)), r)


def nakajima_character(graph: DynkinGraph | str, ambient: Sequence[int]) -> Character:
    """-1 on I' and sum_{i in I'} ambient_i / ambient_p on the extending vertex."""
    if isinstance(graph, str):
        graph = build_graph(graph)
    if graph.kind != "affine":
        raise InputError("the Nakajima character needs an affine graph")
    ambient = tuple(ambient)
    p = graph.p_index
    if ambient[p] == 0:
        raise InputError("ambient must have a nonzero coordinate at the extending vertex")
    vals = [Fraction(-1)] * graph.rank
    vals[p] = Fraction(sum(x for i, x in enumerate(ambient) if i != p), ambient[p])
    return Character(tuple(vals), ambient)


def flows_to_extending(orientation: Orientation, p: int | None = None) -> bool:
    """p is a sink and every vertex reaches p along the arrows."""
    g = orientation.graph
    pi = g.p_index if p is None else g.index(p)
    if any(t == pi for t, _ in orientation.arrows):
        return False
    reach = {pi}
    changed = True
    while changed:
        changed = False
        for t, h in orientation.arrows:
            if h in reach and t not in reach:
                reach.add(t)
                changed = True
    return len(reach) == g.rank


def wall_test(theta: Sequence, finite_rs: RootSystem) -> bool:
    """True when sum_k theta_k alpha_k is nonzero on every positive root."""
    theta = [Fraction(t) for t in theta]
    if len(theta) != finite_rs.rank:
        raise InputError("theta must have one value per vertex of the finite system")
    return all(sum(t * a for t, a in zip(theta, r)) != 0 for r in finite_rs.positive_roots)


# ---------------------------------------------------------------- oracle
STABLE, SEMISTABLE, UNSTABLE = "stable", "semistable-not-stable", "unstable"


@dataclass(frozen=True)
class StabilityBounds:
    max_total_dim: int = 7
    max_q: int = 4


@dataclass(frozen=True)
class Verdict:
    verdict: str
    witness: Root | None = None

    @property
    def stable(self) -> bool:
        return self.verdict == STABLE

    def witness_str(self) -> str:
        return encode_root(self.witness) if self.witness is not None else "-"


def moment_map(x: FqRep, orientation: Orientation) -> list[np.ndarray]:
    """m_i = sum over arrows h with head i of eps(h) x_h x_hbar, eps = +1 on Omega and -1 on its reverse."""
    F = x.F
    out = [F.zeros((d, d)) for d in x.dims]
    n = len(orientation.arrows)
    for k, (t, h) in enumerate(x.arrows):
        rev = x.mats[k + n if k < n else k - n]
        term = F.matmul(x.mats[k], rev)
        out[h] = F.add[out[h], term] if k < n else F.sub(out[h], term)
    return out


def is_nilpotent(x: FqRep) -> bool:
    """All sufficiently long paths act by zero (iterated images shrink to 0)."""
    F = x.F
    spans = [F.eye(d) for d in x.dims]
    for _ in range(x.total_dim + 1):
        if all(s.shape[0] == 0 for s in spans):
            return True
        nxt = [[] for _ in x.dims]
        for (t, h), m in zip(x.arrows, x.mats):
            if spans[t].shape[0] and x.dims[h]:
                nxt[h].append(F.matmul(spans[t], m.T))
        new = []
        for i, rows in enumerate(nxt):
            if rows:
                r, piv = F.rref(np.vstack(rows))
                new.append(r[: len(piv)])
            else:
                new.append(F.zeros((0, x.dims[i])))
        spans = new
    return all(s.shape[0] == 0 for s in spans)


def _check_double(x: FqRep, orientation: Orientation) -> None:
    if x.arrows != orientation.double_arrows:
        raise InputError("double-quiver input must list the Omega arrows followed by their reverses")
    if any(m.any() for m in moment_map(x, orientation)):
        raise InputError("representation violates the preprojective relations")
    if not is_nilpotent(x):
        raise InputError("representation is not nilpotent")


def is_stable(x: FqRep, theta: Character, orientation: Orientation | None = None,
              bounds: StabilityBounds = StabilityBounds()) -> Verdict:
    """Verdict by exhaustive enumeration of x-stable graded subspaces.

    When ``orientation`` is given and ``x`` lives on its double quiver, the
    preprojective relations and nilpotency are checked first.
    """
    d = x.dims
    if theta(d) != 0:
        raise InputError(f"theta(dim x) = {theta(d)} is not zero")
    if sum(d) > bounds.max_total_dim or x.q > bounds.max_q:
        raise ResourceError(f"dimension {sum(d)} / q={x.q} beyond the stability bounds")
    if orientation is not None and len(x.arrows) == 2 * len(orientation.arrows):
        _check_double(x, orientation)
    semistable_witness = None
    subs = [a for a in itertools.product(*(range(k + 1) for k in d)) if any(a) and a != d]
    subs.sort(key=lambda a: (theta(a), sum(a)))
    for a in subs:
        t = theta(a)
        if t > 0:
            break
        if next(x.stable_subspaces(a), None) is None:
            continue
        if t < 0:
            return Verdict(UNSTABLE, a)
        if semistable_witness is None:
            semistable_witness = a
    if semistable_witness is not None:
        return Verdict(SEMISTABLE, semistable_witness)
    return Verdict(STABLE)


def is_slope_stable(x: FqRep, mu: SlopeCondition) -> Verdict:
    """Rudakov test: mu(V') < mu(V) for every proper nonzero subrepresentation V'."""
    d = x.dims
    mv = mu.mu(d)
    semi = None
    for a in itertools.product(*(range(k + 1) for k in d)):
        if not any(a) or a == d:
            continue
        m = mu.mu(a)
        if m < mv or next(x.stable_subspaces(a), None) is None:
            continue
        if m > mv:
            return Verdict(UNSTABLE, a)
        semi = semi or a
    return Verdict(SEMISTABLE, semi) if semi else Verdict(STABLE)


def to_double(x: FqRep, orientation: Orientation) -> FqRep:
    """x in E_{V,Omega} as a point of the double quiver with zero reverse maps."""
    F = x.F
    rev = [F.zeros((x.dims[t], x.dims[h])) for t, h in orientation.arrows]
    return FqRep(F, x.dims, orientation.double_arrows, list(x.mats) + rev)


@dataclass
class HarnessRow:
    q: int
    label: str
    parts: int
    theta: str
    verdict: str
    witness: str
    ok: bool

    def line(self) -> str:
        return f"{self.label};{self.theta};{self.verdict};{self.witness}"


@dataclass
class HarnessReport:
    type: str
    alpha: Root
    orientation: str
    rows: list[HarnessRow] = dc_field(default_factory=list)
    disagreements: list[str] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows) and not self.disagreements

    def lines(self) -> list[str]:
        return [r.line() for r in self.rows]


def stability_lemma_harness(type_label: str, alpha: Sequence[int], orientation: Orientation,
                            qs: Sequence[int] = (2, 3)) -> HarnessReport:
    """One-part label <=> stable under the King character, for every class of dimension alpha."""
    rs = root_system(type_label)
    alpha = tuple(alpha)
    if rs.kind != "finite" or not rs.is_positive_root(alpha):
        raise InputError(f"{alpha} is not a positive root of {type_label}")
    theta = king_character(orientation, alpha)
    rep = HarnessReport(type_label, alpha, str(orientation))
    seen: dict[str, str] = {}
    for q in qs:
        for lab, x in catalog(orientation, q).enumerate(alpha):
            v = is_stable(to_double(x, orientation), theta, orientation)
            one = len(lab.parts) == 1
            rep.rows.append(HarnessRow(q, lab.key(), len(lab.parts), str(theta), v.verdict,
                                       v.witness_str(), one == v.stable))
            prev = seen.setdefault(lab.key(), v.verdict)
            if prev != v.verdict:
                rep.disagreements.append(f"{lab.key()}: {prev} vs {v.verdict} at q={q}")
    return rep
