"""Candidate BPS basis of the positive affine algebra and its algebraic audits.

The index set is ``{E~_alpha : alpha real positive} U {E~_k(m) : k in I', m >= 1}``,
truncated by delta-degree.  Only algebraic consequences are checked here; the
moduli-theoretic statements behind the basis are not machine-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence, Union

from .cartan import DynkinGraph, Root, build_graph, encode_root, leq, root_key, root_system
from .cocycle import Orientation, reference_orientation
from .errors import InputError
from .lie import AffineLieAlgebra, Imaginary, RealRoot, ehat, generated_root_space_dimensions, root_space_dimensions
from .stability import nakajima_character, wall_test


@dataclass(frozen=True)
class RealStable:
    root: Root

    def __str__(self):
        return f"E~[{encode_root(self.root)}]"


@dataclass(frozen=True)
class ComponentFn:
    k: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise InputError("m must be positive")

    def __str__(self):
        return f"E~{self.k}({self.m})"


BpsSymbol = Union[RealStable, ComponentFn]


def _graph(g) -> DynkinGraph:
    g = build_graph(g) if isinstance(g, str) else g
    if g.kind != "affine":
        raise InputError("BPS data need an affine graph")
    return g


def bps_grading(s: BpsSymbol, g: DynkinGraph) -> Root:
    if isinstance(s, RealStable):
        return s.root
    return tuple(s.m * x for x in root_system(g).delta)


def bps_basis(g, p: int | None = None, cutoff: int = 1) -> list[BpsSymbol]:
    """Real roots of delta-degree <= cutoff (those <= cutoff*delta, plus the finite roots on I')
    and E~_k(m) for k in I', 1 <= m <= cutoff."""
    g = _graph(g)
    if p is not None and p != g.extending_vertex:
        raise InputError(f"{p} is not the extending vertex of {g.label}")
    if cutoff < 0:
        raise InputError("cutoff must be nonnegative")
    rs = root_system(g)
    out: list[BpsSymbol] = [RealStable(r) for r in rs.roots_up_to_degree(cutoff, imaginary=False)]
    out += [ComponentFn(k, m) for m in range(1, cutoff + 1) for k in g.vertices[1:]]
    return out


def expected_multiplicity(gamma: Sequence[int], g: DynkinGraph) -> int:
    """Root multiplicity of an untwisted affine ADE algebra: 1 on real roots, |I'| on n*delta."""
    rs = root_system(g)
    gamma = tuple(gamma)
    if not all(x >= 0 for x in gamma) or not any(gamma):
        return 0
    if rs.delta_multiple(gamma):
        return g.rank - 1
    return 1 if rs.pairing(gamma, gamma) == 2 else 0


@dataclass
class AuditReport:
    label: str
    cutoff: int
    rows: list[tuple[Root, int, int, int, str]] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r[4] == "ok" for r in self.rows)

    def lines(self) -> list[str]:
        return [f"{encode_root(g)};{e};{f};{'ok' if s == 'ok' else s}" for g, e, f, _, s in self.rows]


def multiplicity_audit(g, cutoff: int, orientation: Orientation | None = None) -> AuditReport:
    """Per grading in the box <= cutoff*delta: Kac multiplicity vs. number of BPS symbols
    vs. dimension of the subalgebra generated by the simple root vectors."""
    g = _graph(g)
    rs = root_system(g)
    box = tuple(cutoff * x for x in rs.delta)
    hist: dict[Root, int] = {}
    for s in bps_basis(g, cutoff=cutoff):
        gr = bps_grading(s, g)
        if leq(gr, box):
            hist[gr] = hist.get(gr, 0) + 1
    alg = AffineLieAlgebra(rs, orientation or reference_orientation(g))
    lie = generated_root_space_dimensions(alg, box)
    grads = set(hist) | set(lie)
    rep = AuditReport(g.label, cutoff)
    for gr in sorted(grads, key=root_key):
        e, f, d = expected_multiplicity(gr, g), hist.get(gr, 0), lie.get(gr, 0)
        status = "ok" if e == f == d else f"mismatch(lie={d})"
        rep.rows.append((gr, e, f, d, status))
    return rep


@dataclass
class ConjectureReport:
    label: str
    cutoff: int
    checks: list[tuple[str, bool, str]] = dc_field(default_factory=list)
    not_checked: tuple[str, ...] = (
        "stable loci of real-root dimension vectors",
        "semistable diagonal and S-equivalence for m*delta",
        "components of the exceptional fibre",
    )

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        out = [f"{name};{'pass' if ok else 'fail'};{detail}" for name, ok, detail in self.checks]
        out += [f"{n};not machine-checked here;-" for n in self.not_checked]
        return out


def conjecture_algebra_checks(g, cutoff: int, theta: Sequence | None = None,
                              orientation: Orientation | None = None) -> ConjectureReport:
    """(a) ehat(k, m) == bar(alpha_k)(m); (b) graded bijection onto the BPS index set;
    (c) the character on I' (Nakajima by default) avoids every wall."""
    g = _graph(g)
    if not 1 <= cutoff <= 4:
        raise InputError("cutoff must be between 1 and 4")
    rs = root_system(g)
    eps = orientation or reference_orientation(g)
    rep = ConjectureReport(g.label, cutoff)

    bad = []
    for m in range(1, cutoff + 1):
        for k in g.vertices[1:]:
            v = ehat(k, m, eps, rs)
            if v.terms != {Imaginary(k, m): 1}:
                bad.append(f"k={k},m={m}:{v}")
    rep.checks.append(("ehat", not bad, ",".join(bad)))

    alg = AffineLieAlgebra(rs, eps)
    lie_basis = alg.basis_up_to(cutoff)

    def to_bps(s):
        return RealStable(s.root) if isinstance(s, RealRoot) else ComponentFn(s.k, s.n)

    image = [to_bps(s) for s in lie_basis]
    target = bps_basis(g, cutoff=cutoff)
    graded = all(bps_grading(to_bps(s), g) == alg.grading(s) for s in lie_basis)
    bij = len(set(image)) == len(image) and set(image) == set(target) and len(target) == len(set(target))
    same_hist = root_space_dimensions(alg, lie_basis) == _hist(target, g)
    rep.checks.append(("graded-bijection", graded and bij and same_hist,
                       f"{len(image)} symbols" if bij else "image differs from the BPS index set"))

    if theta is None:
        theta = nakajima_character(g, rs.delta).values[1:]
    fin = rs.finite
    ok = wall_test(theta, fin)
    rep.checks.append(("wall-test", ok, ",".join(str(t) for t in theta)))
    return rep


def _hist(symbols, g) -> dict[Root, int]:
    out: dict[Root, int] = {}
    for s in symbols:
        gr = bps_grading(s, g)
        out[gr] = out.get(gr, 0) + 1
    return out
