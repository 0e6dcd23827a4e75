"""Cocycle Lie algebras with explicit, exact structure constants.

Three algebras are realised on basis symbols:

* ``n^eps`` of a finite ADE type: vectors ``e[alpha]`` for positive roots,
* the full ``g^eps``: all roots plus Cartan vectors ``H i``,
* the positive part of the untwisted affine algebra: real root vectors plus
  imaginary vectors ``h k(n)`` for ``k`` in ``I' = I - {p}`` and ``n >= 1``.

Brackets of root vectors are ``[e_a, e_b] = eps(a, b) e_{a+b}`` with ``eps`` the
orientation cocycle.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from .cartan import Root, RootSystem, decode_root, encode_root, leq, root_key
from .cocycle import Orientation
from .errors import InputError


@dataclass(frozen=True)
class RealRoot:
    root: Root

    def __str__(self):
        return f"e[{encode_root(self.root)}]"


@dataclass(frozen=True)
class Imaginary:
    k: int  # vertex label in I'
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise InputError("imaginary vectors need n >= 1")

    def __str__(self):
        return f"h{self.k}({self.n})"


@dataclass(frozen=True)
class Cartan:
    i: int  # vertex label

    def __str__(self):
        return f"H{self.i}"


Symbol = Union[RealRoot, Imaginary, Cartan]


def _sym_key(s: Symbol):
    if isinstance(s, RealRoot):
        return (0, root_key(s.root))
    if isinstance(s, Imaginary):
        return (1, s.n, s.k)
    return (2, s.i)


class LieElement:
    """Finite rational combination of basis symbols; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Symbol, object] | None = None):
        t = {}
        for s, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                t[s] = c
        self.terms: dict[Symbol, Fraction] = t

    @classmethod
    def basis(cls, s: Symbol, c=1) -> "LieElement":
        return cls({s: c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, LieElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other: "LieElement") -> "LieElement":
        t = dict(self.terms)
        for s, c in other.terms.items():
            t[s] = t.get(s, 0) + c
        return LieElement(t)

    def __neg__(self):
        return LieElement({s: -c for s, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c):
        return LieElement({s: c * v for s, v in self.terms.items()})

    __mul__ = __rmul__

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: _sym_key(kv[0])))

    def __repr__(self):
        return f"LieElement({self})"

    def __str__(self):
        return format_element(self)

    def coefficient(self, s: Symbol) -> Fraction:
        return self.terms.get(s, Fraction(0))

    def proportional_to(self, other: "LieElement") -> Fraction | None:
        """c with self == c*other, or None."""
        if not other:
            return Fraction(0) if not self else None
        s0, c0 = next(iter(other.terms.items()))
        c = self.coefficient(s0) / c0
        return c if self == c * other else None


def format_element(x: LieElement) -> str:
    """``"1*e[1,1] - 2*h1(3) + 1/2*H0"``; zero is ``"0"``."""
    if not x.terms:
        return "0"
    out = []
    for i, (s, c) in enumerate(x):
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        body = f"{mag}*{s}"
        out.append((("-" + body) if sign == "-" else body) if i == 0 else f" {sign} {body}")
    return "".join(out)


_TERM = re.compile(r"\s*([+-])?\s*(\d+(?:/\d+)?)\s*\*\s*(e\[[-\d,\s]+\]|h-?\d+\(\d+\)|H-?\d+)\s*")


def parse_element(text: str) -> LieElement:
    text = text.strip()
    if text == "0":
        return LieElement()
    pos, terms = 0, {}
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise InputError(f"cannot parse Lie element near {text[pos:]!r}")
        sign, coef, sym = m.groups()
        c = Fraction(coef) * (-1 if sign == "-" else 1)
        if sym.startswith("e["):
            s: Symbol = RealRoot(decode_root(sym[2:-1].replace(" ", "")))
        elif sym.startswith("h"):
            k, n = re.fullmatch(r"h(-?\d+)\((\d+)\)", sym).groups()
            s = Imaginary(int(k), int(n))
        else:
            s = Cartan(int(sym[1:]))
        terms[s] = terms.get(s, 0) + c
        pos = m.end()
    return LieElement(terms)


def _add(a, b):
    return tuple(x + y for x, y in zip(a, b))


class CocycleLieAlgebra:
    """Common machinery: bilinear extension, structure tables, checkers."""

    rs: RootSystem
    eps: Orientation

    def bracket_symbols(self, a: Symbol, b: Symbol) -> LieElement:  # pragma: no cover - abstract
        raise NotImplementedError

    def check_symbol(self, s: Symbol) -> None:  # pragma: no cover - abstract
        raise NotImplementedError

    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        acc: dict[Symbol, Fraction] = {}
        for a, ca in x.terms.items():
            self.check_symbol(a)
            for b, cb in y.terms.items():
                self.check_symbol(b)
                for s, c in self.bracket_symbols(a, b).terms.items():
                    acc[s] = acc.get(s, 0) + ca * cb * c
        return LieElement(acc)

    def grading(self, s: Symbol) -> Root:
        raise NotImplementedError  # pragma: no cover

    def e(self, root: Sequence[int]) -> LieElement:
        return LieElement.basis(RealRoot(tuple(root)))

    def simple(self, vertex: int) -> LieElement:
        return self.e(self.rs.simple_root(vertex))

    def ad_power(self, x: LieElement, y: LieElement, times: int) -> LieElement:
        for _ in range(times):
            y = self.bracket(x, y)
            if not y:
                break
        return y


class FiniteLieAlgebra(CocycleLieAlgebra):
    """``g^eps`` (``positive_only=False``) or ``n^eps`` (``positive_only=True``) of a finite type."""

    def __init__(self, rs: RootSystem, eps: Orientation, positive_only: bool = False):
        if rs.kind != "finite":
            raise InputError("finite cocycle algebras need a finite root system")
        if eps.graph != rs.graph:
            raise InputError("orientation lives on a different graph")
        self.rs, self.eps, self.positive_only = rs, eps, positive_only
        self._roots = frozenset(rs.positive_roots if positive_only else rs.roots)
        self._all_roots = frozenset(rs.roots)

    @cached_property
    def basis(self) -> list[Symbol]:
        out: list[Symbol] = [RealRoot(r) for r in self.rs.positive_roots]
        if not self.positive_only:
            out += [RealRoot(tuple(-x for x in r)) for r in self.rs.positive_roots]
            out += [Cartan(v) for v in self.rs.graph.vertices]
        return out

    @property
    def dim(self) -> int:
        return len(self.basis)

    def check_symbol(self, s: Symbol) -> None:
        if isinstance(s, RealRoot):
            if s.root not in self._roots:
                raise InputError(f"{s} is not a basis vector of this algebra")
        elif isinstance(s, Cartan) and not self.positive_only:
            self.rs.graph.index(s.i)
        else:
            raise InputError(f"{s} is not a basis vector of this algebra")

    def grading(self, s: Symbol) -> Root:
        if isinstance(s, RealRoot):
            return s.root
        return (0,) * self.rs.rank

    def bracket_symbols(self, a: Symbol, b: Symbol) -> LieElement:
        rs, eps = self.rs, self.eps
        if isinstance(a, RealRoot) and isinstance(b, RealRoot):
            s = _add(a.root, b.root)
            if not any(s):
                c = eps.epsilon(a.root, b.root)
                return LieElement({Cartan(v): c * a.root[i] for i, v in enumerate(rs.graph.vertices)})
            if s in self._all_roots:
                return LieElement({RealRoot(s): eps.epsilon(a.root, b.root)})
            return LieElement()
        if isinstance(a, Cartan) and isinstance(b, RealRoot):
            return LieElement({b: rs.pairing(rs.simple_root(a.i), b.root)})
        if isinstance(a, RealRoot) and isinstance(b, Cartan):
            return LieElement({a: -rs.pairing(rs.simple_root(b.i), a.root)})
        return LieElement()

    @cached_property
    def table(self) -> dict[tuple[int, int], LieElement]:
        """Structure constants on basis indices (zero brackets omitted)."""
        out = {}
        for i, a in enumerate(self.basis):
            for j, b in enumerate(self.basis):
                v = self.bracket_symbols(a, b)
                if v:
                    out[(i, j)] = v
        return out

    def ad_matrix(self, x: LieElement) -> np.ndarray:
        """Integer matrix of ad(x) in ``self.basis`` (columns are images)."""
        index = {s: i for i, s in enumerate(self.basis)}
        m = np.zeros((self.dim, self.dim), dtype=object)
        for j, b in enumerate(self.basis):
            for s, c in self.bracket(x, LieElement.basis(b)).terms.items():
                m[index[s], j] += c
        return m


def build_full_g(rs: RootSystem, eps: Orientation) -> FiniteLieAlgebra:
    alg = FiniteLieAlgebra(rs, eps, positive_only=False)
    alg.table  # noqa: B018  (materialise once; read-only afterwards)
    return alg


def bracket_finite(x: LieElement, y: LieElement, eps: Orientation, rs: RootSystem) -> LieElement:
    return FiniteLieAlgebra(rs, eps, positive_only=True).bracket(x, y)


class AffineLieAlgebra(CocycleLieAlgebra):
    """Positive part of the untwisted affine algebra built on the affine cocycle.

    ``mixed`` selects the convention for ``[h_a(m), e_b]``:

    * ``"cocycle"`` (default): ``eps(m delta, b) (a, b) e_{b + m delta}``,
    * ``"plain"``: ``(a, b) e_{b + m delta}`` with no sign.

    The plain rule satisfies Jacobi only for orientations with ``eps(delta, .) == 1``
    on I'; :func:`jacobi_violations` exposes the failing triples.
    """

    def __init__(self, rs: RootSystem, eps: Orientation, mixed: str = "cocycle"):
        if rs.kind != "affine":
            raise InputError("affine cocycle algebras need an affine root system")
        if eps.graph != rs.graph:
            raise InputError("orientation lives on a different graph")
        if mixed not in ("cocycle", "plain"):
            raise InputError(f"unknown mixed-bracket convention {mixed!r}")
        self.rs, self.eps, self.mixed = rs, eps, mixed
        self.iprime = rs.graph.vertices[1:]

    def check_symbol(self, s: Symbol) -> None:
        if isinstance(s, RealRoot):
            if not (all(x >= 0 for x in s.root) and self.rs.is_real_root(s.root)):
                raise InputError(f"{s} is not a positive real root vector")
        elif isinstance(s, Imaginary):
            if s.k not in self.iprime:
                raise InputError(f"imaginary vector index {s.k} is not in I'")
        else:
            raise InputError(f"{s} is not a basis vector of the affine n^eps")

    def grading(self, s: Symbol) -> Root:
        if isinstance(s, RealRoot):
            return s.root
        return tuple(s.n * x for x in self.rs.delta)

    def imaginary_of(self, root_bar: Sequence[int], n: int) -> LieElement:
        """The element bar(alpha)(n) expanded in the basis h_k(n)."""
        return LieElement({Imaginary(k, n): c for k, c in zip(self.iprime, root_bar)})

    def _mixed(self, k: int, m: int, b: Root) -> LieElement:
        rs = self.rs
        c = rs.pairing(rs.simple_root(k), b)
        if self.mixed == "cocycle":
            c *= self.eps.epsilon(tuple(m * x for x in rs.delta), b)
        return LieElement({RealRoot(_add(b, tuple(m * x for x in rs.delta))): c})

    def bracket_symbols(self, a: Symbol, b: Symbol) -> LieElement:
        rs, eps = self.rs, self.eps
        if isinstance(a, RealRoot) and isinstance(b, RealRoot):
            s = _add(a.root, b.root)
            if rs.is_real_root(s):
                return LieElement({RealRoot(s): eps.epsilon(a.root, b.root)})
            n = rs.delta_multiple(s)
            if n:
                return eps.epsilon(a.root, b.root) * self.imaginary_of(rs.bar(a.root), n)
            return LieElement()
        if isinstance(a, Imaginary) and isinstance(b, RealRoot):
            return self._mixed(a.k, a.n, b.root)
        if isinstance(a, RealRoot) and isinstance(b, Imaginary):
            return -self._mixed(b.k, b.n, a.root)
        return LieElement()

    def basis_up_to(self, m: int) -> list[Symbol]:
        """Basis vectors of grading <= m*delta (finite roots on I' always included)."""
        out: list[Symbol] = [RealRoot(r) for r in self.rs.roots_up_to_degree(m, imaginary=False)]
        out += [Imaginary(k, n) for n in range(1, m + 1) for k in self.iprime]
        return out


def root_space_dimensions(alg: CocycleLieAlgebra, basis: Iterable[Symbol]) -> dict[Root, int]:
    out: dict[Root, int] = {}
    for s in basis:
        g = alg.grading(s)
        out[g] = out.get(g, 0) + 1
    return out


def serre_check(i: int, j: int, alg: CocycleLieAlgebra) -> bool:
    """(ad e_i)^(1 - i.j) e_j == 0 for vertices i != j."""
    if i == j:
        raise InputError("Serre relations need distinct vertices")
    rs = alg.rs
    power = 1 - rs.pairing(rs.simple_root(i), rs.simple_root(j))
    return not alg.ad_power(alg.simple(i), alg.simple(j), power)


def jacobi_violations(alg: CocycleLieAlgebra, basis: Sequence[Symbol], limit: int | None = None):
    """All basis triples (x, y, z) whose Jacobi sum is nonzero, as (x, y, z, sum)."""
    elems = [LieElement.basis(s) for s in basis]
    br = {}

    def b2(i, j):
        key = (i, j)
        if key not in br:
            br[key] = alg.bracket(elems[i], elems[j])
        return br[key]

    bad = []
    n = len(elems)
    for i, j, k in itertools.combinations(range(n), 3):
        total = (alg.bracket(b2(i, j), elems[k]) + alg.bracket(b2(j, k), elems[i])
                 + alg.bracket(b2(k, i), elems[j]))
        if total:
            bad.append((basis[i], basis[j], basis[k], total))
            if limit and len(bad) >= limit:
                break
    return bad


def antisymmetry_violations(alg: CocycleLieAlgebra, basis: Sequence[Symbol]):
    bad = []
    for a, b in itertools.combinations_with_replacement(basis, 2):
        x, y = LieElement.basis(a), LieElement.basis(b)
        if alg.bracket(x, y) + alg.bracket(y, x):
            bad.append((a, b))
    return bad


def presentation_roots(rs: RootSystem, presentation: Sequence[int]) -> list[Root]:
    """Simple roots for a sequence of vertex labels, checking every partial sum is a root."""
    if not presentation:
        raise InputError("empty presentation")
    roots = [rs.simple_root(k) for k in presentation]
    acc = (0,) * rs.rank
    for r in roots:
        acc = _add(acc, r)
        if not rs.is_root(acc):
            raise InputError(f"partial sum {encode_root(acc)} of the presentation is not a root")
    return roots


def epsilon_product(eps: Orientation, roots: Sequence[Root]) -> int:
    out = 1
    for i, j in itertools.combinations(range(len(roots)), 2):
        out *= eps.epsilon(roots[i], roots[j])
    return out


def iterated_root_vector(presentation: Sequence[int], eps: Orientation, rs: RootSystem) -> LieElement:
    """[...[e_{k1}, e_{k2}], ... e_{kh}] in n^eps."""
    roots = presentation_roots(rs, presentation)
    alg = FiniteLieAlgebra(rs, eps, positive_only=True)
    x = alg.e(roots[0])
    for r in roots[1:]:
        x = alg.bracket(x, alg.e(r))
    return x


def ehat(k: int, m: int, eps: Orientation, rs: RootSystem, mixed: str = "cocycle") -> LieElement:
    """eps(a_k, m delta - a_k) [e_{a_k}, e_{m delta - a_k}]."""
    if rs.kind != "affine":
        raise InputError("ehat needs an affine root system")
    if k == rs.graph.extending_vertex:
        raise InputError("k must not be the extending vertex")
    if m < 1:
        raise InputError("m must be positive")
    alg = AffineLieAlgebra(rs, eps, mixed)
    a = rs.simple_root(k)
    b = tuple(m * d - x for d, x in zip(rs.delta, a))
    return eps.epsilon(a, b) * alg.bracket(alg.e(a), alg.e(b))


def _echelon_insert(basis: list[tuple[Symbol, LieElement]], x: LieElement) -> bool:
    """Reduce x against an echelon basis (pivot symbol, element); insert if independent."""
    for piv, b in basis:
        c = x.coefficient(piv)
        if c:
            x = x - c * b
    if not x:
        return False
    piv = min(x.terms, key=_sym_key)
    x = (1 / x.terms[piv]) * x
    for i, (p, b) in enumerate(basis):
        c = b.coefficient(piv)
        if c:
            basis[i] = (p, b - c * x)
    basis.append((piv, x))
    return True


def generated_root_space_dimensions(alg: CocycleLieAlgebra, box: Sequence[int]) -> dict[Root, int]:
    """Graded dimensions of the subalgebra generated by the simple root vectors, in gradings <= box.

    Degree by degree, the space in grading g is spanned by [e_i, y] with y in grading g - alpha_i.
    """
    rs = alg.rs
    box = tuple(box)
    simples = [(r, alg.e(r)) for r in rs.simple_roots if leq(r, box)]
    spaces: dict[Root, list[tuple[Symbol, LieElement]]] = {}
    for r, e in simples:
        spaces[r] = [(RealRoot(r), e)]
    frontier = sorted(spaces, key=root_key)
    while frontier:
        nxt = set()
        for g in frontier:
            for r, e in simples:
                h = _add(g, r)
                if not leq(h, box):
                    continue
                for _, y in spaces[g]:
                    z = alg.bracket(e, y)
                    if z:
                        if _echelon_insert(spaces.setdefault(h, []), z):
                            nxt.add(h)
        frontier = sorted(nxt, key=root_key)
    return {g: len(b) for g, b in spaces.items() if b}
