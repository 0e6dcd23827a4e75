"""Degenerate Hall algebra of an oriented Dynkin quiver.

Structure constants are Hall polynomials ``F^M_{N,P}(q)``, the number of
subrepresentations ``U`` of ``M`` with ``U ~ P`` and ``M/U ~ N``, evaluated at
``q = 1``.  The first factor of a product is the quotient type:

    [N] * [P] = sum_M F^M_{N,P}(1) [M].

Counts at a given ``q`` come from one of two independent routes:

* exhaustive enumeration of graded subspaces of ``M``;
* Riedtmann's formula ``|Ext^1(N,P)_M| |Aut M| / (|Aut N| |Aut P| q^hom(N,P))``,
  with the extension classes enumerated explicitly.

Polynomials are interpolated from ``D + 1`` prime powers and checked at one more.
"""

from __future__ import annotations

import hashlib
import logging
import os
import warnings
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
import sympy
from filelock import FileLock

from .cartan import Root, RootPartition, encode_root, decode_root, root_key, root_partitions, root_system
from .cocycle import Orientation
from .errors import InputError, InternalError, ResourceError
from .fields import gaussian_binomial, prime_powers
from .lie import epsilon_product, presentation_roots
from .reps import DEFAULT_BOUNDS, Bounds, FqRep, RepCatalog, _seed, catalog, ext_dim, extensions, hom_dim

log = logging.getLogger(__name__)

CACHE_VERSION = "qlie-hall-cache 1"
CACHE_FILE = "hall_polynomials.tab"


@dataclass(frozen=True)
class IsoClass:
    orientation: Orientation
    label: RootPartition

    @property
    def dim(self) -> Root:
        return self.label.total


def _label(x, rank: int) -> RootPartition:
    if isinstance(x, IsoClass):
        return x.label
    if isinstance(x, RootPartition):
        return x
    if isinstance(x, str):
        return RootPartition.from_key(x, rank)
    return RootPartition.of(x, rank)


def _partition_sort(p: RootPartition):
    return (root_key(p.total), len(p.parts), tuple(root_key(r) for r in p.parts))


class HallElement:
    """Integer combination of iso-classes for one orientation."""

    __slots__ = ("orientation", "terms")

    def __init__(self, orientation: Orientation, terms: Mapping[RootPartition, int] | None = None):
        self.orientation = orientation
        self.terms: dict[RootPartition, int] = {k: int(v) for k, v in (terms or {}).items() if v}

    def _same(self, other: "HallElement"):
        if other.orientation != self.orientation:
            raise InputError("Hall elements live on different orientations")

    def __add__(self, other: "HallElement") -> "HallElement":
        self._same(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return HallElement(self.orientation, t)

    def __neg__(self):
        return HallElement(self.orientation, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, c: int):
        return HallElement(self.orientation, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HallElement):
            return product(self, other)
        return self.__rmul__(other)

    def __eq__(self, other):
        return (isinstance(other, HallElement) and self.orientation == other.orientation
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def classes(self) -> list[IsoClass]:
        return [IsoClass(self.orientation, k) for k in sorted(self.terms, key=_partition_sort)]

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for i, k in enumerate(sorted(self.terms, key=_partition_sort)):
            v = self.terms[k]
            body = f"{abs(v)}*[{k.key()}]"
            parts.append(("-" if v < 0 else "") + body if i == 0 else (" - " if v < 0 else " + ") + body)
        return "".join(parts)

    __repr__ = __str__


@dataclass(frozen=True)
class HallPolynomial:
    M: RootPartition
    N: RootPartition
    P: RootPartition
    coeffs: tuple[int, ...]  # constant term first
    samples: tuple[tuple[int, int], ...] = ()

    def __call__(self, q) -> int:
        return sum(c * q**i for i, c in enumerate(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if any(self.coeffs) else -1


# ---------------------------------------------------------------- disk cache
def _enc_partition(p: RootPartition) -> str:
    return "/".join(encode_root(r) for r in p.parts) if p.parts else "()"


def _dec_partition(s: str, rank: int) -> RootPartition:
    if s == "()":
        return RootPartition.of([], rank)
    return RootPartition.of([decode_root(x, rank) for x in s.split("/")], rank)


def _checksum(body: str) -> str:
    return hashlib.sha256(body.encode()).hexdigest()[:16]


class CacheWarning(UserWarning):
    pass


class HallCache:
    """Append-only text cache of Hall polynomials; one checksummed record per line."""

    def __init__(self, directory: str | os.PathLike | None):
        self.directory = Path(directory) if directory else None
        self._mem: dict[tuple, tuple[int, ...]] = {}
        self._loaded = False

    @property
    def path(self) -> Path | None:
        return self.directory / CACHE_FILE if self.directory else None

    def _load(self):
        if self._loaded:
            return
        self._loaded = True
        if self.path is None or not self.path.exists():
            return
        for lineno, line, problem in scan_cache_file(self.path):
            if problem:
                msg = f"corrupt Hall cache record at {self.path}:{lineno} ({problem}); it will be recounted"
                warnings.warn(msg, CacheWarning, stacklevel=3)
                log.warning(msg)
                continue
            if line is None:
                continue
            f = line.split(";")
            self._mem[tuple(f[:5])] = tuple(int(c) for c in f[5].split(","))

    def get(self, key: tuple[str, ...]) -> tuple[int, ...] | None:
        self._load()
        return self._mem.get(key)

    def put(self, key: tuple[str, ...], coeffs: Sequence[int]) -> None:
        self._load()
        coeffs = tuple(int(c) for c in coeffs)
        self._mem[key] = coeffs
        if self.path is None:
            return
        self.directory.mkdir(parents=True, exist_ok=True)
        body = ";".join(key) + ";" + ",".join(map(str, coeffs))
        with FileLock(str(self.path) + ".lock"):
            fresh = not self.path.exists() or self.path.stat().st_size == 0
            with open(self.path, "a", encoding="utf-8") as fh:
                if fresh:
                    fh.write(f"# {CACHE_VERSION}\n")
                fh.write(f"{body};{_checksum(body)}\n")


def scan_cache_file(path: str | os.PathLike):
    """Yield ``(lineno, record_or_None, problem_or_None)`` for every line of a cache file."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    for i, line in enumerate(lines, 1):
        if i == 1:
            if line.strip() != f"# {CACHE_VERSION}":
                yield i, None, f"unsupported header {line!r}"
            else:
                yield i, None, None
            continue
        if not line.strip():
            continue
        f = line.split(";")
        if len(f) != 7:
            yield i, None, "wrong field count"
            continue
        body = ";".join(f[:6])
        if _checksum(body) != f[6]:
            yield i, None, "checksum mismatch"
            continue
        try:
            [int(c) for c in f[5].split(",")]
        except ValueError:
            yield i, None, "non-integer coefficient"
            continue
        yield i, body, None


def validate_cache_file(path: str | os.PathLike) -> list[tuple[int, str]]:
    """Itemized problems of a cache file (empty list means clean)."""
    return [(i, p) for i, _, p in scan_cache_file(path) if p]


_CACHES: dict[str, HallCache] = {}


def default_cache_dir() -> str | None:
    env = os.environ.get("QLIE_CACHE")
    if env is not None:
        return None if env.lower() in ("", "off", "none") else env
    return str(Path.home() / ".cache" / "qlie")


def get_cache() -> HallCache:
    d = default_cache_dir() or ""
    if d not in _CACHES:
        _CACHES[d] = HallCache(d or None)
    return _CACHES[d]


# ---------------------------------------------------------------- counting
def _check_bounds(d: Sequence[int], q: int | None = None, bounds: Bounds = DEFAULT_BOUNDS):
    if sum(d) > bounds.max_total_dim:
        raise ResourceError(f"total dimension {sum(d)} exceeds the bound {bounds.max_total_dim}")
    if q is not None and q > bounds.max_q:
        raise ResourceError(f"q={q} exceeds the bound {bounds.max_q}")


def enumerate_reps(orientation: Orientation, d: Sequence[int], q: int) -> list[tuple[IsoClass, FqRep]]:
    cat = catalog(orientation, q)
    return [(IsoClass(orientation, lab), x) for lab, x in cat.enumerate(tuple(d))]


def identify_class(x: FqRep, orientation: Orientation) -> IsoClass:
    if x.arrows != orientation.arrows:
        raise InputError("representation arrows do not match the orientation")
    _check_bounds(x.dims, x.q)
    return IsoClass(orientation, catalog(orientation, x.q).identify(x))


_EXH: dict[tuple, dict] = {}
_RIED: dict[tuple, dict] = {}


def exhaustive_counts(cat: RepCatalog, M: RootPartition, a: Root) -> dict[tuple[RootPartition, RootPartition], int]:
    """{(quotient label, sub label): number of stable subspaces of dimension a} for the class M."""
    key = (cat.orientation, cat.q, M, a)
    if key not in _EXH:
        x = cat.representative(M)
        out: dict = {}
        for bases, piv in x.stable_subspaces(a):
            sub, quo = x.sub_and_quotient(bases, piv)
            k = (cat.identify(quo), cat.identify(sub))
            out[k] = out.get(k, 0) + 1
        _EXH[key] = out
    return _EXH[key]


def riedtmann_counts(cat: RepCatalog, N: RootPartition, P: RootPartition) -> dict[RootPartition, int]:
    """{M: F^M_{N,P}(q)} from extension classes and automorphism groups."""
    key = (cat.orientation, cat.q, N, P)
    if key not in _RIED:
        xn, xp = cat.representative(N), cat.representative(P)
        ext: dict[RootPartition, int] = {}
        for e in extensions(xn, xp):
            lab = cat.identify(e)
            ext[lab] = ext.get(lab, 0) + 1
        h = hom_dim(xn, xp)
        out = {}
        for M, n in ext.items():
            num = n * cat.aut_order(M)
            den = cat.aut_order(N) * cat.aut_order(P) * cat.q**h
            if num % den:
                raise InternalError(f"non-integral Riedtmann count for {M} <- {N}, {P}")
            out[M] = num // den
        _RIED[key] = out
    return _RIED[key]


def _route_costs(cat: RepCatalog, N: RootPartition, P: RootPartition) -> tuple[int, int]:
    d = tuple(x + y for x, y in zip(N.total, P.total))
    a = P.total
    sub = 1
    for di, ai in zip(d, a):
        sub *= gaussian_binomial(di, ai, cat.q)
    exh = sub * len(root_partitions(d, cat.rs))
    ried = 8 * cat.q ** ext_dim(cat.representative(N), cat.representative(P))
    return exh, ried


def counts_for(orientation: Orientation, N, P, q: int, route: str = "auto") -> dict[RootPartition, int]:
    """All nonzero F^M_{N,P}(q), keyed by M."""
    rank = orientation.graph.rank
    N, P = _label(N, rank), _label(P, rank)
    d = tuple(x + y for x, y in zip(N.total, P.total))
    _check_bounds(d, q)
    cat = catalog(orientation, q)
    if route == "auto":
        exh, ried = _route_costs(cat, N, P)
        route = "riedtmann" if ried < exh else "exhaustive"
    if route == "riedtmann":
        return dict(riedtmann_counts(cat, N, P))
    if route != "exhaustive":
        raise InputError(f"unknown counting route {route!r}")
    out = {}
    for M in root_partitions(d, cat.rs):
        c = exhaustive_counts(cat, M, P.total).get((N, P), 0)
        if c:
            out[M] = c
    return out


def hall_number(M, N, P, q: int, orientation: Orientation | None = None, route: str = "auto") -> int:
    """Number of subrepresentations W of M with W ~ P and M/W ~ N over GF(q)."""
    if orientation is None:
        orientation = next((c.orientation for c in (M, N, P) if isinstance(c, IsoClass)), None)
        if orientation is None:
            raise InputError("an orientation is required")
    rank = orientation.graph.rank
    M, N, P = (_label(x, rank) for x in (M, N, P))
    if tuple(x + y for x, y in zip(N.total, P.total)) != M.total:
        raise InputError("dim N + dim P must equal dim M")
    return counts_for(orientation, N, P, q, route).get(M, 0)


def degree_bound(d: Sequence[int], a: Sequence[int]) -> int:
    return sum(x * (y - x) for x, y in zip(a, d))


def sample_points(D: int) -> tuple[list[int], int]:
    it = prime_powers(2)
    pts = [next(it) for _ in range(D + 1)]
    return pts, next(it)


def _interpolate(points: Sequence[tuple[int, int]]) -> tuple[int, ...]:
    x = sympy.Symbol("q")
    poly = sympy.Poly(sympy.interpolate(list(points), x), x) if len(points) > 1 else sympy.Poly(points[0][1], x)
    coeffs = [sympy.Rational(c) for c in reversed(poly.all_coeffs())]
    if any(c.q != 1 for c in coeffs):
        raise InternalError("Hall polynomial with non-integral coefficients")
    out = [int(c) for c in coeffs]
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return tuple(out)


def _cache_key(orientation: Orientation, M, N, P) -> tuple[str, ...]:
    return (orientation.graph.label, str(orientation), _enc_partition(M), _enc_partition(N), _enc_partition(P))


def hall_polynomials(orientation: Orientation, N, P, use_cache: bool = True) -> dict[RootPartition, HallPolynomial]:
    """Hall polynomials F^M_{N,P} for every class M of dimension dim N + dim P (zeros omitted)."""
    rank = orientation.graph.rank
    N, P = _label(N, rank), _label(P, rank)
    d = tuple(x + y for x, y in zip(N.total, P.total))
    _check_bounds(d)
    Ms = root_partitions(d, root_system(orientation.graph))
    cache = get_cache() if use_cache else None
    out: dict[RootPartition, HallPolynomial] = {}
    missing = []
    for M in Ms:
        hit = cache.get(_cache_key(orientation, M, N, P)) if cache else None
        if hit is None:
            missing.append(M)
        elif any(hit):
            out[M] = HallPolynomial(M, N, P, hit)
    if not missing:
        return out
    D = degree_bound(d, P.total)
    pts, control = sample_points(D)
    table = {q: counts_for(orientation, N, P, q) for q in pts + [control]}
    for M in missing:
        samples = tuple((q, table[q].get(M, 0)) for q in pts)
        coeffs = _interpolate(samples)
        poly = HallPolynomial(M, N, P, coeffs, samples + ((control, table[control].get(M, 0)),))
        if poly(control) != table[control].get(M, 0):
            raise InternalError(f"Hall polynomial for {M} <- {N}, {P} fails its control point")
        if cache:
            cache.put(_cache_key(orientation, M, N, P), coeffs)
        if any(coeffs):
            out[M] = poly
    return out


def hall_polynomial(M, N, P, orientation: Orientation | None = None) -> HallPolynomial:
    if orientation is None:
        orientation = next((c.orientation for c in (M, N, P) if isinstance(c, IsoClass)), None)
        if orientation is None:
            raise InputError("an orientation is required")
    rank = orientation.graph.rank
    M, N, P = (_label(x, rank) for x in (M, N, P))
    if tuple(x + y for x, y in zip(N.total, P.total)) != M.total:
        return HallPolynomial(M, N, P, (0,))
    return hall_polynomials(orientation, N, P).get(M, HallPolynomial(M, N, P, (0,)))


# ---------------------------------------------------------------- algebra
def unit(orientation: Orientation) -> HallElement:
    return HallElement(orientation, {RootPartition.of([], orientation.graph.rank): 1})


def product(f: HallElement, g: HallElement) -> HallElement:
    f._same(g)
    acc: dict[RootPartition, int] = {}
    for N, a in f.terms.items():
        for P, b in g.terms.items():
            for M, poly in hall_polynomials(f.orientation, N, P).items():
                acc[M] = acc.get(M, 0) + a * b * poly(1)
    return HallElement(f.orientation, acc)


def commutator(f: HallElement, g: HallElement) -> HallElement:
    return product(f, g) - product(g, f)


def E_alpha(alpha: Sequence[int], orientation: Orientation) -> HallElement:
    rs = root_system(orientation.graph)
    alpha = tuple(alpha)
    if not rs.is_positive_root(alpha):
        raise InputError(f"{encode_root(alpha)} is not a positive root")
    return HallElement(orientation, {RootPartition.of([alpha]): 1})


def S(vertex: int, orientation: Orientation) -> HallElement:
    return E_alpha(root_system(orientation.graph).simple_root(vertex), orientation)


@dataclass
class BracketReport:
    alpha: Root
    beta: Root
    epsilon: int
    lhs: HallElement
    rhs: HallElement
    ok: bool = dc_field(init=False)

    def __post_init__(self):
        self.ok = self.lhs == self.rhs

    def __bool__(self):
        return self.ok

    def diff(self) -> str:
        return str(self.lhs - self.rhs)


def verify_bracket_E(alpha, beta, orientation: Orientation) -> BracketReport:
    """E_a * E_b - E_b * E_a == eps(a, b) E_{a+b} (or 0 when a + b is not a root)."""
    rs = root_system(orientation.graph)
    alpha, beta = tuple(alpha), tuple(beta)
    ea, eb = E_alpha(alpha, orientation), E_alpha(beta, orientation)
    lhs = commutator(ea, eb)
    s = tuple(x + y for x, y in zip(alpha, beta))
    eps = orientation.epsilon(alpha, beta)
    rhs = eps * E_alpha(s, orientation) if rs.is_positive_root(s) else HallElement(orientation)
    return BracketReport(alpha, beta, eps, lhs, rhs)


def iterated_bracket_value(presentation: Sequence[int], orientation: Orientation) -> HallElement:
    """[...[S_k1, S_k2], ..., S_kh] in the degenerate Hall algebra; checked against the eps product."""
    rs = root_system(orientation.graph)
    roots = presentation_roots(rs, presentation)
    x = E_alpha(roots[0], orientation)
    for r in roots[1:]:
        x = commutator(x, E_alpha(r, orientation))
    total = tuple(map(sum, zip(*roots)))
    expected = epsilon_product(orientation, roots) * E_alpha(total, orientation)
    if x != expected:
        raise InternalError(f"iterated bracket {x} differs from {expected}")
    return x


def serre_element(i: int, j: int, orientation: Orientation) -> HallElement:
    """S_i^2 S_j - 2 S_i S_j S_i + S_j S_i^2 (zero for adjacent i, j)."""
    si, sj = S(i, orientation), S(j, orientation)
    sii = product(si, si)
    return product(sii, sj) - 2 * product(product(si, sj), si) + product(sj, sii)


# ---------------------------------------------------------------- generic labels
GENERIC_QS = (101, 103)
GENERIC_SAMPLES = 16
_GENERIC_BOUNDS = Bounds(max_total_dim=DEFAULT_BOUNDS.max_total_dim, max_q=128)
_GENERIC_CATS: dict[tuple, RepCatalog] = {}
_GENERIC: dict[tuple, RootPartition] = {}


def _generic_catalog(orientation: Orientation, q: int) -> RepCatalog:
    key = (orientation, q)
    if key not in _GENERIC_CATS:
        _GENERIC_CATS[key] = RepCatalog(orientation, q, bounds=_GENERIC_BOUNDS)
    return _GENERIC_CATS[key]


def generic_label(d: Sequence[int], active_arrows: Iterable[int], reference: Orientation,
                  rounds: int = 4) -> RootPartition:
    """Label of a generic representation of ``reference`` supported on the given edge indices.

    Hom from a fixed module is upper semicontinuous, so the generic class has the
    componentwise smallest Hom fingerprint among all samples.
    """
    d = tuple(d)
    rs = root_system(reference.graph)
    if len(d) != rs.rank or any(x < 0 for x in d):
        raise InputError(f"bad dimension vector {d}")
    _check_bounds(d)
    active = frozenset(e for e in active_arrows
                       if d[reference.arrows[e][0]] and d[reference.arrows[e][1]])
    key = (reference, d, active)
    if key in _GENERIC:
        return _GENERIC[key]
    labels = []
    for q in GENERIC_QS:
        cat = _generic_catalog(reference, q)
        rng = np.random.default_rng(_seed("generic", str(reference), d, sorted(active), q))
        found = None
        fps: list[tuple] = []
        for _ in range(rounds):
            samples = [cat.random_rep(d, rng, active) for _ in range(GENERIC_SAMPLES)]
            fps += [(cat.fingerprint(x), x) for x in samples]
            low = tuple(map(min, zip(*(fp for fp, _ in fps)))) if fps[0][0] else ()
            hit = next((x for fp, x in fps if fp == low), None)
            if hit is not None:
                found = cat.identify(hit)
                break
        if found is None:
            raise InternalError(f"generic label of {d} inconclusive over GF({q})")
        labels.append(found)
    if len(set(labels)) != 1:
        raise InternalError(f"generic labels disagree across fields: {labels}")
    _GENERIC[key] = labels[0]
    return labels[0]


def orientation_label(d: Sequence[int], orientation: Orientation, reference: Orientation) -> RootPartition:
    """Label of the orientation component of ``orientation`` in the ``reference`` indexing."""
    return generic_label(d, reference.agreeing_edges(orientation), reference)
