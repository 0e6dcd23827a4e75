"""Coefficients of the root vectors E*_alpha in the semicanonical basis.

Irreducible components of the nilpotent variety of dimension alpha are indexed by
root partitions of alpha (through a fixed indexing orientation).  Three sources
of coefficients are combined into a :class:`CoefficientTable`:

* orientation components, from the cocycle product over a presentation;
* type A, from the sign character of the Jordan type of each component;
* stored reference values for the maximal roots of D4 and D5.

Everything is canonical only up to one global sign per root.  Tables are
normalised so the component of the indexing orientation itself (label
``{alpha}``) has coefficient +1.
"""

from __future__ import annotations

import hashlib
import itertools
import re
from dataclasses import dataclass, field as dc_field
from importlib import resources
from typing import Sequence

import sympy

from .cartan import Root, RootPartition, RootSystem, build_graph, decode_root, encode_root, root_partitions, root_system
from .cocycle import Orientation, all_orientations, reference_orientation
from .errors import InputError, InternalError
from .hall import generic_label
from .lie import RealRoot, LieElement, build_full_g, epsilon_product, presentation_roots

COMPUTED_ORIENTATION = "computed-orientation"
COMPUTED_AN = "computed-An"
STORED = "stored-reference"
UNKNOWN = "unknown"
PROVENANCES = (COMPUTED_ORIENTATION, COMPUTED_AN, STORED, UNKNOWN)

TABLE_VERSION = "qlie-reference-table 1"
CASES = {"D4-thetamax": "d4_thetamax.tab", "D5-thetamax": "d5_thetamax.tab"}


# ---------------------------------------------------------------- orientation part
def c_orientation(presentation: Sequence[int], orientation: Orientation) -> int:
    """prod_{i<j} eps(alpha_{k_i}, alpha_{k_j}) for a valid presentation."""
    rs = root_system(orientation.graph)
    return epsilon_product(orientation, presentation_roots(rs, presentation))


def presentations(alpha: Sequence[int], rs: RootSystem) -> list[tuple[int, ...]]:
    """All sequences of vertices whose partial sums are roots and whose total is alpha."""
    alpha = tuple(alpha)
    verts = rs.graph.vertices
    out = []

    def rec(acc, seq):
        if acc == alpha:
            out.append(tuple(seq))
            return
        for i, v in enumerate(verts):
            if acc[i] < alpha[i]:
                nxt = acc[:i] + (acc[i] + 1,) + acc[i + 1:]
                if rs.is_root(nxt):
                    rec(nxt, seq + [v])

    if not rs.is_positive_root(alpha):
        raise InputError(f"{encode_root(alpha)} is not a positive root")
    rec((0,) * rs.rank, [])
    return out


def default_presentation(alpha: Sequence[int], rs: RootSystem) -> tuple[int, ...]:
    """Greedy presentation: always add the lowest-indexed admissible vertex."""
    alpha = tuple(alpha)
    acc, seq = (0,) * rs.rank, []
    while acc != alpha:
        for i, v in enumerate(rs.graph.vertices):
            if acc[i] < alpha[i]:
                nxt = acc[:i] + (acc[i] + 1,) + acc[i + 1:]
                if rs.is_root(nxt):
                    acc, seq = nxt, seq + [v]
                    break
        else:
            raise InputError(f"{encode_root(alpha)} is not a positive root")
    return tuple(seq)


@dataclass
class OrientationVector:
    alpha: Root
    presentation: tuple[int, ...]
    reference: Orientation
    by_orientation: dict[Orientation, int]
    labels: dict[Orientation, RootPartition]

    @property
    def by_label(self) -> dict[RootPartition, int]:
        out: dict[RootPartition, int] = {}
        for o, c in self.by_orientation.items():
            lab = self.labels[o]
            if out.setdefault(lab, c) != c:
                raise InternalError(f"orientations with label {lab} carry different signs")
        return out


def orientation_component_vector(alpha: Sequence[int], presentation: Sequence[int] | None,
                                 type_label: str, reference: Orientation | None = None) -> OrientationVector:
    rs = root_system(type_label)
    alpha = tuple(alpha)
    pres = tuple(presentation) if presentation else default_presentation(alpha, rs)
    roots = presentation_roots(rs, pres)
    if tuple(map(sum, zip(*roots))) != alpha:
        raise InputError("presentation does not sum to alpha")
    ref = reference or reference_orientation(type_label)
    by_o, labels = {}, {}
    for o in all_orientations(type_label):
        by_o[o] = epsilon_product(o, roots)
        labels[o] = generic_label(alpha, ref.agreeing_edges(o), ref)
    vec = OrientationVector(alpha, pres, ref, by_o, labels)
    vec.by_label  # noqa: B018  (raises on inconsistent signs)
    return vec


def normalized(entries: dict[RootPartition, int], alpha: Root) -> dict[RootPartition, int]:
    """Scale by the sign making the entry on {alpha} positive (no-op when absent)."""
    top = entries.get(RootPartition.of([alpha]))
    if top is None or top > 0:
        return dict(entries)
    return {k: -v for k, v in entries.items()}


def same_up_to_sign(a: dict, b: dict) -> int | None:
    """+1 or -1 if b == sign * a entrywise (same keys), else None."""
    if set(a) != set(b):
        return None
    for s in (1, -1):
        if all(b[k] == s * v for k, v in a.items()):
            return s
    return None


# ---------------------------------------------------------------- type A
def _interval(root: Sequence[int]) -> tuple[int, int]:
    idx = [i for i, x in enumerate(root) if x]
    if not idx or any(x not in (0, 1) for x in root) or idx != list(range(idx[0], idx[-1] + 1)):
        raise InternalError(f"{encode_root(root)} is not an interval root")
    return idx[0], idx[-1]


def _jordan_from_matrix(m: sympy.Matrix) -> tuple[int, ...]:
    n = m.shape[0]
    ranks = [n]
    p = sympy.eye(n)
    while ranks[-1]:
        p = p * m
        ranks.append(p.rank())
        if len(ranks) > n + 1:
            raise InputError("matrix is not nilpotent")
    ge = [ranks[k - 1] - ranks[k] for k in range(1, len(ranks))]  # blocks of size >= k
    sizes = []
    for k in range(len(ge)):
        exact = ge[k] - (ge[k + 1] if k + 1 < len(ge) else 0)
        sizes += [k + 1] * exact
    return tuple(sorted(sizes, reverse=True))


def jordan_type_An(partition: RootPartition, n: int) -> tuple[int, ...]:
    """Jordan type of sum over parts [i..j] of E_{i, j+1} in gl_{n+1}."""
    m = sympy.zeros(n + 1, n + 1)
    for part in partition.parts:
        if len(part) != n:
            raise InputError("partition rank does not match n")
        i, j = _interval(part)
        m[i, j + 1] += 1
    return _jordan_from_matrix(m)


def sign_character(lam: Sequence[int]) -> int:
    """Sign of a permutation of cycle type lam."""
    return -1 if (sum(lam) - len(lam)) % 2 else 1


def c_An(alpha: Sequence[int], Y: RootPartition, normalize: str = "reference") -> int:
    """Sign-character coefficient; ``normalize="reference"`` makes the entry on {alpha} equal +1."""
    alpha = tuple(alpha)
    if Y.total != alpha:
        raise InputError("Y is not a partition of alpha")
    n = len(alpha)
    raw = sign_character(jordan_type_An(Y, n))
    if normalize == "none":
        return raw
    if normalize != "reference":
        raise InputError(f"unknown normalization {normalize!r}")
    return raw * sign_character(jordan_type_An(RootPartition.of([alpha]), n))


@dataclass
class CrossCheckRow:
    alpha: Root
    sign: int | None
    mismatches: list[str]


@dataclass
class CrossCheckReport:
    n: int
    rows: list[CrossCheckRow] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.sign is not None for r in self.rows)


def cross_check_An(n: int, reference: Orientation | None = None) -> CrossCheckReport:
    """Orientation-product vector vs. sign-character vector, per root, up to one global sign."""
    if not 1 <= n <= 8:
        raise InputError("n out of range")
    label = f"A{n}"
    rs = root_system(label)
    rep = CrossCheckReport(n)
    for alpha in rs.positive_roots:
        vec = orientation_component_vector(alpha, None, label, reference).by_label
        jordan = {Y: c_An(alpha, Y, "none") for Y in root_partitions(alpha, rs)}
        s = same_up_to_sign(jordan, vec)
        bad = [] if s else [f"{Y.key()}: orientation {vec.get(Y)} vs sign character {c}"
                            for Y, c in jordan.items() if vec.get(Y) not in (c, -c)]
        if s is None and not bad:
            bad = ["entries agree individually but not with one global sign"]
        rep.rows.append(CrossCheckRow(alpha, s, bad))
    return rep


# ---------------------------------------------------------------- ad-Jordan fingerprint
def ad_jordan_type(Y: RootPartition, type_label: str, orientation: Orientation | None = None) -> tuple[int, ...]:
    """Jordan type of ad(sum of e_beta over the parts of Y) on the full cocycle algebra."""
    rs = root_system(type_label)
    eps = orientation or reference_orientation(type_label)
    g = build_full_g(rs, eps)
    x = LieElement({RealRoot(b): c for b, c in Y.multiplicities().items()})
    m = g.ad_matrix(x)
    return _jordan_from_matrix(sympy.Matrix(m.tolist()))


# ---------------------------------------------------------------- tables
@dataclass
class CoefficientTable:
    type: str
    root: Root
    reference: Orientation
    entries: dict[RootPartition, int | None] = dc_field(default_factory=dict)
    provenance: dict[RootPartition, str] = dc_field(default_factory=dict)
    notes: dict[RootPartition, str] = dc_field(default_factory=dict)
    checksum_ok: bool | None = None
    source: str | None = None
    up_to_global_sign: bool = dc_field(default=True, init=False)

    def set(self, key: RootPartition, value: int | None, provenance: str, note: str = "") -> None:
        if provenance not in PROVENANCES:
            raise InputError(f"unknown provenance {provenance!r}")
        self.entries[key] = value
        self.provenance[key] = provenance
        if note:
            self.notes[key] = note

    def keys_with(self, provenance: str) -> list[RootPartition]:
        return [k for k, p in self.provenance.items() if p == provenance]

    def sorted_keys(self) -> list[RootPartition]:
        return sorted(self.entries, key=lambda p: (len(p.parts), p.key()))

    @property
    def complete(self) -> bool:
        return all(v is not None for v in self.entries.values())

    def as_dict(self) -> dict:
        return {
            "type": self.type,
            "root": encode_root(self.root),
            "reference_orientation": str(self.reference),
            "up_to_global_sign": True,
            "complete": self.complete,
            "entries": [{"partition": k.key(), "value": self.entries[k], "provenance": self.provenance[k]}
                        for k in self.sorted_keys()],
        }


def table_checksum(entry_lines: Sequence[str]) -> str:
    return hashlib.sha256("\n".join(entry_lines).encode()).hexdigest()


_LINE = re.compile(r"^\s*(\S+)\s*=\s*([+-]?\d+)\s*#\s*(\S+)\s*(.*)$")


def parse_table_text(text: str) -> CoefficientTable:
    header: dict[str, str] = {}
    body: list[str] = []
    lines = text.splitlines()
    if not lines or lines[0].strip() != f"# {TABLE_VERSION}":
        raise InputError("missing or unsupported table version line")
    for line in lines[1:]:
        if not line.strip():
            continue
        m = re.match(r"^#\s*([\w-]+):\s*(.*)$", line)
        if m and not body:
            header[m.group(1)] = m.group(2).strip()
        elif line.lstrip().startswith("#"):
            continue
        else:
            body.append(line.rstrip())
    try:
        type_label, root = header["type"], header["root"]
        graph = build_graph(type_label)
        ref = Orientation.parse(graph, header["reference-orientation"])
    except KeyError as e:
        raise InputError(f"table header lacks {e}") from None
    t = CoefficientTable(type_label, decode_root(root, graph.rank), ref)
    t.checksum_ok = header.get("sha256") == table_checksum(body)
    for line in body:
        m = _LINE.match(line)
        if not m:
            raise InputError(f"malformed table line {line!r}")
        key, val, prov, note = m.groups()
        try:
            part = RootPartition.from_key(key, graph.rank)
        except Exception:
            raise InputError(f"malformed partition key {key!r}") from None
        if part in t.entries:
            raise InputError(f"duplicate key {key}")
        t.set(part, int(val), prov, note.strip())
    return t


def format_table_text(t: CoefficientTable, stored_only: bool = True) -> str:
    body = []
    for k in t.sorted_keys():
        if stored_only and t.provenance[k] != STORED:
            continue
        note = f" {t.notes[k]}" if k in t.notes else ""
        body.append(f"{k.key()} = {t.entries[k]:+d} # {t.provenance[k]}{note}")
    head = [f"# {TABLE_VERSION}", f"# type: {t.type}", f"# root: {encode_root(t.root)}",
            f"# reference-orientation: {t.reference}", f"# sha256: {table_checksum(body)}"]
    return "\n".join(head + body) + "\n"


def read_case_text(case: str) -> str:
    if case not in CASES:
        raise InputError(f"unknown reference table {case!r}; choose from {sorted(CASES)}")
    return resources.files("qlie.data").joinpath(CASES[case]).read_text(encoding="utf-8")


def complete_table(t: CoefficientTable, presentation: Sequence[int] | None = None,
                   normalize: str = "reference") -> CoefficientTable:
    """Add the orientation part and mark every remaining partition unknown."""
    vec = orientation_component_vector(t.root, presentation, t.type, t.reference)
    part = vec.by_label
    if normalize == "reference":
        part = normalized(part, t.root)
    elif normalize != "none":
        raise InputError(f"unknown normalization {normalize!r}")
    for k, v in part.items():
        if k in t.entries and t.provenance[k] == STORED:
            continue  # left for validate_table to flag
        t.set(k, v, COMPUTED_ORIENTATION)
    for k in root_partitions(t.root, root_system(t.type)):
        if k not in t.entries:
            t.set(k, None, UNKNOWN)
    return t


def load_reference_table(case: str, text: str | None = None, normalize: str = "reference") -> CoefficientTable:
    t = parse_table_text(text if text is not None else read_case_text(case))
    t.source = case
    return complete_table(t, normalize=normalize)


# ---------------------------------------------------------------- validation
@dataclass
class ValidationReport:
    name: str
    checks: list[tuple[str, bool, str]] = dc_field(default_factory=list)

    def add(self, check: str, ok: bool, detail: str = "") -> None:
        self.checks.append((check, bool(ok), detail))

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def lines(self) -> list[str]:
        return [f"{self.name};{c};{'pass' if ok else 'fail'};{d}" for c, ok, d in self.checks]


def _graph_automorphisms(type_label: str) -> list[tuple[int, ...]]:
    """Vertex-index permutations preserving the edge multiset."""
    g = build_graph(type_label)
    edges = sorted(tuple(sorted(e)) for e in g.edges)
    out = []
    for perm in itertools.permutations(range(g.rank)):
        if sorted(tuple(sorted((perm[a], perm[b]))) for a, b in g.edges) == edges:
            out.append(perm)
    return out


def _permute(p: RootPartition, perm: Sequence[int]) -> RootPartition:
    parts = []
    for r in p.parts:
        v = [0] * len(r)
        for i, x in enumerate(r):
            v[perm[i]] = x
        parts.append(tuple(v))
    return RootPartition.of(parts, len(perm))


def _is_power_of_two(v: int) -> bool:
    v = abs(v)
    return v > 0 and v & (v - 1) == 0


def validate_table(t: CoefficientTable, expected_universe: int | None = None,
                   allowed_values: Sequence[int] | None = None) -> ValidationReport:
    rep = ValidationReport(t.source or f"{t.type}:{encode_root(t.root)}")
    rs = root_system(t.type)
    universe = set(root_partitions(t.root, rs))
    if t.checksum_ok is not None:
        rep.add("checksum", t.checksum_ok, "" if t.checksum_ok else "entry lines do not match the sha256 header")
    bad = [k.key() for k in t.entries if k not in universe]
    rep.add("keys-are-partitions", not bad, ",".join(bad))
    stored, orient = set(t.keys_with(STORED)), set()
    vec = orientation_component_vector(t.root, None, t.type, t.reference)
    orient = set(vec.by_label)
    clash = sorted(k.key() for k in stored & orient)
    rep.add("stored-disjoint-from-orientation", not clash, ",".join(clash))
    if expected_universe is not None:
        rep.add("partition-universe", len(universe) == expected_universe,
                f"{len(universe)} partitions (expected {expected_universe})")
    rep.add("key-count", len(t.entries) <= len(universe), f"{len(t.entries)} keys")
    zero = [k.key() for k, v in t.entries.items() if v == 0 and t.provenance[k] != UNKNOWN]
    rep.add("no-zero-entries", not zero, ",".join(zero))
    if allowed_values is not None:
        off = [f"{k.key()}={t.entries[k]}" for k in stored if t.entries[k] not in allowed_values]
        rep.add("stored-values-allowed", not off, ",".join(off))
    pw = [f"{k.key()}={t.entries[k]}" for k in stored if not _is_power_of_two(t.entries[k])]
    rep.add("powers-of-two", not pw, ",".join(pw))
    # automorphisms fixing the root and the indexing orientation act on stored keys
    broken = []
    for perm in _graph_automorphisms(t.type):
        if tuple(t.root[perm.index(i)] for i in range(rs.rank)) != tuple(t.root):
            continue
        arrows = {(perm[a], perm[b]) for a, b in t.reference.arrows}
        if arrows != set(t.reference.arrows):
            continue
        for k in stored:
            img = _permute(k, perm)
            if t.provenance.get(img) == STORED and t.entries[img] != t.entries[k]:
                broken.append(f"{k.key()}->{img.key()}")
            elif t.provenance.get(img) != STORED:
                broken.append(f"{k.key()}->{img.key()} (image not stored)")
    rep.add("automorphism-consistent", not broken, ",".join(sorted(set(broken))))
    return rep


CASE_EXPECTATIONS = {
    "D4-thetamax": dict(expected_universe=15, allowed_values=None),
    "D5-thetamax": dict(expected_universe=55, allowed_values=(-2, -1, 1, 2)),
}


def validate_case(case: str, text: str | None = None) -> ValidationReport:
    try:
        t = load_reference_table(case, text)
    except InputError as e:
        rep = ValidationReport(case)
        rep.add("parse", False, str(e))
        return rep
    return validate_table(t, **CASE_EXPECTATIONS.get(case, {}))


# ---------------------------------------------------------------- E*_alpha
def decompose_E_star(alpha: Sequence[int], type_label: str, normalize: str = "reference") -> CoefficientTable:
    """Coefficient table of E*_alpha; entries that cannot be computed are marked unknown."""
    rs = root_system(type_label)
    alpha = tuple(alpha)
    if rs.kind != "finite" or not rs.is_positive_root(alpha):
        raise InputError(f"{encode_root(alpha)} is not a positive root of {type_label}")
    if normalize not in ("reference", "none"):
        raise InputError(f"unknown normalization {normalize!r}")
    if type_label in ("D4", "D5") and alpha == rs.highest_root:
        return load_reference_table(f"{type_label}-thetamax", normalize=normalize)
    if type_label.startswith("A"):
        t = CoefficientTable(type_label, alpha, reference_orientation(type_label))
        for Y in root_partitions(alpha, rs):
            t.set(Y, c_An(alpha, Y, normalize), COMPUTED_AN)
        return t
    return complete_table(CoefficientTable(type_label, alpha, reference_orientation(type_label)),
                          normalize=normalize)
