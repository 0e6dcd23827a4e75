"""The twelve acceptance criteria as callable checks.

Each check returns a :class:`CriterionResult`; ``run_all`` is what ``qlie selfcheck``
executes.  Budgets are wall-clock seconds on a laptop-class machine.
"""

from __future__ import annotations

import itertools
import os
import re
import tempfile
import time
import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Callable

from .bps import conjecture_algebra_checks, multiplicity_audit
from .cartan import RootPartition, build_graph, root_partitions, root_system
from .cocycle import Orientation, all_orientations, reference_orientation
from .lie import AffineLieAlgebra, Imaginary, antisymmetry_violations, build_full_g, ehat, jacobi_violations
from .semican import (
    STORED, cross_check_An, load_reference_table, orientation_component_vector,
    presentations, read_case_text, same_up_to_sign, validate_case,
)
from .stability import flows_to_extending, nakajima_character, stability_lemma_harness, wall_test


@dataclass(frozen=True)
class CriterionResult:
    number: int
    name: str
    ok: bool
    detail: str
    seconds: float
    budget: float

    @property
    def within_budget(self) -> bool:
        return self.seconds <= self.budget

    def line(self) -> str:
        status = "PASS" if self.ok and self.within_budget else "FAIL"
        return f"[{status}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.2f}s / {self.budget:g}s)"


def _timed(number: int, name: str, budget: float, fn: Callable[[], tuple[bool, str]]) -> CriterionResult:
    t0 = time.perf_counter()
    ok, detail = fn()
    return CriterionResult(number, name, ok, detail, time.perf_counter() - t0, budget)


# ---------------------------------------------------------------- 1
def _c1():
    rs = root_system("D5")
    n = len(root_partitions(rs.highest_root, rs))
    return n == 55, f"{n} root partitions of the D5 highest root"


# ---------------------------------------------------------------- 2
def _c2():
    rs4 = root_system("D4")
    t4 = load_reference_table("D4-thetamax")
    key = "1,0,0,0;1,1,1,1"  # {alpha_0, alpha_0+alpha_1+alpha_2+alpha_3}
    v = t4.entries.get(RootPartition.from_key(key, rs4.rank))
    problems = []
    if v is None or abs(v) != 2:
        problems.append(f"D4 {key} -> {v}")
    t5 = load_reference_table("D5-thetamax")
    off = [k.key() for k in t5.keys_with(STORED) if t5.entries[k] not in (-2, -1, 1, 2)]
    if off:
        problems.append("D5 values outside {+-1,+-2}: " + ",".join(off))
    for case in ("D4-thetamax", "D5-thetamax"):
        rep = validate_case(case)
        problems += [ln for ln in rep.lines() if ";fail;" in ln]
    n5 = len(t5.keys_with(STORED))
    return not problems, "; ".join(problems) or f"|c(D4 {key})|=2, {n5} D5 stored entries in {{+-1,+-2}}, keys valid and disjoint"


# ---------------------------------------------------------------- 3
def _c3():
    bad = []
    rows = 0
    for n in (2, 3, 4):
        rep = cross_check_An(n)
        rows += len(rep.rows)
        if not rep.ok:
            bad.append(f"A{n}")
    return not bad, f"{rows} roots checked" + (f"; failing {','.join(bad)}" if bad else "")


# ---------------------------------------------------------------- 4
def _c4():
    cases = [("A3", r) for r in root_system("A3").positive_roots] + [("D4", root_system("D4").highest_root)]
    bad, count = [], 0
    for label, alpha in cases:
        rs = root_system(label)
        first = None
        for pres in presentations(alpha, rs):
            count += 1
            vec = orientation_component_vector(alpha, pres, label).by_label
            if first is None:
                first = vec
            elif same_up_to_sign(first, vec) is None:
                bad.append(f"{label}:{pres}")
    return not bad, f"{count} presentations agree up to sign" if not bad else "differ: " + ",".join(bad[:5])


# ---------------------------------------------------------------- 5 and 6
def _bracket_cases():
    for label in ("A2", "A3"):
        rs = root_system(label)
        for o in all_orientations(label):
            for a, b in itertools.product(rs.positive_roots, repeat=2):
                if a != b and rs.is_positive_root(tuple(x + y for x, y in zip(a, b))):
                    yield o, a, b
    rs = root_system("D4")
    theta = rs.highest_root
    for o in _d4_orientations():
        for a in rs.positive_roots:
            b = tuple(x - y for x, y in zip(theta, a))
            if rs.is_positive_root(b):
                yield o, a, b


def _d4_orientations():
    return [reference_orientation("D4"), Orientation.parse("D4", "1>0,2>0,3>0"),
            Orientation.parse("D4", "1>0,0>2,3>0")]


def _c5():
    from .hall import verify_bracket_E
    bad, n = [], 0
    for o, a, b in _bracket_cases():
        n += 1
        rep = verify_bracket_E(a, b, o)
        if not rep.ok:
            bad.append(f"{o.graph.label}[{o}] {a},{b}: {rep.diff()}")
    return not bad, f"{n} ordered pairs" if not bad else "; ".join(bad[:3])


def _c6():
    from .hall import serre_element
    cases = [("A2", o) for o in all_orientations("A2")] + [("A3", reference_orientation("A3"))]
    cases += [("D4", o) for o in _d4_orientations()[:1]]
    bad, n = [], 0
    for label, o in cases:
        g = build_graph(label)
        for a, b in g.edges:
            i, j = g.vertices[a], g.vertices[b]
            for x, y in ((i, j), (j, i)):
                n += 1
                val = serre_element(x, y, o)
                if val:
                    bad.append(f"{label}[{o}] ({x},{y}): {val}")
    return not bad, f"{n} Serre relations vanish" if not bad else "; ".join(bad[:3])


# ---------------------------------------------------------------- 7
def _c7():
    bad = []
    rs = root_system("D4")
    roots = rs.roots
    for o in all_orientations("D4"):
        for a, b in itertools.product(roots, repeat=2):
            if o.epsilon(a, b) * o.epsilon(b, a) != (-1) ** rs.pairing(a, b):
                bad.append(f"sym {o} {a} {b}")
            for c in roots:
                ab = tuple(x + y for x, y in zip(a, b))
                if o.epsilon(ab, c) != o.epsilon(a, c) * o.epsilon(b, c):
                    bad.append(f"bimult {o} {a} {b} {c}")
                    break
        for a in roots:
            if o.euler_form(a, a) != 1:
                bad.append(f"<a,a> {o} {a}")
    ra = root_system("A~1")
    real = [r for r in ra.affine_positive_roots(5) if ra.is_real_root(r)]
    for o in all_orientations("A~1"):
        bad += [f"<a,a> {o} {r}" for r in real if o.euler_form(r, r) != 1]
    return not bad, "bimultiplicative, symmetric up to (-1)^(a,b), <a,a>=1" if not bad else "; ".join(bad[:3])


# ---------------------------------------------------------------- 8
def _c8():
    bad, counts = [], []
    for label in ("A2", "A3", "D4"):
        alg = build_full_g(root_system(label), reference_orientation(label))
        v = jacobi_violations(alg, alg.basis, limit=1) + list(antisymmetry_violations(alg, alg.basis))
        counts.append(f"{label}:{alg.dim}")
        if v:
            bad.append(f"{label}: {v[0][:3]}")
    for label in ("A~1", "A~2"):
        alg = AffineLieAlgebra(root_system(label), reference_orientation(label))
        basis = alg.basis_up_to(4)
        v = jacobi_violations(alg, basis, limit=1) + list(antisymmetry_violations(alg, basis))
        counts.append(f"{label}<=4d:{len(basis)}")
        if v:
            bad.append(f"{label}: {v[0][:3]}")
    return not bad, ("no violations over " + ", ".join(counts)) if not bad else "; ".join(bad)


# ---------------------------------------------------------------- 9
def _c9():
    cases = [("A2", r) for r in root_system("A2").positive_roots]
    cases += [("A3", r) for r in root_system("A3").positive_roots]
    cases.append(("D4", root_system("D4").highest_root))
    bad, rows = [], 0
    for label, alpha in cases:
        rep = stability_lemma_harness(label, alpha, reference_orientation(label), qs=(2, 3))
        rows += len(rep.rows)
        if not rep.ok:
            wrong = [r.line() for r in rep.rows if not r.ok] + rep.disagreements
            bad.append(f"{label} {alpha}: {wrong[:2]}")
    return not bad, f"{rows} classes, one-part <=> stable, F2 and F3 agree" if not bad else "; ".join(bad)


# ---------------------------------------------------------------- 10
def flow_count(label: str) -> int:
    return sum(flows_to_extending(o) for o in all_orientations(label))


def _c10():
    want = {"A~1": 1, "A~2": 2, "A~3": 3, "A~4": 4, "D~4": 1, "E~6": 1}
    got = {k: flow_count(k) for k in want}
    return got == want, ",".join(f"{k}:{v}" for k, v in got.items())


# ---------------------------------------------------------------- 11
def _c11():
    bad = []
    for label in ("A~1", "A~2"):
        rs = root_system(label)
        o = reference_orientation(label)
        for m in (1, 2, 3):
            for k in rs.graph.vertices[1:]:
                if ehat(k, m, o, rs).terms != {Imaginary(k, m): 1}:
                    bad.append(f"ehat {label} k={k} m={m}")
    for label in ("A~1", "A~2", "D~4"):
        rep = multiplicity_audit(label, 4)
        if not rep.ok:
            bad.append(f"audit {label}: " + ",".join(ln for ln in rep.lines() if not ln.endswith(";ok"))[:200])
        rs = root_system(label)
        theta = nakajima_character(label, rs.delta).values[1:]
        if not wall_test(theta, rs.finite):
            bad.append(f"wall {label}")
        if not conjecture_algebra_checks(label, 2).ok:
            bad.append(f"conjecture checks {label}")
    return not bad, "ehat, histograms up to 4delta, wall test" if not bad else "; ".join(bad)


# ---------------------------------------------------------------- 12
def table_mutations(text: str):
    """Every single-entry mutation of a table text: sign flip, +1, key swap, deletion, duplication."""
    lines = text.splitlines()
    entry_idx = [i for i, ln in enumerate(lines) if ln and not ln.startswith("#")]
    keys = [lines[i].split("=")[0].strip() for i in entry_idx]
    for n, i in enumerate(entry_idx):
        ln = lines[i]
        m = re.match(r"^(\S+)\s*=\s*([+-]?\d+)(.*)$", ln)
        key, val, rest = m.group(1), int(m.group(2)), m.group(3)
        variants = [f"{key} = {-val:+d}{rest}", f"{key} = {val + 1:+d}{rest}"]
        other = keys[(n + 1) % len(keys)]
        if other != key:
            variants.append(f"{other} = {val:+d}{rest}")
        for v in variants:
            yield f"entry {n} -> {v}", "\n".join(lines[:i] + [v] + lines[i + 1:]) + "\n"
        yield f"entry {n} deleted", "\n".join(lines[:i] + lines[i + 1:]) + "\n"
        yield f"entry {n} duplicated", "\n".join(lines[:i + 1] + [ln] + lines[i + 1:]) + "\n"


def cache_mutations(text: str):
    """Single-record mutations of a Hall cache file: each field of each record edited."""
    lines = text.splitlines()
    for i in range(1, len(lines)):
        fields = lines[i].split(";")
        for j in range(6):
            f = list(fields)
            if j == 5:
                cs = f[5].split(",")
                cs[0] = str(int(cs[0]) + 1)
                f[5] = ",".join(cs)
            else:
                f[j] = f[j] + "x" if j < 2 else f[j].replace("1", "2", 1) if "1" in f[j] else f[j] + "/1"
            yield f"record {i} field {j}", "\n".join(lines[:i] + [";".join(f)] + lines[i + 1:]) + "\n"


def _c12():
    from .cli import main
    missed, n = [], 0
    with tempfile.TemporaryDirectory() as tmp:
        for case in ("D4-thetamax", "D5-thetamax"):
            text = read_case_text(case)
            path = Path(tmp) / f"{case}.tab"
            path.write_text(text)
            if main(["validate", "--table-file", str(path), "--quiet"]) != 0:
                missed.append(f"{case} pristine copy rejected")
            for what, mutated in table_mutations(text):
                n += 1
                path.write_text(mutated)
                if main(["validate", "--table-file", str(path), "--quiet"]) != 1:
                    missed.append(f"{case}: {what}")
        cdir = Path(tmp) / "cache"
        old = os.environ.get("QLIE_CACHE")
        os.environ["QLIE_CACHE"] = str(cdir)
        try:
            from . import hall
            hall._CACHES.clear()
            o = reference_orientation("A2")
            hall.verify_bracket_E((1, 0), (0, 1), o)
            cfile = cdir / hall.CACHE_FILE
            text = cfile.read_text()
            if main(["validate", "--cache-dir", str(cdir), "--quiet"]) != 0:
                missed.append("pristine cache rejected")
            for what, mutated in cache_mutations(text):
                n += 1
                cfile.write_text(mutated)
                if main(["validate", "--cache-dir", str(cdir), "--quiet"]) != 1:
                    missed.append(f"cache: {what}")
            # a corrupted cache is recounted with a warning, results unchanged
            cfile.write_text(next(iter(cache_mutations(text)))[1])
            hall._CACHES.clear()
            with warnings.catch_warnings(record=True) as w:
                warnings.simplefilter("always")
                ok = hall.verify_bracket_E((1, 0), (0, 1), o).ok
            if not ok or not any(issubclass(x.category, hall.CacheWarning) for x in w):
                missed.append("corrupt cache not recounted with a warning")
        finally:
            if old is None:
                os.environ.pop("QLIE_CACHE", None)
            else:
                os.environ["QLIE_CACHE"] = old
            from . import hall
            hall._CACHES.clear()
    return not missed, f"{n} mutations detected" if not missed else f"{len(missed)} missed: " + "; ".join(missed[:3])


CRITERIA: list[tuple[int, str, float, Callable[[], tuple[bool, str]]]] = [
    (1, "D5 partition count", 1, _c1),
    (2, "D4/D5 table checks", 5, _c2),
    (3, "A_n sign-character cross-check", 30, _c3),
    (4, "presentation independence", 30, _c4),
    (5, "Hall bracket identity", 600, _c5),
    (6, "Serre relations in the Hall algebra", 600, _c6),
    (7, "cocycle laws", 10, _c7),
    (8, "Jacobi suites", 120, _c8),
    (9, "stability lemma harness", 300, _c9),
    (10, "orientation-flow counts", 1, _c10),
    (11, "affine audits", 30, _c11),
    (12, "mutation robustness", 30, _c12),
]


def run_criterion(number: int) -> CriterionResult:
    for num, name, budget, fn in CRITERIA:
        if num == number:
            return _timed(num, name, budget, fn)
    raise KeyError(number)


def run_all(only=None, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    out = []
    for num, name, budget, fn in CRITERIA:
        if only and num not in only:
            continue
        r = _timed(num, name, budget, fn)
        if echo:
            echo(r.line())
        out.append(r)
    return out
