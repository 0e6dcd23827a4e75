from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlie.cartan import root_system
from qlie.cocycle import Orientation, all_orientations, reference_orientation
from qlie.errors import InputError, ResourceError
from qlie.fields import field
from qlie.reps import FqRep, catalog
from qlie.stability import (
    SEMISTABLE, STABLE, UNSTABLE, SlopeCondition, StabilityBounds, flows_to_extending, is_slope_stable, is_stable,
    king_character, nakajima_character, slope_character, slope_from_character, stability_lemma_harness, to_double,
    wall_test,
)

A2 = reference_orientation("A2")


def test_king_character_examples():
    th = king_character(A2, (1, 1))
    assert th((0, 1)) == 1 and th((1, 0)) == -1 and th((1, 1)) == 0


def test_slope_character_examples():
    mu = SlopeCondition((1, 0), (1, 1))
    th = slope_character(mu, (1, 1))
    assert th((1, 0)) == Fraction(-1, 2) and th((0, 1)) == Fraction(1, 2)
    same = slope_character(SlopeCondition((2, 3), (2, 3)), (1, 4))
    assert all(v == 0 for v in same.values)
    with pytest.raises(InputError):
        SlopeCondition((1, 1), (1, 0))


def test_nakajima_examples():
    assert nakajima_character("A~1", (1, 1)).values == (1, -1)
    assert nakajima_character("A~1", (2, 2))((2, 2)) == 0
    rs = root_system("D~4")
    assert nakajima_character("D~4", rs.delta).values[0] == 5
    with pytest.raises(InputError):
        nakajima_character("A~1", (0, 1))


def test_stability_examples_a2():
    cat = catalog(A2, 2)
    th = king_character(A2, (1, 1))
    assert is_stable(cat.indecomposable((1, 1)), th).verdict == STABLE
    zero = FqRep.zero(field(2), (1, 1), A2.arrows)
    v = is_stable(zero, th)
    assert v.verdict == UNSTABLE and v.witness == (1, 0)
    s1 = cat.indecomposable((1, 0))
    assert is_stable(s1, king_character(A2, (1, 0))).stable


def test_semistable_not_stable():
    zero = FqRep.zero(field(3), (1, 1), A2.arrows)
    th = king_character(A2, (0, 0))  # identically zero
    assert is_stable(zero, th).verdict == SEMISTABLE


def test_stability_input_checks():
    cat = catalog(A2, 2)
    with pytest.raises(InputError):
        is_stable(cat.indecomposable((1, 1)), king_character(A2, (1, 0)))
    with pytest.raises(ResourceError):
        is_stable(catalog(A2, 8).indecomposable((1, 1)), king_character(A2, (1, 1)))
    with pytest.raises(ResourceError):
        x = FqRep.zero(field(2), (4, 4), A2.arrows)
        is_stable(x, king_character(A2, (4, 4)), bounds=StabilityBounds(max_total_dim=7))


def test_double_quiver_relations_are_checked():
    F = field(2)
    arrows = A2.double_arrows
    # x: V1 -> V2 and xbar: V2 -> V1 both identity on 1-dim spaces: moment map nonzero
    bad = FqRep(F, (1, 1), arrows, [np.array([[1]]), np.array([[1]])])
    with pytest.raises(InputError):
        is_stable(bad, king_character(A2, (1, 1)), A2)
    good = to_double(catalog(A2, 2).indecomposable((1, 1)), A2)
    assert is_stable(good, king_character(A2, (1, 1)), A2).stable


def test_wall_test_examples():
    a2 = root_system("A2")
    assert wall_test([-1, -1], a2)
    assert not wall_test([0, -1], a2)
    assert not wall_test([1, -1], a2)
    assert wall_test([-1] * 4, root_system("D4"))


@pytest.mark.parametrize("label,count", [("A~1", 1), ("A~2", 2), ("A~3", 3), ("A~4", 4), ("D~4", 1), ("E~6", 1)])
def test_flow_counts(label, count):
    assert sum(flows_to_extending(o) for o in all_orientations(label)) == count


def test_source_at_extending_vertex_does_not_flow():
    assert not flows_to_extending(Orientation.parse("A~2", "0>1,0>2,1>2"))


@pytest.mark.parametrize("label", ["A2", "A3"])
def test_stability_lemma_all_roots_and_orientations(label):
    rs = root_system(label)
    for o in all_orientations(label):
        for alpha in rs.positive_roots:
            rep = stability_lemma_harness(label, alpha, o)
            assert rep.ok, rep.lines()


def test_stability_lemma_d4_theta():
    for o in (reference_orientation("D4"), Orientation.parse("D4", "1>0,2>0,3>0")):
        rep = stability_lemma_harness("D4", (2, 1, 1, 1), o)
        assert rep.ok
        assert sum(r.verdict == STABLE for r in rep.rows) == 2  # one class per field


def test_harness_line_format():
    rep = stability_lemma_harness("A2", (1, 1), A2, qs=(2,))
    assert rep.lines() == ["1,1;-1,1;stable;-", "1,0;0,1;-1,1;unstable;1,0"]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(["A2", "A3"]), st.integers(0, 10**6), st.lists(st.integers(1, 4), min_size=3, max_size=3))
def test_slope_and_king_verdicts_match(label, seed, r):
    o = reference_orientation(label)
    rs = root_system(label)
    alpha = rs.positive_roots[seed % len(rs.positive_roots)]
    th = king_character(o, alpha)
    mu = slope_from_character(th, r[: rs.rank])
    # c = r - theta reproduces theta exactly, whatever r is
    assert slope_character(mu, alpha).values == th.values
    for lab, x in catalog(o, 2).enumerate(alpha):
        a = is_stable(x, slope_character(mu, alpha)).verdict
        b = is_slope_stable(x, mu).verdict
        assert a == b


def test_triality_equivariance():
    o = reference_orientation("D4")
    F = field(2)
    th = king_character(o, (2, 1, 1, 1))
    cat = catalog(o, 2)
    for lab, x in cat.enumerate((2, 1, 1, 1)):
        v = is_stable(x, th)
        for perm in [(0, 2, 3, 1), (0, 2, 1, 3)]:
            # vertex i -> perm[i]; the three arrows 0>leg are permuted accordingly
            dims = [0] * 4
            for i, d in enumerate(x.dims):
                dims[perm[i]] = d
            mats = [None] * 3
            for k, (t, h) in enumerate(o.arrows):
                k2 = o.arrows.index((perm[t], perm[h]))
                mats[k2] = x.mats[k]
            y = FqRep(F, dims, o.arrows, mats)
            w = is_stable(y, th)
            assert w.verdict == v.verdict
            assert len(cat.identify(y).parts) == len(lab.parts)
