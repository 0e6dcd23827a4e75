from __future__ import annotations

import itertools

import pytest
from hypothesis import given, strategies as st

from qlie.cartan import root_system
from qlie.cocycle import Orientation, all_orientations, bipartite_orientation, epsilon, euler_form, reference_orientation
from qlie.errors import InputError


def test_orientation_parse_and_format():
    o = Orientation.parse("D4", "0>1,0>2,0>3")
    assert str(o) == "0>1,0>2,0>3"
    assert o == reference_orientation("D4")
    with pytest.raises(InputError):
        Orientation.parse("D4", "1>2,0>2,0>3")
    with pytest.raises(InputError):
        Orientation.parse("A3", "1>2")


def test_orientation_counts():
    assert len(all_orientations("D4")) == 8
    assert len(all_orientations("A~1")) == 4
    assert all_orientations("A3")[0] == reference_orientation("A3")


def test_bipartite_orientations():
    assert str(bipartite_orientation("D5")) == "0>1,0>2,0>3,4>3"
    assert str(bipartite_orientation("A4")) == "1>2,3>2,3>4"


def test_euler_form_symmetrises_to_pairing():
    rs = root_system("D4")
    for o in all_orientations("D4"):
        for a, b in itertools.product(rs.positive_roots, repeat=2):
            assert euler_form(o, a, b) + euler_form(o, b, a) == rs.pairing(a, b)


def test_epsilon_examples():
    o = reference_orientation("A2")
    assert epsilon(o, (1, 0), (0, 1)) == 1
    assert epsilon(o, (0, 1), (1, 0)) == -1
    assert epsilon(o, (1, 0), (1, 0)) == -1


roots_d4 = st.sampled_from(root_system("D4").roots)
orients_d4 = st.sampled_from(all_orientations("D4"))


@given(orients_d4, roots_d4, roots_d4, roots_d4)
def test_bimultiplicative(o, a, b, c):
    ab = tuple(x + y for x, y in zip(a, b))
    assert o.epsilon(ab, c) == o.epsilon(a, c) * o.epsilon(b, c)
    assert o.epsilon(c, ab) == o.epsilon(c, a) * o.epsilon(c, b)


@given(orients_d4, roots_d4)
def test_real_roots_have_euler_square_one(o, a):
    assert o.euler_form(a, a) == 1


def test_affine_real_roots_euler_square():
    rs = root_system("A~1")
    for o in all_orientations("A~1"):
        for r in rs.affine_positive_roots(9):
            assert o.euler_form(r, r) == (1 if rs.is_real_root(r) else 0)
