from __future__ import annotations

from fractions import Fraction

import pytest

from qlie.cartan import root_system
from qlie.cocycle import Orientation, all_orientations, reference_orientation
from qlie.errors import InputError
from qlie.lie import (
    AffineLieAlgebra, FiniteLieAlgebra, Imaginary, LieElement, RealRoot, antisymmetry_violations, build_full_g,
    ehat, format_element, generated_root_space_dimensions, jacobi_violations, parse_element, serre_check,
)


@pytest.mark.parametrize("label,dim", [("A2", 8), ("A3", 15), ("D4", 28)])
def test_full_algebra_dimensions_and_jacobi(label, dim):
    for o in all_orientations(label)[:2]:
        g = build_full_g(root_system(label), o)
        assert g.dim == dim
        assert not jacobi_violations(g, g.basis)
        assert not antisymmetry_violations(g, g.basis)


def test_bracket_sign_follows_epsilon():
    rs = root_system("A2")
    o = reference_orientation("A2")
    n = FiniteLieAlgebra(rs, o, positive_only=True)
    assert n.bracket(n.e((1, 0)), n.e((0, 1))) == n.e((1, 1))
    assert n.bracket(n.e((0, 1)), n.e((1, 0))) == -n.e((1, 1))


def test_serre_relations():
    g = build_full_g(root_system("D4"), reference_orientation("D4"))
    assert serre_check(0, 1, g) and serre_check(1, 0, g)


def test_element_text_round_trip():
    x = parse_element("1*e[1,1] - 2*h1(3) + 1/2*H0")
    assert x.coefficient(Imaginary(1, 3)) == -2
    assert parse_element(format_element(x)) == x
    assert format_element(LieElement()) == "0"
    with pytest.raises(InputError):
        parse_element("e[1,1]")


def test_affine_cocycle_convention_satisfies_jacobi():
    for label in ("A~1", "A~2"):
        for o in all_orientations(label):
            alg = AffineLieAlgebra(root_system(label), o)
            assert not jacobi_violations(alg, alg.basis_up_to(2), limit=1), (label, str(o))


def test_plain_mixed_bracket_breaks_jacobi_off_the_trivial_character():
    o = Orientation.parse("A~1", "0>1,0>1")
    alg = AffineLieAlgebra(root_system("A~1"), o, mixed="plain")
    assert jacobi_violations(alg, alg.basis_up_to(2), limit=1)
    flat = Orientation.parse("A~1", "1>0,0>1")
    alg = AffineLieAlgebra(root_system("A~1"), flat, mixed="plain")
    assert not jacobi_violations(alg, alg.basis_up_to(2), limit=1)
    h = alg.imaginary_of((1,), 1)
    assert alg.bracket(h, alg.e((0, 1))) == 2 * alg.e((1, 2))


@pytest.mark.parametrize("label", ["A~1", "A~2", "D~4"])
def test_ehat_is_imaginary_vector(label):
    rs = root_system(label)
    o = reference_orientation(label)
    for m in (1, 2):
        for k in rs.graph.vertices[1:]:
            assert ehat(k, m, o, rs) == LieElement.basis(Imaginary(k, m))


def test_generated_dimensions_match_kac():
    rs = root_system("A~2")
    alg = AffineLieAlgebra(rs, reference_orientation("A~2"))
    dims = generated_root_space_dimensions(alg, (3, 3, 3))
    assert dims[rs.delta] == 2 and dims[(2, 2, 2)] == 2 and dims[(1, 0, 0)] == 1
    assert (2, 0, 0) not in dims


def test_proportional_to():
    x = LieElement({RealRoot((1, 0)): 2})
    assert x.proportional_to(LieElement({RealRoot((1, 0)): 4})) == Fraction(1, 2)
