from __future__ import annotations

import pytest

from qlie.cartan import (
    RootPartition, build_graph, coxeter_number, decode_root, encode_root, positive_roots, root_partitions,
    root_system,
)
from qlie.errors import InputError


@pytest.mark.parametrize("label,count", [("A1", 1), ("A4", 10), ("D4", 12), ("D5", 20), ("E6", 36), ("E7", 63), ("E8", 120)])
def test_positive_root_counts(label, count):
    assert len(root_system(label).positive_roots) == count


@pytest.mark.parametrize("label,h", [("A3", 4), ("D4", 6), ("D5", 8), ("E6", 12), ("E8", 30)])
def test_coxeter_numbers(label, h):
    assert coxeter_number(label) == h


def test_highest_roots_in_vertex_order():
    assert encode_root(root_system("D4").highest_root) == "2,1,1,1"
    assert encode_root(root_system("D5").highest_root) == "2,1,1,2,1"
    assert root_system("E8").highest_root == (2, 3, 4, 6, 5, 4, 3, 2)


def test_cartan_matrix_symmetric_with_twos():
    c = build_graph("E6").cartan
    assert (c == c.T).all() and (c.diagonal() == 2).all()


def test_affine_delta_and_extending_vertex():
    assert root_system("A~1").delta == (1, 1)
    g = build_graph("D~4")
    assert g.extending_vertex == 4 and g.vertices[0] == 4
    assert root_system("D~4").delta == (1, 2, 1, 1, 1)
    assert root_system("E~6").delta == (1, 1, 2, 2, 3, 2, 1)
    rs = root_system("A~2")
    assert rs.pairing(rs.delta, rs.delta) == 0
    assert all(rs.pairing(rs.delta, s) == 0 for s in rs.simple_roots)


def test_affine_root_enumeration():
    rs = root_system("A~1")
    assert rs.affine_positive_roots(4) == [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]
    real = [r for r in rs.roots_up_to_degree(2, imaginary=False)]
    assert sorted(real) == [(0, 1), (1, 0), (1, 2), (2, 1)]
    assert rs.delta_multiple((3, 3)) == 3 and rs.delta_multiple((1, 2)) is None


def test_partition_counts():
    a3 = root_system("A3")
    assert len(root_partitions((1, 1, 1), a3)) == 4
    d4 = root_system("D4")
    assert len(root_partitions(d4.highest_root, d4)) == 15
    d5 = root_system("D5")
    assert len(root_partitions(d5.highest_root, d5)) == 55


def test_partition_key_round_trip():
    rs = root_system("D4")
    for p in root_partitions(rs.highest_root, rs):
        assert RootPartition.from_key(p.key(), rs.rank) == p
        assert p.total == rs.highest_root
    assert RootPartition.of([], 3).key() == "()"


def test_bad_labels_and_roots():
    with pytest.raises(InputError):
        build_graph("F4")
    with pytest.raises(InputError):
        build_graph("D3")
    with pytest.raises(InputError):
        decode_root("1,x")
    with pytest.raises(InputError):
        root_partitions((1, 1), root_system("A3"))


def test_positive_roots_height_cutoff():
    assert positive_roots(root_system("A2")) == [(1, 0), (0, 1), (1, 1)]
    got = positive_roots(root_system("A~1"), 5)
    assert got == [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2), (2, 2)]
    with pytest.raises(InputError):
        positive_roots(root_system("A~1"))
