from __future__ import annotations

import itertools
import warnings

import pytest

from qlie import hall
from qlie.cartan import RootPartition, root_system
from qlie.cocycle import Orientation, all_orientations, reference_orientation
from qlie.errors import ResourceError
from qlie.hall import (
    E_alpha, HallCache, S, counts_for, hall_number, hall_polynomial, hall_polynomials, serre_element, unit,
    validate_cache_file, verify_bracket_E,
)


def test_simple_products():
    o = reference_orientation("A2")
    s1, s2 = S(1, o), S(2, o)
    # [S2] sub, [S1] quotient: only the split module and the indecomposable 1->2
    prod = s1 * s2
    assert prod.terms == {RootPartition.of([(1, 0), (0, 1)]): 1, RootPartition.of([(1, 1)]): 1}
    assert (s2 * s1).terms == {RootPartition.of([(1, 0), (0, 1)]): 1}
    assert (s1 * s1).terms == {RootPartition.of([(1, 0), (1, 0)]): 2}
    assert unit(o) * s1 == s1


def test_hall_polynomial_of_split_square():
    o = reference_orientation("A2")
    p = hall_polynomial(RootPartition.of([(1, 0), (1, 0)]), [(1, 0)], [(1, 0)], o)
    assert p.coeffs == (1, 1)  # q + 1 lines in F_q^2


@pytest.mark.parametrize("q", [2, 3, 4])
def test_routes_agree_a3(q):
    o = all_orientations("A3")[2]
    rs = root_system("A3")
    for a, b in itertools.product(rs.positive_roots, repeat=2):
        N, P = RootPartition.of([a]), RootPartition.of([b])
        assert counts_for(o, N, P, q, "exhaustive") == counts_for(o, N, P, q, "riedtmann")


def test_routes_agree_d4_small():
    o = reference_orientation("D4")
    rs = root_system("D4")
    for a, b in itertools.product(rs.positive_roots, repeat=2):
        if sum(a) + sum(b) > 4:
            continue
        N, P = RootPartition.of([a]), RootPartition.of([b])
        assert counts_for(o, N, P, 2, "exhaustive") == counts_for(o, N, P, 2, "riedtmann")


def test_hall_number_direct():
    o = reference_orientation("A2")
    M = RootPartition.of([(1, 0), (0, 1)])
    assert hall_number(M, [(1, 0)], [(0, 1)], 5, o) == 1
    assert hall_number(M, [(0, 1)], [(1, 0)], 5, o) == 1


@pytest.mark.parametrize("label", ["A2", "A3"])
def test_bracket_identity_all_orientations(label):
    rs = root_system(label)
    for o in all_orientations(label):
        for a, b in itertools.permutations(rs.positive_roots, 2):
            assert verify_bracket_E(a, b, o).ok, (str(o), a, b)


def test_bracket_identity_d4_theta_pairs():
    rs = root_system("D4")
    o = Orientation.parse("D4", "1>0,0>2,3>0")
    theta = rs.highest_root
    for a in rs.positive_roots:
        b = tuple(x - y for x, y in zip(theta, a))
        if rs.is_positive_root(b):
            rep = verify_bracket_E(a, b, o)
            assert rep.ok, rep.diff()


def test_serre_relations_a2_both_orientations():
    for o in all_orientations("A2"):
        assert not serre_element(1, 2, o) and not serre_element(2, 1, o)


def test_resource_bound():
    o = reference_orientation("A3")
    with pytest.raises(ResourceError):
        hall_polynomials(o, [(1, 1, 1)] * 2, [(1, 1, 1)] * 2)


def test_cache_round_trip_and_corruption(tmp_path):
    o = reference_orientation("A2")
    cache = HallCache(tmp_path)
    key = hall._cache_key(o, RootPartition.of([(1, 1)]), RootPartition.of([(1, 0)]), RootPartition.of([(0, 1)]))
    cache.put(key, (1,))
    assert HallCache(tmp_path).get(key) == (1,)
    assert validate_cache_file(cache.path) == []
    text = cache.path.read_text().replace(";1;", ";2;")
    cache.path.write_text(text)
    assert validate_cache_file(cache.path)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        assert HallCache(tmp_path).get(key) is None
    assert any(issubclass(x.category, hall.CacheWarning) for x in w)


def test_cache_is_pure_accelerator(tmp_path, monkeypatch):
    o = reference_orientation("A3")
    N, P = [(1, 1, 0)], [(0, 0, 1)]
    monkeypatch.setenv("QLIE_CACHE", "off")
    hall._CACHES.clear()
    cold = {k: v.coeffs for k, v in hall_polynomials(o, N, P).items()}
    monkeypatch.setenv("QLIE_CACHE", str(tmp_path))
    hall._CACHES.clear()
    first = {k: v.coeffs for k, v in hall_polynomials(o, N, P).items()}
    hall._CACHES.clear()
    warm = {k: v.coeffs for k, v in hall_polynomials(o, N, P).items()}
    hall._CACHES.clear()
    assert cold == first == warm


def test_E_alpha_rejects_non_roots():
    with pytest.raises(Exception):
        E_alpha((2, 0), reference_orientation("A2"))
