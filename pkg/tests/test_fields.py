from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qlie.errors import InputError
from qlie.fields import GF, field, gaussian_binomial, gl_order, prime_power, prime_powers


def test_prime_power_decomposition():
    assert prime_power(8) == (2, 3)
    assert prime_power(9) == (3, 2)
    assert prime_power(7) == (7, 1)
    with pytest.raises(InputError):
        prime_power(6)


def test_prime_powers_sequence():
    gen = prime_powers()
    assert [next(gen) for _ in range(8)] == [2, 3, 4, 5, 7, 8, 9, 11]


@pytest.mark.parametrize("q", [2, 3, 4, 8, 9])
def test_field_axioms(q):
    F = field(q)
    a = np.arange(q)
    for x in range(q):
        assert F.add[x, 0] == x and F.mul[x, 1] == x
        if x:
            assert (F.mul[x] == 1).sum() == 1
    assert (F.add[a[:, None], a[None, :]] == F.add[a[None, :], a[:, None]]).all()


def test_subspace_counts_match_gaussian_binomials():
    F = field(3)
    for n in range(4):
        for k in range(n + 1):
            assert sum(1 for _ in F.subspaces(n, k)) == gaussian_binomial(n, k, 3)


def test_gl_order():
    assert gl_order(2, 2) == 6
    assert gl_order(2, 3) == 48


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_rank_nullity(q, r, c, seed):
    F = GF(q)
    m = F.random(np.random.default_rng(seed), (r, c))
    ns = F.nullspace(m)
    assert F.rank(m) + ns.shape[0] == c
    if ns.shape[0]:
        assert not F.matmul(m, ns.T).any()
