"""Finite fields GF(q) and the small amount of linear algebra the quiver code needs.

Field elements are encoded as integers ``0..q-1``: for a prime field the code is
the residue, for ``q = p**k`` it is the base-``p`` digit string of the
coefficient vector in the polynomial basis.  Arithmetic goes through
precomputed tables so that matrices are plain ``numpy`` integer arrays.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterator

import numpy as np

from .errors import InputError


def prime_power(q: int) -> tuple[int, int]:
    """Return ``(p, k)`` with ``q == p**k``; raise for anything else."""
    if q < 2:
        raise InputError(f"{q} is not a prime power")
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k, r = 0, q
    while r % p == 0:
        r //= p
        k += 1
    if r != 1:
        raise InputError(f"{q} is not a prime power")
    return p, k


def prime_powers(start: int = 2) -> Iterator[int]:
    q = start
    while True:
        try:
            prime_power(q)
        except InputError:
            pass
        else:
            yield q
        q += 1


def _poly_mod(a: list[int], f: list[int], p: int) -> list[int]:
    a = a[:]
    while len(a) >= len(f):
        c = a[-1]
        if c:
            shift = len(a) - len(f)
            for i, fc in enumerate(f):
                a[shift + i] = (a[shift + i] - c * fc) % p
        a.pop()
    return a


def _irreducible(p: int, k: int) -> list[int]:
    """Lowest monic irreducible polynomial of degree k over F_p (coefficients low->high)."""
    for tail in itertools.product(range(p), repeat=k):
        f = list(tail) + [1]
        if f[0] == 0:
            continue
        ok = True
        for d in range(1, k // 2 + 1):
            for gt in itertools.product(range(p), repeat=d):
                if not any(_poly_mod(f, list(gt) + [1], p)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return f
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


class GF:
    """The finite field with ``q`` elements, table driven."""

    def __init__(self, q: int):
        p, k = prime_power(q)
        self.q, self.p, self.k = q, p, k
        if k == 1:
            r = np.arange(q)
            self.add = (r[:, None] + r[None, :]) % q
            self.mul = (r[:, None] * r[None, :]) % q
        else:
            f = _irreducible(p, k)
            digits = [[(c // p**i) % p for i in range(k)] for c in range(q)]
            self.add = np.array(
                [[sum(((x + y) % p) * p**i for i, (x, y) in enumerate(zip(a, b))) for b in digits]
                 for a in digits])
            mul = np.zeros((q, q), dtype=np.int64)
            for i, a in enumerate(digits):
                for j, b in enumerate(digits):
                    prod = [0] * (2 * k - 1)
                    for s, x in enumerate(a):
                        if x:
                            for t, y in enumerate(b):
                                prod[s + t] = (prod[s + t] + x * y) % p
                    red = _poly_mod(prod, f, p)
                    mul[i, j] = sum(c * p**e for e, c in enumerate(red))
            self.mul = mul
        self.add = self.add.astype(np.int64)
        self.mul = self.mul.astype(np.int64)
        self.neg = np.argmin(self.add, axis=1).astype(np.int64)
        self.inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            self.inv[a] = int(np.nonzero(self.mul[a] == 1)[0][0])

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __reduce__(self):
        return (field, (self.q,))

    # matrices -----------------------------------------------------------
    def zeros(self, shape) -> np.ndarray:
        return np.zeros(shape, dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, shape) -> np.ndarray:
        return rng.integers(0, self.q, size=shape, dtype=np.int64)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        m, n = a.shape[0], b.shape[1]
        if a.shape[1] == 0 or m == 0 or n == 0:
            return self.zeros((m, n))
        if self.k == 1:
            return (a @ b) % self.p
        prods = self.mul[a[:, :, None], b[None, :, :]]
        acc = prods[:, 0, :]
        for j in range(1, prods.shape[1]):
            acc = self.add[acc, prods[:, j, :]]
        return acc

    def sub(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.add[a, self.neg[b]]

    def rref(self, a: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form and pivot columns."""
        r = np.array(a, dtype=np.int64, copy=True)
        nrows, ncols = r.shape
        pivots: list[int] = []
        row = 0
        for col in range(ncols):
            if row == nrows:
                break
            nz = np.nonzero(r[row:, col])[0]
            if len(nz) == 0:
                continue
            i = row + int(nz[0])
            if i != row:
                r[[row, i]] = r[[i, row]]
            r[row] = self.mul[self.inv[r[row, col]], r[row]]
            f = r[:, col].copy()
            f[row] = 0
            idx = np.nonzero(f)[0]
            if len(idx):
                r[idx] = self.add[r[idx], self.neg[self.mul[f[idx, None], r[row][None, :]]]]
            pivots.append(col)
            row += 1
        return r, pivots

    def rank(self, a: np.ndarray) -> int:
        if a.size == 0:
            return 0
        return len(self.rref(a)[1])

    def nullspace(self, a: np.ndarray) -> np.ndarray:
        """Basis of ``{v : a v = 0}`` as rows."""
        ncols = a.shape[1]
        if a.shape[0] == 0:
            return self.eye(ncols)
        r, piv = self.rref(a)
        free = [c for c in range(ncols) if c not in piv]
        basis = self.zeros((len(free), ncols))
        for t, c in enumerate(free):
            basis[t, c] = 1
            for i, pc in enumerate(piv):
                basis[t, pc] = self.neg[r[i, c]]
        return basis

    def subspaces(self, n: int, k: int) -> Iterator[tuple[np.ndarray, tuple[int, ...]]]:
        """All k-dimensional subspaces of GF(q)^n as (RREF basis rows, pivots)."""
        if k == 0:
            yield self.zeros((0, n)), ()
            return
        for piv in itertools.combinations(range(n), k):
            free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in piv]
            base = self.zeros((k, n))
            for i, pc in enumerate(piv):
                base[i, pc] = 1
            for vals in itertools.product(range(self.q), repeat=len(free)):
                m = base.copy()
                for (i, c), v in zip(free, vals):
                    m[i, c] = v
                yield m, piv


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of an n-dimensional space over GF(q)."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def gl_order(m: int, q: int) -> int:
    out = 1
    for i in range(m):
        out *= q**m - q**i
    return out
