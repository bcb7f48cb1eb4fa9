import random

import numpy as np
from gmpy2 import mpq

from aqsym.linalg import mat_vec, right_kernel
from aqsym.modular import (
    certified_kernel, exact_int_matmul, kernel_mod, matmul_mod,
    reconstruct_rational_matrix, residue_matrix, rref_mod,
)
from aqsym.rationals import MODULAR_PRIMES


def test_rref_mod_small():
    p = MODULAR_PRIMES[0]
    mat = np.array([[1, 2, 3], [2, 4, 6], [0, 1, 1]], dtype=np.int64)
    reduced, pivots = rref_mod(mat, p)
    assert pivots == [0, 1]
    assert reduced.shape[0] == 2


def test_kernel_mod_matches_exact():
    p = MODULAR_PRIMES[0]
    rows = [{0: 1, 1: 1}, {2: 1}]
    mat = residue_matrix(rows, 4, p)
    reduced, pivots = rref_mod(mat, p)
    ker = kernel_mod(reduced, pivots, 4, p)
    assert ker.shape == (2, 4)
    for v in ker:
        assert (v[0] + v[1]) % p == 0 and v[2] % p == 0


def test_matmul_mod_matches_direct():
    rng = random.Random(3)
    p = MODULAR_PRIMES[1]
    a = np.array([[rng.randrange(p) for _ in range(20)] for _ in range(7)],
                 dtype=np.int64)
    b = np.array([[rng.randrange(p) for _ in range(5)] for _ in range(20)],
                 dtype=np.int64)
    want = (a.astype(object) @ b.astype(object)) % p
    got = matmul_mod(a, b, p)
    assert (got.astype(object) == want).all()


def test_certified_kernel_matches_exact_kernel():
    rng = random.Random(20260815)
    for case in range(40):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 8)
        dense = [[rng.randint(-6, 6) if rng.random() < 0.6 else 0
                  for _ in range(nc)] for _ in range(nr)]
        rows = [{j: v for j, v in enumerate(row) if v} for row in dense]
        rows = [r for r in rows if r]
        res = certified_kernel(rows, nc)
        basis, rk = res.basis, res.rank
        exact = right_kernel([[mpq(x) for x in row] for row in dense],
                             ncols=nc)
        assert len(basis) == len(exact)
        assert rk + len(basis) == nc
        for v in basis:
            assert all(x == 0 for x in
                       mat_vec([[mpq(x) for x in row] for row in dense], v))


def test_certified_kernel_large_rational_entries():
    # kernel vector with denominators beyond one prime's reconstruction range
    big = 10 ** 9 + 7
    rows = [{0: big, 1: -1}]
    res = certified_kernel(rows, 2)
    basis, rk = res.basis, res.rank
    assert rk == 1 and len(basis) == 1
    v = basis[0]
    assert big * v[0] - v[1] == 0 and any(v)


def test_exact_int_matmul_small_and_big():
    rng = random.Random(11)
    a = [[rng.randint(-50, 50) for _ in range(9)] for _ in range(4)]
    b = [[rng.randint(-50, 50) for _ in range(6)] for _ in range(9)]
    want = [[sum(a[i][t] * b[t][j] for t in range(9)) for j in range(6)]
            for i in range(4)]
    assert exact_int_matmul(a, b) == want
    # entries large enough to force the multi-prime CRT path
    big = 2 ** 41
    a = [[rng.randint(-big, big) for _ in range(30)] for _ in range(3)]
    b = [[rng.randint(-big, big) for _ in range(4)] for _ in range(30)]
    want = [[sum(a[i][t] * b[t][j] for t in range(30)) for j in range(4)]
            for i in range(3)]
    assert exact_int_matmul(a, b) == want


def test_reconstruct_rational_matrix():
    p1, p2 = MODULAR_PRIMES[:2]
    val = mpq(-22, 7)
    def res(p):
        return np.array([[int(val.numerator) * pow(7, -1, p) % p]],
                        dtype=np.int64)
    got = reconstruct_rational_matrix([res(p1), res(p2)], [p1, p2])
    assert got == [[val]]
