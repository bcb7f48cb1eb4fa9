import random

from gmpy2 import mpq

from aqsym.linalg import (
    det, identity, in_span, intersect_spans, inverse, mat_eq, mat_mul,
    mat_vec, rank, right_kernel, row_space, rref, solve,
)
from aqsym.polynomial import Poly, RatFunc


def q(x):
    return mpq(x)


def test_rank_identity():
    assert rank(identity(5)) == 5


def test_rank_dependent_rows():
    assert rank([[q(1), q(2)], [q(2), q(4)]]) == 1


def test_kernel_simple():
    a = [[q(1), q(1), q(0)]]
    ker = right_kernel(a)
    assert len(ker) == 2
    for v in ker:
        assert all(x == 0 for x in mat_vec(a, v))


def test_rank_nullity_500_seeded():
    rng = random.Random(20260815)
    for case in range(500):
        nr = rng.randint(1, 6)
        nc = rng.randint(1, 7)
        a = [[mpq(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(nc)]
             for _ in range(nr)]
        r = rank(a)
        ker = right_kernel(a)
        assert r + len(ker) == nc
        for v in ker:
            assert all(x == 0 for x in mat_vec(a, v))


def test_solve_and_inverse():
    a = [[q(2), q(1)], [q(1), q(3)]]
    b = [q(5), q(10)]
    x = solve(a, b)
    assert mat_vec(a, x) == b
    ai = inverse(a)
    assert mat_eq(mat_mul(a, ai), identity(2))
    assert inverse([[q(1), q(2)], [q(2), q(4)]]) is None
    assert solve([[q(1), q(1)]], [q(3)]) == [q(3), q(0)]
    assert solve([[q(1)], [q(1)]], [q(1), q(2)]) is None


def test_det():
    assert det([[q(1), q(2)], [q(3), q(4)]]) == -2
    assert det([[q(1), q(2)], [q(2), q(4)]]) == 0
    rng = random.Random(7)
    for _ in range(50):
        n = rng.randint(1, 5)
        a = [[mpq(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n)]
             for _ in range(n)]
        b = [[mpq(rng.randint(-5, 5)) for _ in range(n)] for _ in range(n)]
        assert det(mat_mul(a, b)) == det(a) * det(b)


def test_row_space_and_in_span():
    vs = [[q(1), q(0), q(1)], [q(2), q(0), q(2)], [q(0), q(1), q(0)]]
    basis, idx = row_space(vs)
    assert idx == [0, 2]
    coords = in_span(basis, [q(3), q(5), q(3)])
    assert coords == [q(3), q(5)]
    assert in_span(basis, [q(0), q(0), q(1)]) is None


def test_intersect_spans():
    a = [[q(1), q(0), q(0)], [q(0), q(1), q(0)]]
    b = [[q(0), q(1), q(0)], [q(0), q(0), q(1)]]
    inter = intersect_spans(a, b)
    assert len(inter) == 1
    v = inter[0]
    assert v[0] == 0 and v[2] == 0 and v[1] != 0


def test_rref_over_rational_functions():
    h = [Poly.var(i, 2) for i in range(2)]
    x = RatFunc(h[0], Poly.one(2))
    y = RatFunc(h[1], Poly.one(2))
    one = RatFunc.const(1, 2)
    a = [[x, y], [x * x, x * y]]
    red, pivots = rref(a)
    assert pivots == [0]
    assert rank(a) == 1
    ker = right_kernel(a)
    assert len(ker) == 1
    kx, ky = ker[0]
    # x * kx + y * ky == 0
    assert (x * kx + y * ky).is_zero()
    b = [[x, one], [one, x]]
    assert rank(b) == 2
