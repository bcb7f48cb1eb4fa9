import random

import pytest
from gmpy2 import mpq

from aqsym.errors import ConfigError
from aqsym.linalg import mat_eq, mat_vec, row_space, in_span
from aqsym.quaternions import right_matrix, unit
from aqsym.slh import build_graded, build_parabolic, first_prolongation


def test_requires_n_at_least_two():
    with pytest.raises(ConfigError):
        build_graded(1)


def test_dimensions():
    for n in (2, 3):
        alg = build_graded(n)
        assert alg.dim == 4 * (n + 1) ** 2 - 1
        assert alg.dim_gm1 == 4 * n
        assert alg.dim_g0 == 4 * n * n + 3
        assert alg.dim_g1 == 4 * n
        assert alg.degrees.count(-1) == 4 * n
        assert alg.degrees.count(0) == 4 * n * n + 3
        assert alg.degrees.count(1) == 4 * n


def test_jacobi_exact_n2():
    alg = build_graded(2)
    assert alg.algebra.jacobi_check()


def test_grading():
    for n in (2, 3):
        alg = build_graded(n)
        assert alg.grading_respected()
        assert alg.grading_element_eigenvalues()


def test_coords_qmat_roundtrip():
    rng = random.Random(12)
    for n in (2, 3):
        alg = build_graded(n)
        for _ in range(10):
            vec = [mpq(rng.randint(-4, 4), rng.randint(1, 3))
                   for _ in range(alg.dim)]
            assert alg.coords(alg.qmat(vec)) == vec


def test_sp1_acts_by_minus_right_multiplication():
    alg = build_graded(2)
    acts = alg.action_on_gm1()
    for u in range(1, 4):
        # sp(1) basis element with scalar entry e_u sits at g0 index u-1
        m = acts[u - 1]
        r = right_matrix(unit(u))
        for slot in range(2):
            for a in range(4):
                for b in range(4):
                    assert m[4 * slot + a][4 * slot + b] == -r[a][b]
            # no mixing between the two quaternionic slots
            other = 4 * (1 - slot)
            for a in range(4):
                for b in range(4):
                    assert m[4 * slot + a][other + b] == 0


def test_sl_part_acts_by_left_matrix_units():
    alg = build_graded(2)
    acts = alg.action_on_gm1()
    # basis label a12.1 is the quaternionic unit matrix E_{12}: v -> E_{12} v
    idx = alg.labels.index("a12.1") - 4 * alg.n
    m = acts[idx]
    # V[2,u] -> V[1,u]
    for u in range(4):
        col = [row[4 + u] for row in m]
        want = [mpq(0)] * 8
        want[u] = mpq(1)
        assert col == want
        assert all(row[u] == 0 for row in m)


def test_killing_dual_is_dual_basis():
    alg = build_graded(2)
    d = alg.killing_dual()
    kappa = alg.algebra.killing_matrix()
    base1 = 4 * alg.n + alg.dim_g0
    for s in range(alg.dim_gm1):
        for t in range(alg.dim_gm1):
            val = sum(d[p][s] * kappa[base1 + p][t]
                      for p in range(alg.dim_g1))
            assert val == (1 if s == t else 0)


def _full(alg, g0vec):
    return alg.g0_vector(g0vec)


def test_parabolic_structure():
    for n in (2, 3):
        alg = build_graded(n)
        par = build_parabolic(alg)
        assert len(par["h_plus"]) == 8 * n - 12
        assert len(par["h_minus"]) == 8 * n - 12
        assert len(par["gl_mid"]) == 4 * (n - 2) ** 2
        assert len(par["h2"]) == 4
        lie = alg.algebra
        hp = [_full(alg, v) for v in par["h_plus"]]
        h2 = [_full(alg, v) for v in par["h2"]]
        if n == 2:
            for x in hp:
                for y in hp:
                    assert not any(lie.bracket(x, y))
        else:
            h2span = row_space(h2)[0]
            for x in hp:
                for y in hp:
                    w = lie.bracket(x, y)
                    if any(w):
                        assert in_span(h2span, w) is not None
            for x in hp:
                for y in h2:
                    assert not any(lie.bracket(x, y))
        # h0 normalizes h_plus
        h0 = [_full(alg, v) for v in
              par["sp1_left"] + par["sp1_right"] + par["gl_mid"] + [par["zprime"]]]
        hpspan = row_space(hp)[0]
        for x in h0:
            for y in hp:
                w = lie.bracket(x, y)
                if any(w):
                    assert in_span(hpspan, w) is not None
        # zprime weights on h_plus are positive
        zp = _full(alg, par["zprime"])
        for y in hp:
            w = lie.bracket(zp, y)
            assert any(w)


def test_first_prolongation_extremes():
    alg = build_graded(2)
    # against all of g(0): every X in g(+1) qualifies
    full = [[mpq(1) if t == i else mpq(0) for t in range(alg.dim_g0)]
            for i in range(alg.dim_g0)]
    assert len(first_prolongation(alg, full)) == alg.dim_g1
    # against 0: nothing survives
    assert first_prolongation(alg, []) == []
