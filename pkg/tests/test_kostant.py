"""Tests for the full cochain complex and the equivariant matching."""

import random

import pytest
from gmpy2 import mpq

from aqsym.cohomology import _clear_sparse_rows
from aqsym.errors import NoEquivariantIso
from aqsym.hmod import annihilator, build_curvature_module, \
    build_torsion_module
from aqsym.intmat import IntMat
from aqsym.kostant import (CochainSpace, ce_differential, h2_decompose,
                           harmonic_dimension_recheck, match_module)
from aqsym.modular import certified_kernel
from aqsym.slh import build_graded


@pytest.fixture(scope="module")
def alg2():
    return build_graded(2)


@pytest.fixture(scope="module")
def diffs2(alg2):
    return [ce_differential(alg2, k) for k in range(3)]


@pytest.fixture(scope="module")
def summands2(alg2):
    return h2_decompose(alg2)


@pytest.fixture(scope="module")
def curv2(alg2):
    return build_curvature_module(alg2)


@pytest.fixture(scope="module")
def tors2(alg2):
    return build_torsion_module(alg2)


def test_cochain_dimensions(alg2, diffs2):
    d0, d1, d2 = diffs2
    assert (d0.ncols, d1.ncols, d2.ncols, d2.nrows) == (35, 280, 980, 1960)
    c2 = CochainSpace(alg2, 2)
    for idx in (0, 77, 979):
        subset, value = c2.unindex(idx)
        assert c2.index(subset, value) == idx


def test_differential_squares_to_zero(diffs2):
    d0, d1, d2 = diffs2
    for low, high in ((d0, d1), (d1, d2)):
        for col in range(low.ncols):
            assert high.apply(low.apply({col: mpq(1)})) == {}


def test_differential_is_the_alternated_action(alg2, diffs2):
    """On a one-term cochain xi_a (x) u the differential evaluates at a
    pair (s, t) to  delta_{a,t} [x_s, u] - delta_{a,s} [x_t, u]."""
    _, d1, _ = diffs2
    c1, c2 = d1.source, d1.target
    m = alg2.dim_gm1
    samples = [(0, alg2.z_index), (3, 4 * alg2.n), (5, 0),
               (m - 1, alg2.dim - 1)]
    for a, u in samples:
        image = d1.apply({c1.index((a,), u): mpq(1)})
        expected = {}
        for s in range(m):
            for t in range(s + 1, m):
                terms = {}
                if a == t:
                    for out, c in alg2.algebra.bracket_basis(s, u).items():
                        terms[out] = terms.get(out, mpq(0)) + c
                if a == s:
                    for out, c in alg2.algebra.bracket_basis(t, u).items():
                        terms[out] = terms.get(out, mpq(0)) - c
                for out, c in terms.items():
                    if c:
                        expected[c2.index((s, t), out)] = c
        assert image == expected


def _kernel_dim(diff):
    rows = [dict() for _ in range(diff.nrows)]
    for col, entries in diff.columns.items():
        for row, c in entries:
            rows[row][col] = c
    rows = _clear_sparse_rows([r for r in rows if r])
    return len(certified_kernel(rows, diff.ncols).basis)


def test_full_complex_betti_numbers(alg2, diffs2, summands2):
    """Cohomology of the whole complex by exact rank-nullity.

    Degree 0 is the centralizer of the abelian layer (the layer itself,
    dimension 4n); degree 1 is gl(4n) modulo the faithful action of the
    degree-0 subalgebra (16n^2 - 4n^2 - 3); degree 2 must equal the sum
    of the harmonic summand dimensions computed per homogeneity by a
    completely different elimination."""
    d0, d1, d2 = diffs2
    k0, k1, k2 = (_kernel_dim(d) for d in diffs2)
    n = alg2.n
    assert k0 == 4 * n
    assert k1 - (d0.ncols - k0) == 12 * n * n - 3
    assert k2 - (d1.ncols - k1) == sum(s.dim for s in summands2)


def test_h2_decomposition(summands2):
    assert [(s.homogeneity, s.dim) for s in summands2] == [(1, 80), (2, 70)]


def test_representatives_are_cocycles_and_independent(diffs2, summands2):
    """Every harmonic representative is an exact cocycle of the full
    complex, and the 150 of them stay independent modulo exact
    coboundaries (certified rank equality)."""
    _, d1, d2 = diffs2
    reps = [emb for s in summands2 for emb in s.basis_c2]
    for emb in reps:
        assert d2.apply(emb) == {}
    image_rows = []
    for col in range(d1.ncols):
        row = d1.apply({col: mpq(1)})
        if row:
            image_rows.append(row)
    rank_img = d1.nrows - len(
        certified_kernel(_clear_sparse_rows(image_rows), d1.nrows).basis)
    stacked = _clear_sparse_rows(image_rows + reps)
    rank_all = d1.nrows - len(certified_kernel(stacked, d1.nrows).basis)
    assert rank_all == rank_img + len(reps)


def test_harmonic_dimension_recheck(alg2):
    assert harmonic_dimension_recheck(alg2, 1, seed=0) == 80
    assert harmonic_dimension_recheck(alg2, 1, seed=7) == 80
    assert harmonic_dimension_recheck(alg2, 2, seed=0) == 70


def test_grading_element_acts_by_scalar(alg2, summands2):
    z_local = alg2.z_index - 4 * alg2.n
    for s in summands2:
        mat = s.rho[z_local]
        target = IntMat([[s.homogeneity if i == j else 0
                          for j in range(s.dim)] for i in range(s.dim)])
        assert mat.eq(target)


def _spot_check_iso(iso, alg, rng, trials=3):
    summand, module = iso.summand, iso.module
    dim = module.dim
    for _ in range(trials):
        v = [mpq(rng.randint(-5, 5)) for _ in range(dim)]
        iv = iso.apply(v)
        for p in rng.sample(range(alg.dim_g0), 6):
            mv = module.action_mpq(p)
            rv = [sum(mv[i][j] * v[j] for j in range(dim))
                  for i in range(dim)]
            mh = summand.rho[p]
            lhs = iso.apply(rv)
            rhs = [mpq(sum(mh.num[i][j] * iv[j] for j in range(dim)),
                       mh.den) for i in range(dim)]
            assert lhs == rhs


def test_equivariant_match_torsion(alg2, summands2, tors2):
    iso = match_module(summands2[0], tors2)
    assert iso.apply(tors2.extremal()) == iso.image_vector
    kernel, _ = annihilator(tors2, tors2.extremal())
    for coeffs in kernel:
        mat = summands2[0].rho_combo(coeffs)
        img = [sum(mat[i][j] * iso.image_vector[j] for j in range(tors2.dim))
               for i in range(tors2.dim)]
        assert not any(img)
    _spot_check_iso(iso, alg2, random.Random(11))


def test_equivariant_match_curvature(alg2, summands2, curv2):
    iso = match_module(summands2[1], curv2)
    assert iso.apply(curv2.extremal()) == iso.image_vector
    _spot_check_iso(iso, alg2, random.Random(13))


def test_match_rejects_dimension_mismatch(summands2, curv2):
    with pytest.raises(NoEquivariantIso):
        match_module(summands2[0], curv2)
