"""Tests for the graded models, the equivariant map, and the deformations."""

import pytest
from gmpy2 import mpq

from aqsym.deform import (build_graded_model, deform_curvature,
                          deform_torsion, equivariant_b,
                          symmetric_pair_check)
from aqsym.hmod import build_curvature_module
from aqsym.liealg import LieAlgebra
from aqsym.linalg import in_span
from aqsym.slh import build_graded, build_parabolic


@pytest.fixture(scope="module")
def alg2():
    return build_graded(2)


@pytest.fixture(scope="module")
def curv2(alg2):
    return build_curvature_module(alg2)


@pytest.fixture(scope="module")
def b2(alg2, curv2):
    return equivariant_b(2, alg=alg2, module=curv2)


@pytest.fixture(scope="module")
def f_ii_2(alg2, curv2, b2):
    return deform_curvature(2, alg=alg2, module=curv2, bmap=b2)


@pytest.fixture(scope="module")
def f_i_2(alg2):
    return deform_torsion(2, alg=alg2)


def expected_seed(alg, rep, n):
    """The certified image of the extremal vector: four corner terms.

    With 1, i, j, k the quaternionic frame of the last layer line and
    L_1, L_i the corner-block left multiplications, the image reads
    -(1^j)(x)L_1 - (1^k)(x)L_i - (i^j)(x)L_i + (i^k)(x)L_1, normalized
    so the (1^j)(x)L_1 coefficient is -1.
    """
    base = 4 * (n - 1)
    layer_dim = 4 * n
    left_one = alg.labels.index("a1%d.1" % n) - layer_dim
    left_i = alg.labels.index("a1%d.i" % n) - layer_dim
    return {
        rep.encode((base, base + 2), left_one): mpq(-1),
        rep.encode((base, base + 3), left_i): mpq(-1),
        rep.encode((base + 1, base + 2), left_i): mpq(-1),
        rep.encode((base + 1, base + 3), left_one): mpq(1),
    }


def test_certificates_of_uniqueness(b2):
    """Weight+annihilator cut 2 candidates; equivariance picks exactly 1."""
    assert b2.candidate_dim == 2
    assert b2.solution_dim == 1
    assert b2.weight == 2


def test_seed_image_closed_form(alg2, b2):
    assert b2.seed_image == expected_seed(alg2, b2.rep, 2)


def test_extremal_maps_to_seed(curv2, b2):
    assert b2.apply(curv2.extremal()) == b2.seed_image


def test_equivariance_on_extremal(alg2, curv2, b2):
    """b(p.w) = p.b(w) for every degree-0 basis element p."""
    w = curv2.extremal()
    for p in range(alg2.dim_g0):
        mat = curv2.action_mpq(p)
        moved = [sum(row[j] * w[j] for j in range(curv2.dim) if w[j])
                 for row in mat]
        assert b2.apply(moved) == b2.rep.apply_local(p, b2.seed_image)


def test_bilinear_values_fill_corner_block(alg2, b2):
    par = build_parabolic(alg2)
    values = list(b2.bilinear().values())
    assert len(values) == 4
    for vec in values:
        assert in_span(par["h2"], vec)


def test_deformed_curvature_algebra(f_ii_2):
    assert f_ii_2.dim == 17
    assert f_ii_2.lie.jacobi_check()
    assert f_ii_2.provenance == "equivariant curvature cocycle image"
    assert f_ii_2.deformation_support() == {(4, 6), (4, 7), (5, 6), (5, 7)}
    assert symmetric_pair_check(f_ii_2)
    assert not f_ii_2.lie.is_subalgebra(f_ii_2.model.layer_vectors())
    assert f_ii_2.lie.fingerprint() == {
        "dim": 17,
        "derived_dims": [17, 15, 13],
        "lower_central_dims": [17, 15],
        "center_dim": 0,
        "radical_dim": 14,
        "levi_dim": 3,
        "nilradical_dim": 12,
        "killing_rank": 5,
    }


def test_deformed_curvature_values_central(f_ii_2):
    """Every deformed layer bracket lands in the corner center block."""
    model = f_ii_2.model
    layer = set(range(model.layer_dim))
    seen = 0
    for (a, b), entry in f_ii_2.lie.table.items():
        if a in layer and b in layer and entry:
            vec = [mpq(0)] * model.dim
            for t, c in entry.items():
                vec[t] = c
            assert in_span(model.corner, vec)
            seen += 1
    assert seen == 4


def test_deformed_torsion_algebra(f_i_2):
    assert f_i_2.dim == 17
    assert f_i_2.lie.jacobi_check()
    assert f_i_2.provenance == "torsion extremal two-cocycle"
    assert f_i_2.deformation_support() == {
        (4, 5), (4, 6), (4, 7), (5, 6), (5, 7), (6, 7)}
    assert not symmetric_pair_check(f_i_2)
    assert f_i_2.lie.fingerprint() == {
        "dim": 17,
        "derived_dims": [17, 15],
        "lower_central_dims": [17, 15],
        "center_dim": 0,
        "radical_dim": 14,
        "levi_dim": 3,
        "nilradical_dim": 12,
        "killing_rank": 5,
    }


def test_deformed_torsion_layer_is_nilpotent_ideal(f_i_2):
    model = f_i_2.model
    layer = model.layer_vectors()
    assert f_i_2.lie.is_subalgebra(layer)
    assert f_i_2.lie.is_ideal(layer)
    assert f_i_2.lie.subalgebra(layer).is_nilpotent()
    # the active line brackets into the image line only
    image = set(model.slot_indices(model.image_slot))
    active = model.slot_indices(model.active_slot)
    for a in active:
        for b in active:
            if a < b:
                entry = f_i_2.lie.table.get((a, b), {})
                assert set(k for k, c in entry.items() if c) <= image


def test_deformations_are_not_isomorphic(f_i_2, f_ii_2):
    """The two rigidity discriminators and the fingerprints all split them."""
    layer = f_i_2.model.layer_vectors()
    assert f_i_2.lie.is_subalgebra(layer)
    assert not f_ii_2.lie.is_subalgebra(layer)
    assert not symmetric_pair_check(f_i_2)
    assert symmetric_pair_check(f_ii_2)
    fp_i = f_i_2.lie.fingerprint()
    fp_ii = f_ii_2.lie.fingerprint()
    assert fp_i != fp_ii
    assert fp_i["derived_dims"] == [17, 15]
    assert fp_ii["derived_dims"] == [17, 15, 13]


def test_annihilators_similar_but_not_isomorphic(alg2):
    """Same dims, Levi, and lower-central series; different fine structure.

    The curvature annihilator keeps the scalar imaginary-quaternion
    factor as a central simple summand (it commutes with the whole
    positive part), while the torsion annihilator's simple factor acts
    on the corner block. Derived series and nilradical centralizers
    certify that no isomorphism exists.
    """
    mc = build_graded_model(2, "curvature", alg=alg2)
    mt = build_graded_model(2, "torsion", alg=alg2)
    fc = mc.ann_lie.fingerprint()
    ft = mt.ann_lie.fingerprint()
    assert fc["dim"] == ft["dim"] == 9
    assert fc["levi_dim"] == ft["levi_dim"] == 3
    assert fc["lower_central_dims"] == ft["lower_central_dims"] == [9, 7]
    assert fc["derived_dims"] == [9, 7, 3]
    assert ft["derived_dims"] == [9, 7]
    assert len(mc.ann_lie.centralizer(mc.ann_lie.nilradical())) == 7
    assert len(mt.ann_lie.centralizer(mt.ann_lie.nilradical())) == 4


def test_graded_model_structure(alg2):
    model = build_graded_model(2, "torsion", alg=alg2)
    # the layer is abelian before deformation
    layer = set(range(model.layer_dim))
    for (a, b), entry in model.lie.table.items():
        assert not (a in layer and b in layer and entry)
    # annihilator basis is weight-homogeneous with the known profile
    assert model.ann_degrees == [0] * 5 + [1] * 4
    assert model.degrees == [-1] * 8 + model.ann_degrees
    # the annihilator acts on the layer by the restricted ambient action
    amats = alg2.action_on_gm1()
    for idx, avec in enumerate(model.ann_basis):
        for j in range(model.layer_dim):
            expect = {}
            for p, cp in enumerate(avec):
                if cp:
                    for t in range(model.layer_dim):
                        if amats[p][t][j]:
                            expect[t] = (expect.get(t, mpq(0))
                                         - cp * amats[p][t][j])
            expect = {t: c for t, c in expect.items() if c}
            assert model.lie.table.get((j, model.layer_dim + idx),
                                       {}) == expect


def test_deformed_algebra_json_roundtrip(f_ii_2):
    data = f_ii_2.to_json_dict()
    rebuilt = LieAlgebra.from_json_dict(data)
    assert rebuilt.dim == f_ii_2.dim
    assert rebuilt.labels == f_ii_2.lie.labels
    assert rebuilt.table == f_ii_2.lie.table
    assert rebuilt.jacobi_check()


def test_rank_three_deformations():
    """Full n=3 pass: map, both deformations, and the discriminators."""
    alg = build_graded(3)
    module = build_curvature_module(alg)
    bmap = equivariant_b(3, alg=alg, module=module)
    assert bmap.candidate_dim == 2
    assert bmap.solution_dim == 1
    assert bmap.weight == 4
    assert bmap.seed_image == expected_seed(alg, bmap.rep, 3)

    f_ii = deform_curvature(3, alg=alg, module=module, bmap=bmap)
    assert f_ii.dim == 33
    assert f_ii.deformation_support() == {(8, 10), (8, 11), (9, 10), (9, 11)}
    assert symmetric_pair_check(f_ii)

    f_i = deform_torsion(3, alg=alg)
    assert f_i.dim == 33
    assert f_i.deformation_support() == {
        (8, 9), (8, 10), (8, 11), (9, 10), (9, 11), (10, 11)}
    assert not symmetric_pair_check(f_i)
    layer = f_i.model.layer_vectors()
    assert f_i.lie.is_ideal(layer)
    assert f_i.lie.subalgebra(layer).is_nilpotent()
    assert not f_ii.lie.is_subalgebra(layer)

    # at n=3 the coarse fingerprints coincide; the structural
    # discriminators above are what tells the algebras apart
    expected_fp = {
        "dim": 33,
        "derived_dims": [33, 30],
        "lower_central_dims": [33, 30],
        "center_dim": 0,
        "radical_dim": 27,
        "levi_dim": 6,
        "nilradical_dim": 24,
        "killing_rank": 9,
    }
    assert f_i.lie.fingerprint() == expected_fp
    assert f_ii.lie.fingerprint() == expected_fp

    # the annihilators stay non-isomorphic: the nilradical centralizer
    # has dimension 7 (simple factor + corner) vs 4 (corner only)
    ann_ii = f_ii.model.ann_lie
    ann_i = f_i.model.ann_lie
    assert ann_ii.fingerprint() == ann_i.fingerprint()
    assert len(ann_ii.centralizer(ann_ii.nilradical())) == 7
    assert len(ann_i.centralizer(ann_i.nilradical())) == 4
