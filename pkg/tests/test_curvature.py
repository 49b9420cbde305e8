from fractions import Fraction

import pytest

from nilgeo import catalog
from nilgeo.curvature import (
    antisymmetry_residual,
    apply_curvature,
    bianchi_residual,
    central_nabla_residual,
    curvature_report,
    curvature_scalar_square,
    levi_civita,
    metric_compatibility_residual,
    nabla_subspace_checks,
    ricci,
    ricci_hermitian,
    riemann,
    riemann_oracle,
    scalar_curvature,
    tensor_difference,
    torsion_residual,
    validate_structure,
)
from nilgeo.acs import Acs, Metric
from nilgeo.errors import InvalidStructureError
from nilgeo.exact import Matrix, Subspace, unit_vector
from nilgeo.forms import TwoForm
from nilgeo.liealg import LieAlgebra, center

F = Fraction

SAMPLED = ["G1", "G2", "G3", "G4", "G5.1", "G5.2", "G6", "G7.1", "G8", "G19", "G20", "G22", "G1.riem"]


def e(index: int) -> tuple[Fraction, ...]:
    return unit_vector(6, index - 1)


@pytest.fixture
def su2():
    algebra = LieAlgebra.from_brackets(3, {(1, 2): {3: 1}, (2, 3): {1: 1}, (1, 3): {2: -1}})
    return algebra, Metric(Matrix.identity(3))


def test_abelian_is_flat(abelian):
    algebra, omega, j = abelian
    report = curvature_report(algebra, omega, j)
    assert report.connection.is_zero()
    assert report.riemann_nonzero() == []
    assert report.ricci.is_zero()
    assert report.scalar == 0


def test_g3_central_direction_is_parallel(g3):
    connection = levi_civita(g3.algebra, g3.metric)
    assert center(g3.algebra) == Subspace.coordinate(6, [6])
    assert central_nabla_residual(connection, center(g3.algebra)) is None


@pytest.mark.parametrize("entry_id", SAMPLED)
def test_connection_and_curvature_identities(entry_id):
    for values in catalog.sample_params(entry_id, 2, 11):
        inst = catalog.instantiate(entry_id, values)
        connection = levi_civita(inst.algebra, inst.metric)
        assert torsion_residual(inst.algebra, connection) == 0
        assert metric_compatibility_residual(inst.metric, connection) == 0
        r = riemann(inst.algebra, connection)
        assert antisymmetry_residual(r) == 0
        assert bianchi_residual(r) == 0
        assert tensor_difference(r, riemann_oracle(inst.algebra, connection)) == 0


def test_g3_ricci_closed_form(g3):
    report = curvature_report(g3.algebra, g3.omega, g3.acs)
    half = F(-1, 2)
    expected = Matrix([[half if i == k and i < 2 else 0 for k in range(6)] for i in range(6)])
    assert report.ricci == expected


def test_g19_ricci_corner():
    inst = catalog.instantiate("G19", {"psi45": "2"})
    ric = curvature_report(inst.algebra, inst.omega, inst.acs).ricci
    assert ric[0, 0] == -2
    assert sum(1 for row in ric for x in row if x) == 1


@pytest.mark.parametrize("entry_id", SAMPLED[:-1])
def test_scalar_and_norm_vanish(entry_id):
    for values in catalog.sample_params(entry_id, 2, 5):
        inst = catalog.instantiate(entry_id, values)
        report = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric)
        assert report.scalar == 0
        assert report.curvature_square == 0


def test_riemannian_variant_has_negative_scalar():
    inst = catalog.instantiate("G1.riem", {"t": "1/3"})
    report = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric)
    assert report.signature == (6, 0, 0)
    assert report.scalar < 0
    assert report.curvature_square > 0


def test_su2_has_curvature(su2):
    algebra, metric = su2
    connection = levi_civita(algebra, metric)
    r = riemann(algebra, connection)
    ric = ricci(r)
    assert ric == Matrix.identity(3).scale(F(1, 2))
    assert scalar_curvature(metric, ric) == F(3, 2)
    assert curvature_scalar_square(metric, r) == F(3, 4)
    assert bianchi_residual(r) == 0


def test_ricci_hermitian_dichotomy():
    g8 = catalog.instantiate("G8")
    g4 = catalog.instantiate("G4")
    assert ricci_hermitian(curvature_report(g8.algebra, g8.omega, g8.acs).ricci, g8.acs)
    assert not ricci_hermitian(curvature_report(g4.algebra, g4.omega, g4.acs).ricci, g4.acs)


@pytest.mark.parametrize(
    "omega, images, invariant",
    [
        ({(1, 2): 1, (3, 4): 1, (5, 6): 1}, {1: {2: 1}, 2: {1: 1}}, "j_squared"),
        ({(1, 2): 1, (3, 4): 1}, {}, "omega_nondegenerate"),
    ],
)
def test_validate_structure_names_invariant(abelian, omega, images, invariant):
    algebra, _, j = abelian
    acs = Acs.from_images(6, images) if images else j
    with pytest.raises(InvalidStructureError) as info:
        validate_structure(algebra, TwoForm.from_terms(6, omega), acs)
    assert info.value.invariant == invariant


def test_validate_structure_rejects_open_form(g3):
    omega = TwoForm.from_terms(6, {(1, 6): 1, (2, 5): -1, (3, 4): 1, (3, 6): 1})
    with pytest.raises(InvalidStructureError) as info:
        validate_structure(g3.algebra, omega, g3.acs)
    assert info.value.invariant == "omega_closed"


def test_validate_structure_rejects_incompatible(abelian):
    algebra, omega, _ = abelian
    mixed = Acs.from_images(6, {1: {3: 1}, 3: {1: -1}, 2: {4: -1}, 4: {2: 1}, 5: {6: 1}, 6: {5: -1}})
    with pytest.raises(InvalidStructureError) as info:
        validate_structure(algebra, omega, mixed)
    assert info.value.invariant == "compatibility"


def g1_checks(values):
    inst = catalog.instantiate("G1", values)
    a, b, c = catalog.get_entry("G1").decomposition_subspaces()
    return nabla_subspace_checks(inst.algebra, inst.omega, inst.acs, inst.metric, a, b, c), inst


@pytest.mark.parametrize("values", [{"t": "1/2", "psi11": "1", "psi12": "2"}, {"t": "3", "psi11": "-2/3", "psi12": "5"}])
def test_g1_splitting_clauses(values):
    report, _ = g1_checks(values)
    assert report.hypotheses_hold, report.hypotheses
    for name in (
        "metric_bc_c_orthogonal",
        "nabla_preserves_bc",
        "nabla_preserves_c",
        "nabla_bc_symmetric_in_c",
        "nabla_bc_c_vanishes",
        "curvature_one_in_bc",
        "curvature_two_in_bc",
        "curvature_c_with_bc",
        "ricci_vanishes_on_bc",
    ):
        assert report.clauses[name].holds, (name, report.clauses[name].witness)


def test_g1_curvature_with_one_c_argument_can_be_nonzero():
    report, inst = g1_checks({"t": "1/2", "psi11": "0", "psi12": "2"})
    assert not report.clauses["curvature_one_in_c"].holds
    r = riemann(inst.algebra, levi_civita(inst.algebra, inst.metric))
    assert apply_curvature(r, e(1), e(2), e(5)) == tuple(-2 * x for x in e(6))


def test_non_split_hypotheses_are_reported(g3):
    # B = span{e1, e2} lies outside C^1 g
    a = Subspace.coordinate(6, [3, 4])
    b = Subspace.coordinate(6, [1, 2])
    c = Subspace.coordinate(6, [5, 6])
    report = nabla_subspace_checks(g3.algebra, g3.omega, g3.acs, g3.metric, a, b, c)
    assert not report.hypotheses["c1_is_b_plus_c"]
    assert not report.hypotheses_hold


def test_curvature_on_mixed_vectors_matches_full_sum():
    inst = catalog.instantiate("G5.2", catalog.sample_params("G5.2", 1, 3)[0])
    r = riemann(inst.algebra, levi_civita(inst.algebra, inst.metric))
    x = tuple(a - b for a, b in zip(e(4), e(5)))
    y = tuple(a + 2 * b for a, b in zip(e(1), e(3)))
    z = tuple(F(1, 3) * a - b for a, b in zip(e(2), e(6)))
    full = tuple(
        sum((x[i] * y[j] * z[k] * r[s][i][j][k] for i in range(6) for j in range(6) for k in range(6)), F(0))
        for s in range(6)
    )
    assert apply_curvature(r, x, y, z) == full
    assert apply_curvature(r, x, y, (F(0),) * 6) == (F(0),) * 6


def test_g5_splitting_holds_on_non_coordinate_basis():
    inst = catalog.instantiate("G5.3", catalog.sample_params("G5.3", 1, 42)[0])
    report = nabla_subspace_checks(inst.algebra, inst.omega, inst.acs, inst.metric,
                                   *catalog.get_entry("G5.3").decomposition_subspaces())
    assert report.hypotheses_hold
    for name in ("curvature_one_in_bc", "curvature_two_in_bc", "curvature_c_with_bc", "ricci_vanishes_on_bc"):
        assert report.clauses[name].holds, (name, report.clauses[name].witness)
