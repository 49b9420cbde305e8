import numpy as np
import pytest

from nilgeo import catalog
from nilgeo.curvature import curvature_report
from nilgeo.errors import PreconditionError
from nilgeo.solver import (
    PatternSpec,
    fixed_point_displacement,
    float_curvature,
    noncentral_pattern,
    param_independence_probe,
    parse_cells,
    residual_blocks,
    solve_compatible_acs,
    split_fixes,
    structure_array,
    zero_curvature_probe,
)


def test_parse_pattern():
    pattern = PatternSpec.parse(6, fixes=["1,2=-1", "2,2=0!"], zeros=["3, 4"])
    assert pattern.zero == ((2, 2), (3, 4))
    assert [(f.row, f.col, f.value) for f in pattern.fixed] == [(1, 2, -1.0)]
    assert len(pattern.free_cells()) == 33
    assert pattern.base_matrix()[0, 1] == -1.0


@pytest.mark.parametrize(
    "fixes, zeros",
    [
        (["1,2=1!"], []),
        (["1,2"], []),
        (["7,1=1"], []),
        (["1,2=1", "1,2=3"], []),
        (["1,2=1"], ["1,2"]),
        ([], ["x"]),
    ],
)
def test_parse_pattern_rejects(fixes, zeros):
    with pytest.raises(ValueError):
        PatternSpec.parse(6, fixes=fixes, zeros=zeros)


def test_split_fixes_and_cells():
    single, vary = split_fixes(["1,2=1", "6,1=0", "6,1=0.5"])
    assert single == ["1,2=1"]
    assert vary == {(6, 1): [0.0, 0.5]}
    assert parse_cells(["5,2", " 1 , 3 "]) == ((5, 2), (1, 3))


def test_merged_pattern():
    base = PatternSpec.parse(6, fixes=["1,2=1"], zeros=["1,3"])
    other = PatternSpec.parse(6, fixes=["1,3=2"])
    merged = base.merged(other, release=[(1, 2)])
    assert merged.zero == ()
    assert [(f.row, f.col, f.value) for f in merged.fixed] == [(1, 3, 2.0)]


def test_noncentral_pattern_frees_central_rows(g3):
    pattern = noncentral_pattern(g3.algebra, g3.acs.matrix)
    assert sorted(pattern.free_cells()) == [(5, c) for c in range(6)]
    released = noncentral_pattern(g3.algebra, g3.acs.matrix, release=[(1, 2)])
    assert (0, 1) in released.free_cells()
    assert catalog.probe_pattern("G3") == pattern


def test_abelian_solve_converges(abelian):
    _, omega, _ = abelian
    result = solve_compatible_acs(omega, PatternSpec(dim=6), seed=0)
    assert result.converged
    assert max(residual_blocks(omega.matrix.to_float(), result.J)) <= 1e-10


def test_solve_respects_fixed_entries(abelian):
    _, omega, _ = abelian
    pattern = PatternSpec.parse(6, fixes=["1,2=2"], zeros=["3,1", "4,1"])
    result = solve_compatible_acs(omega, pattern, seed=3)
    assert result.converged
    assert result.J[0, 1] == 2.0
    assert result.J[2, 0] == 0.0 and result.J[3, 0] == 0.0


def test_zero_column_never_converges(abelian):
    _, omega, _ = abelian
    pattern = PatternSpec.parse(6, zeros=[f"{r},1" for r in range(1, 7)])
    result = solve_compatible_acs(omega, pattern, seed=0, restarts=2, max_iter=30)
    assert not result.converged
    assert result.restarts == 2
    assert result.residual_norm >= 1.0 - 1e-9


def test_rejects_nonpositive_tolerance(abelian):
    _, omega, _ = abelian
    with pytest.raises(ValueError):
        solve_compatible_acs(omega, PatternSpec(dim=6), tolerance=0.0)


def test_catalog_structure_is_fixed_point(g3):
    pattern = noncentral_pattern(g3.algebra, g3.acs.matrix)
    assert fixed_point_displacement(g3.omega, g3.acs.matrix, pattern) < 1e-12
    result = solve_compatible_acs(g3.omega, pattern, initial=g3.acs.matrix.to_float())
    assert result.converged
    assert result.iterations == 0
    assert np.allclose(result.J, g3.acs.matrix.to_float())


@pytest.mark.parametrize("entry_id", ["G1", "G3", "G6", "G19"])
def test_float_curvature_agrees_with_exact(entry_id):
    inst = catalog.instantiate(entry_id)
    exact = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric)
    _, r, ric = float_curvature(structure_array(inst.algebra), inst.metric.matrix.to_float())
    assert np.allclose(ric, exact.ricci.to_float(), atol=1e-12)
    for s, i, j, k, value in exact.riemann_nonzero():
        assert abs(r[s - 1, i - 1, j - 1, k - 1] - float(value)) < 1e-12


def test_zero_curvature_probe(abelian):
    algebra, omega, _ = abelian
    report = zero_curvature_probe(algebra, omega, trials=5, seed=1)
    assert report.trials == 5
    assert report.passed == 5
    assert report.max_curvature == 0.0


def test_zero_curvature_probe_needs_abelian(g3):
    with pytest.raises(PreconditionError):
        zero_curvature_probe(g3.algebra, g3.omega, trials=1)


def test_probe_on_abelian_is_confirmed(abelian):
    algebra, omega, _ = abelian
    report = param_independence_probe(algebra, omega, PatternSpec(dim=6), {(1, 2): [1.0, 2.0]})
    assert report.status == "confirmed"
    assert report.riemann_deviation == 0.0
    assert [r.J[0, 1] for r in report.results] == [1.0, 2.0]


def test_probe_preconditions(g3, abelian):
    pattern = noncentral_pattern(g3.algebra, g3.acs.matrix)
    with pytest.raises(PreconditionError):
        param_independence_probe(g3.algebra, g3.omega, pattern, {(1, 2): [1.0, 2.0]})
    algebra, omega, _ = abelian
    with pytest.raises(ValueError):
        param_independence_probe(algebra, omega, PatternSpec(dim=6), {(1, 2): [1.0, 2.0], (3, 4): [1.0]})


def test_perturbed_catalog_structure_reconverges(g3):
    pattern = noncentral_pattern(g3.algebra, g3.acs.matrix)
    exact = g3.acs.matrix.to_float()
    noise = 1e-2 * np.random.default_rng(11).uniform(-1.0, 1.0, size=exact.shape)
    result = solve_compatible_acs(g3.omega, pattern, initial=exact + noise)
    assert result.converged
    assert result.restarts == 0
    assert result.iterations > 0
    assert np.max(np.abs(result.J - exact)) < 1e-8


def test_central_row_entries_leave_g6_curvature_unchanged():
    inst = catalog.instantiate("G6")
    pattern = catalog.probe_pattern("G6")
    vary = {(5, 1): [0.0, 0.5], (5, 2): [0.0, -0.3]}
    report = param_independence_probe(inst.algebra, inst.omega, pattern, vary)
    assert report.status == "confirmed", report.reason
    assert report.gamma_deviation <= 1e-8
    assert report.riemann_deviation <= 1e-8
    assert all(r.converged for r in report.results)
    assert [(r.J[4, 0], r.J[4, 1]) for r in report.results] == [(0.0, 0.0), (0.5, -0.3)]


def test_g1_central_row_variation_is_inconclusive():
    inst = catalog.instantiate("G1")
    report = param_independence_probe(inst.algebra, inst.omega, catalog.probe_pattern("G1"), {(6, 1): [0.0, 0.5]})
    assert report.status == "inconclusive"
    assert report.riemann_deviation is None
    assert not report.results[-1].converged
    assert report.reason.startswith("no compatible J found")


def test_free_noncentral_cell_is_inconclusive():
    inst = catalog.instantiate("G1")
    pattern = catalog.probe_pattern("G1", release=((5, 2),))
    report = param_independence_probe(inst.algebra, inst.omega, pattern, {(6, 1): [0.0, 0.5]})
    assert report.status == "inconclusive"
    assert "(5,2)" in report.reason
    assert "hypothesis not met" in report.reason
    assert report.results == []
    assert report.gamma_deviation is None and report.ricci_deviation is None
