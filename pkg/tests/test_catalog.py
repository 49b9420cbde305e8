from fractions import Fraction

import pytest

from nilgeo import catalog
from nilgeo.curvature import curvature_report, ricci_hermitian
from nilgeo.errors import ConstraintError, UnknownEntryError
from nilgeo.liealg import nilpotency_data

F = Fraction

WITH_DISPLAY = [entry.id for entry in catalog.ENTRIES if entry.displayed_metric is not None]
WITH_CONDITION = [entry.id for entry in catalog.ENTRIES if entry.hermitian_holds is not None]


def test_entry_ids():
    ids = [entry_id for entry_id, _ in catalog.list_entries()]
    assert len(ids) == 17
    assert len(set(ids)) == 17
    assert {"G1", "G5.2", "G22", "G1.riem"} <= set(ids)


def test_unknown_entry():
    with pytest.raises(UnknownEntryError):
        catalog.get_entry("G42")
    with pytest.raises(KeyError):
        catalog.instantiate("G42")


@pytest.mark.parametrize(
    "entry_id, params, constraint",
    [
        ("G1", {"t": "0", "psi11": "1", "psi12": "2"}, "t"),
        ("G1", {"t": "1", "psi11": "1", "psi12": "2"}, "t"),
        ("G1.riem", {"t": "3/2"}, "t"),
        ("G3", {"psi11": "0"}, "missing_parameter"),
        ("G3", {"psi11": "0", "psi12": "0"}, "psi12"),
        ("G3", {"psi11": "0", "psi12": "1", "t": "2"}, "unknown_parameter"),
        ("G5.2", {"psi12": "1", "psi11": "1"}, "psi11"),
        ("G5.2", {"psi12": "1", "psi34": "3"}, "psi34"),
        ("G2", {"psi11": "0", "psi12": "1", "lam": "0"}, "lam"),
    ],
)
def test_constraint_violations(entry_id, params, constraint):
    with pytest.raises(ConstraintError) as info:
        catalog.complete_params(entry_id, params)
    assert info.value.constraint == constraint


def test_derived_and_fixed_values():
    values = catalog.complete_params("G5.2", {"psi12": "2"})
    assert values["psi11"] == 0
    assert values["psi34"] == F(5, 8)
    g1 = catalog.complete_params("G1", {"t": "1/2", "psi11": "1", "psi12": "2"})
    assert g1["psi34"] == -4
    overridden = catalog.complete_params("G3", {"psi11": "0", "psi12": "1", "psi34": "3"})
    assert overridden["psi34"] == 3
    assert not catalog.is_canonical("G3", overridden)


@pytest.mark.parametrize(
    "entry_id, params, cell, value",
    [
        ("G19", {"psi45": "2"}, (0, 0), F(-2)),
        ("G6", {"psi33": "0", "psi43": "1"}, (0, 0), F(-1, 2)),
        ("G5.2", {"psi12": "1"}, (0, 0), F(-1, 4)),
        ("G5.2", {"psi12": "1"}, (1, 1), F(-1, 4)),
        ("G3", {"psi11": "0", "psi12": "1"}, (0, 1), F(0)),
    ],
)
def test_expected_ricci_values(entry_id, params, cell, value):
    assert catalog.expected_ricci(entry_id, params)[cell] == value


def test_riemannian_variant_has_no_closed_form():
    assert catalog.expected_ricci("G1.riem", {"t": "1/2"}) is None


@pytest.mark.parametrize("entry", catalog.ENTRIES, ids=lambda entry: entry.id)
def test_closed_form_ricci_matches_computation(entry):
    if entry.ricci is None:
        pytest.skip("no closed form")
    for values in catalog.sample_params(entry, 3, 17):
        inst = catalog.instantiate(entry, values)
        report = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric)
        assert report.ricci == catalog.expected_ricci(entry, values)


@pytest.mark.parametrize("entry_id", WITH_DISPLAY)
def test_displayed_metric_matches_associated_metric(entry_id):
    for values in catalog.sample_params(entry_id, 3, 23):
        inst = catalog.instantiate(entry_id, values)
        assert catalog.displayed_metric(entry_id, values) == inst.metric.matrix


def test_displayed_metric_only_for_canonical_parameters():
    assert catalog.displayed_metric("G3", {"psi11": "0", "psi12": "1", "psi34": "3"}) is None


@pytest.mark.parametrize("entry", catalog.ENTRIES, ids=lambda entry: entry.id)
def test_structure_invariants(entry):
    data = nilpotency_data(catalog.instantiate(entry).algebra)
    assert data.type_sequence == entry.structure.type_sequence
    assert data.is_filiform == entry.structure.filiform


def test_sampling_is_deterministic():
    for entry in catalog.ENTRIES:
        assert catalog.sample_params(entry, 4, 7) == catalog.sample_params(entry, 4, 7)
    assert catalog.sample_params("G3", 4, 7) != catalog.sample_params("G3", 4, 8)
    with pytest.raises(ValueError):
        catalog.sample_params("G3", 0, 1)


def test_samples_respect_constraints():
    for values in catalog.sample_params("G1.riem", 10, 3):
        assert 0 < values["t"] < 1
    for values in catalog.sample_params("G1", 10, 3):
        assert values["t"] not in (0, 1)
        assert values["psi12"] != 0
    for values in catalog.sample_params("G5.3", 10, 3):
        assert values["psi11"] == 0
        assert values["lam"] != 0


def test_riemannian_variant_is_definite():
    for values in catalog.sample_params("G1.riem", 10, 4):
        assert catalog.instantiate("G1.riem", values).metric.is_definite()


@pytest.mark.parametrize("entry_id", WITH_CONDITION)
def test_hermitian_condition_matches_computation(entry_id):
    entry = catalog.get_entry(entry_id)
    for values in catalog.sample_params(entry, 10, 9):
        inst = catalog.instantiate(entry, values)
        ric = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric).ricci
        assert ricci_hermitian(ric, inst.acs) == entry.hermitian_holds(values)


def test_off_condition_ricci_is_not_hermitian():
    inst = catalog.instantiate("G3", {"psi11": "0", "psi12": "1", "psi34": "3"})
    ric = curvature_report(inst.algebra, inst.omega, inst.acs, inst.metric).ricci
    assert not ricci_hermitian(ric, inst.acs)


def test_chain_zero_mask():
    mask = catalog.chain_zero_mask("G3")
    assert len(mask) == 12
    assert (1, 5) in mask and (4, 3) not in mask
    j = catalog.instantiate("G3").acs.matrix
    assert all(j[k - 1, c - 1] == 0 for k, c in mask)


def test_chain_terms_are_invariant_ideals():
    for entry in catalog.ENTRIES:
        if not entry.chain:
            continue
        inst = catalog.instantiate(entry)
        for term in entry.chain_subspaces():
            assert inst.algebra.is_ideal(term)
            assert all(inst.acs(v) in term for v in term.basis)
