import pytest

from nilgeo import catalog
from nilgeo.acs import Acs
from nilgeo.forms import TwoForm
from nilgeo.liealg import LieAlgebra


@pytest.fixture
def abelian():
    algebra = LieAlgebra.abelian(6)
    omega = TwoForm.from_terms(6, {(1, 2): 1, (3, 4): 1, (5, 6): 1})
    # J(e1) = e2, J(e3) = e4, J(e5) = e6
    j = Acs.from_images(6, {1: {2: 1}, 2: {1: -1}, 3: {4: 1}, 4: {3: -1}, 5: {6: 1}, 6: {5: -1}})
    return algebra, omega, j


@pytest.fixture
def g1():
    return catalog.instantiate("G1", {"t": "1/2", "psi11": "1", "psi12": "2"})


@pytest.fixture
def g3():
    return catalog.instantiate("G3", {"psi11": "0", "psi12": "1"})


@pytest.fixture
def g3_document():
    """The default G3 structure as a JSON-ready input document."""
    return {
        "format_version": "1",
        "algebra": {
            "dim": 6,
            "brackets": [{"i": 1, "j": k, "coeffs": {str(k + 1): "1"}} for k in range(2, 6)],
        },
        "omega": [{"i": 1, "j": 6, "value": "1"}, {"i": 2, "j": 5, "value": "-1"}, {"i": 3, "j": 4, "value": "1"}],
        "J": [
            ["0", "1", "0", "0", "0", "0"],
            ["-1", "0", "0", "0", "0", "0"],
            ["0", "0", "0", "1", "0", "0"],
            ["0", "0", "-1", "0", "0", "0"],
            ["0", "0", "0", "0", "0", "1"],
            ["0", "0", "0", "0", "-1", "0"],
        ],
    }
