"""Built-in catalog of six-dimensional nilpotent symplectic Lie algebras.

Every entry carries brackets, a symplectic form family, a canonical compatible
almost complex structure, the closed form of its Ricci tensor and the ideal
chain that makes J almost nilpotent. Parameters are exact rationals keyed by
name (``t``, ``lam``, ``psi11``, ``psi12``, ...).
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Callable, Literal, Mapping, NamedTuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from .acs import Acs, Metric, complete_pair
from .curvature import validate_structure
from .errors import ConstraintError, UnknownEntryError
from .exact import ONE, ZERO, Matrix, Subspace, to_rational
from .forms import TwoForm
from .liealg import LieAlgebra
from .solver import PatternSpec, noncentral_pattern

logger = logging.getLogger(__name__)

F = Fraction
Params = dict[str, Fraction]

SAMPLE_BOUND = 16


class ParamSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: str
    kind: Literal["any", "nonzero", "not_zero_one", "unit_interval"] = "nonzero"
    default: str = "1"
    description: str = ""


class ExpectedStructure(BaseModel):
    model_config = ConfigDict(frozen=True)

    type_sequence: tuple[int, ...]
    descending_dims: tuple[int, ...]
    filiform: bool = False


class CatalogEntry(BaseModel):
    """One verified (algebra, form, J) family."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    id: str
    summary: str
    brackets: dict[tuple[int, int], dict[int, int]]
    params: tuple[ParamSpec, ...] = ()
    fixed: dict[str, str] = Field(default_factory=dict, description="parameters pinned to one value")
    derived: dict[str, Callable[[Params], Fraction]] = Field(default_factory=dict)
    overridable: frozenset[str] = Field(default=frozenset(), description="derived names a caller may supply")
    form: Callable[[Params], dict[tuple[int, int], Fraction]]
    acs: Callable[[Params], Acs]
    ricci: Callable[[Params], Matrix] | None = None
    ricci_support: Literal["block", "corner"] | None = "block"
    hermitian_condition: str | None = None
    hermitian_holds: Callable[[Params], bool] | None = None
    chain: tuple[tuple[tuple[int, ...], ...], ...] = ()
    decomposition: tuple[tuple[tuple[int, ...], ...], ...] | None = None
    displayed_metric: Callable[[Params], Matrix] | None = None
    structure: ExpectedStructure
    scalable: bool = False
    riemannian: bool = False
    notes: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return 6

    def param_names(self) -> list[str]:
        names = [p.name for p in self.params]
        if self.scalable:
            names.append("lam")
        return names + sorted(self.fixed) + sorted(self.derived)

    def chain_subspaces(self) -> list[Subspace]:
        return [Subspace(self.dim, term) for term in self.chain]

    def decomposition_subspaces(self) -> tuple[Subspace, Subspace, Subspace] | None:
        if self.decomposition is None:
            return None
        a, b, c = (Subspace(self.dim, part) for part in self.decomposition)
        return a, b, c


class Instance(NamedTuple):
    algebra: LieAlgebra
    omega: TwoForm
    acs: Acs
    metric: Metric
    params: Params


# helpers shared by the entry definitions


def _e(*indices: int) -> tuple[int, ...]:
    v = [0] * 6
    for i in indices:
        v[i - 1] = 1
    return tuple(v)


def _span(*indices: int) -> tuple[tuple[int, ...], ...]:
    return tuple(_e(i) for i in indices)


LOWER_CHAIN = (_span(5, 6), _span(3, 4, 5, 6))
STANDARD_SPLIT = (_span(1, 2), _span(3, 4), _span(5, 6))


def _rows(*rows) -> Acs:
    return Acs(Matrix(rows))


def _pairs(*pairs: tuple[int, int, Fraction, Fraction]) -> Acs:
    images: dict[int, dict[int, Fraction]] = {}
    for x, y, alpha, beta in pairs:
        images.update(complete_pair(x, y, F(alpha), F(beta)))
    return Acs.from_images(6, images)


def _block(r11: Fraction, r12: Fraction, r22: Fraction) -> Matrix:
    m = [[ZERO] * 6 for _ in range(6)]
    m[0][0], m[0][1], m[1][0], m[1][1] = r11, r12, r12, r22
    return Matrix(m)


def _sym(entries: Mapping[tuple[int, int], Fraction]) -> Matrix:
    m = [[ZERO] * 6 for _ in range(6)]
    for (i, j), v in entries.items():
        m[i - 1][j - 1] = v
        m[j - 1][i - 1] = v
    return Matrix(m)


def _lam(p: Params) -> Fraction:
    return p.get("lam", ONE)


def _scaled(terms: dict[tuple[int, int], Fraction | int], p: Params) -> dict[tuple[int, int], Fraction]:
    lam = _lam(p)
    return {pair: lam * F(v) for pair, v in terms.items()}


def _apc(p: Params) -> tuple[Fraction, Fraction, Fraction]:
    a, q = p["psi11"], p["psi12"]
    return a, q, (1 + a * a) / q


PSI11 = ParamSpec(name="psi11", kind="any", default="0", description="J(e2) = psi12 e1 - psi11 e2")
PSI12 = ParamSpec(name="psi12", kind="nonzero", default="1")


# Brackets


G1_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {5: 1}, (2, 4): {6: 1}}
G2_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {6: 1}}
G3_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}}
G4_BRACKETS = {(1, 2): {3: 1}, (1, 3): {5: 1}, (1, 5): {6: 1}, (2, 3): {4: 1}, (2, 4): {6: 1}}
G5_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {6: -1}, (2, 3): {5: 1}, (2, 5): {6: 1}}
G6_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {6: 1}}
G7_BRACKETS = {(1, 2): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {6: 1}, (2, 4): {6: 1}}
G8_BRACKETS = {(1, 3): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {5: 1}, (2, 4): {6: 1}}
G9_BRACKETS = {(1, 2): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}, (2, 3): {6: 1}}
G19_BRACKETS = {(1, 2): {4: 1}, (1, 4): {5: 1}, (1, 5): {6: 1}}
G20_BRACKETS = {(1, 2): {3: 1}, (1, 3): {4: 1}, (1, 4): {5: 1}, (2, 3): {5: 1}}
G22_BRACKETS = {(1, 2): {5: 1}, (1, 5): {6: 1}}

FILIFORM = ExpectedStructure(type_sequence=(1, 2, 3, 4, 6), descending_dims=(6, 4, 3, 2, 1, 0), filiform=True)
TYPE_1346_WIDE = ExpectedStructure(type_sequence=(1, 3, 4, 6), descending_dims=(6, 4, 3, 1, 0))
TYPE_1346_NARROW = ExpectedStructure(type_sequence=(1, 3, 4, 6), descending_dims=(6, 3, 2, 1, 0))
TYPE_2346_NARROW = ExpectedStructure(type_sequence=(2, 3, 4, 6), descending_dims=(6, 3, 2, 1, 0))


# G1


def _g1_form(p: Params) -> dict[tuple[int, int], Fraction]:
    t = p["t"]
    return {(1, 6): ONE, (2, 5): 1 - t, (3, 4): t}


def _g1_acs(p: Params) -> Acs:
    a, q, _ = _apc(p)
    t = p["t"]
    return _pairs((1, 2, q, -a), (3, 4, p["psi34"], ZERO), (5, 6, q / (t - 1), -a))


def _g1_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    t, k = p["t"], p["psi34"]
    s = -F(1, 2) / (t - 1) ** 2
    return _block(s * (a * a * q * q + (t - 1) ** 2 * k * k), s * a * q**3, s * q**4)


def _g1_metric(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    t = p["t"]
    return _sym({
        (1, 5): -(t - 1) * (1 + a * a) / q,
        (1, 6): -a,
        (2, 5): -(t - 1) * a,
        (2, 6): -q,
        (3, 3): -(t - 1) * t / q,
        (4, 4): -t * q / (t - 1),
    })


G1 = CatalogEntry(
    id="G1",
    summary="filiform, [e1,ek]=e(k+1), [e2,e3]=e5, [e2,e4]=e6; w = e16 + (1-t) e25 + t e34",
    brackets=G1_BRACKETS,
    params=(ParamSpec(name="t", kind="not_zero_one", default="1/2"), PSI11.model_copy(update={"default": "1"}),
            PSI12.model_copy(update={"default": "2"})),
    derived={"psi34": lambda p: p["psi12"] / (p["t"] - 1)},
    overridable=frozenset({"psi34"}),
    form=_g1_form,
    acs=_g1_acs,
    ricci=_g1_ricci,
    hermitian_condition="psi34 = psi12 / (t - 1)",
    hermitian_holds=lambda p: p["psi34"] ** 2 == (p["psi12"] / (p["t"] - 1)) ** 2,
    chain=LOWER_CHAIN,
    decomposition=STANDARD_SPLIT,
    displayed_metric=_g1_metric,
    structure=FILIFORM,
    notes=(
        "t plays the role of the family parameter and must avoid {0, 1}",
        "psi61 = 0 in the canonical J; curvature does not depend on it",
        "with psi34 supplied explicitly the Ricci tensor is J-Hermitian only when psi34^2 = (psi12/(t-1))^2",
    ),
)


def _g1_riem_acs(p: Params) -> Acs:
    return _pairs((6, 1, ONE, ZERO), (5, 2, ONE, ZERO), (4, 3, ONE, ZERO))


G1_RIEM = CatalogEntry(
    id="G1.riem",
    summary="G1 with J(e1)=e6, J(e2)=e5, J(e3)=e4; Riemannian for 0 < t < 1",
    brackets=G1_BRACKETS,
    params=(ParamSpec(name="t", kind="unit_interval", default="1/2"),),
    form=_g1_form,
    acs=_g1_riem_acs,
    ricci=None,
    ricci_support=None,
    displayed_metric=lambda p: _sym({(1, 1): ONE, (2, 2): 1 - p["t"], (3, 3): p["t"], (4, 4): p["t"],
                                     (5, 5): 1 - p["t"], (6, 6): ONE}),
    structure=FILIFORM,
    riemannian=True,
    notes=("g = diag(1, 1-t, t, t, 1-t, 1) is positive definite exactly when 0 < t < 1",),
)


# G2


def _g2_acs(p: Params) -> Acs:
    a, q, c = _apc(p)
    return _rows(
        (a, q, 0, 0, 0, 0),
        (-c, -a, 0, 0, 0, 0),
        (0, 0, 0, q, 0, 0),
        (0, 0, -1 / q, 0, 0, 0),
        (0, 0, -1 / q, -a, a, q),
        (0, 0, 0, c, -c, -a),
    )


def _g2_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    return _block(-q * q * (1 + a * a) / 2, -a * q**3 / 2, -(q**4) / 2)


G2 = CatalogEntry(
    id="G2",
    summary="filiform, [e1,ek]=e(k+1), [e2,e3]=e6; w = e16 - e25 + e24 + e34",
    brackets=G2_BRACKETS,
    params=(PSI11, PSI12),
    form=lambda p: _scaled({(1, 6): 1, (2, 5): -1, (2, 4): 1, (3, 4): 1}, p),
    acs=_g2_acs,
    ricci=_g2_ricci,
    hermitian_condition="psi34 = psi12 (built into the canonical J)",
    hermitian_holds=lambda p: True,
    chain=LOWER_CHAIN,
    decomposition=STANDARD_SPLIT,
    structure=FILIFORM,
    scalable=True,
    notes=("the lam-scaled family lam(e16 - e25 + e24 + e34) is the same form up to the global scale",),
)


# G3


def _g3_acs(p: Params) -> Acs:
    a, q, _ = _apc(p)
    return _pairs((1, 2, q, -a), (3, 4, p["psi34"], ZERO), (5, 6, q, -a))


def _g3_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    k = p["psi34"]
    return _block(-(a * a * q * q + k * k) / 2, -a * q**3 / 2, -(q**4) / 2)


def _g3_metric(p: Params) -> Matrix:
    a, q, c = _apc(p)
    return _sym({(1, 5): -c, (1, 6): -a, (2, 5): -a, (2, 6): -q, (3, 3): -1 / q, (4, 4): -q})


G3 = CatalogEntry(
    id="G3",
    summary="filiform, [e1,ek]=e(k+1); w = e16 - e25 + e34",
    brackets=G3_BRACKETS,
    params=(PSI11, PSI12),
    derived={"psi34": lambda p: p["psi12"]},
    overridable=frozenset({"psi34"}),
    form=lambda p: {(1, 6): ONE, (2, 5): -ONE, (3, 4): ONE},
    acs=_g3_acs,
    ricci=_g3_ricci,
    hermitian_condition="psi34 = psi12",
    hermitian_holds=lambda p: p["psi34"] ** 2 == p["psi12"] ** 2,
    chain=LOWER_CHAIN,
    decomposition=STANDARD_SPLIT,
    displayed_metric=_g3_metric,
    structure=FILIFORM,
)


# G4


def _g4_acs(p: Params) -> Acs:
    a, q, c = _apc(p)
    t, k = p["t"], p["psi34"]
    d = (-2 * q * a * t + 1 + a * a + q * q * t * t) / q
    return _rows(
        (a, q, 0, 0, 0, 0),
        (-c, -a, 0, 0, 0, 0),
        (0, 0, 0, k, 0, 0),
        (0, 0, -1 / k, 0, 0, 0),
        (0, 0, 0, -q, a - q * t, -q),
        (0, 0, 1 / k, q * t - a, d, q * t - a),
    )


def _g4_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    k = p["psi34"]
    return _block(-q * q * a * a / 2, -a * q**3 / 2, -(q**4 + k * k) / 2)


G4 = CatalogEntry(
    id="G4",
    summary="[e1,e2]=e3, [e1,e3]=e5, [e1,e5]=e6, [e2,e3]=e4, [e2,e4]=e6; w = e14 + t e15 + e16 + e25 + e34",
    brackets=G4_BRACKETS,
    params=(ParamSpec(name="t", kind="any", default="1", description="lam1 / lam2"), PSI11, PSI12,
            ParamSpec(name="psi34", kind="nonzero")),
    form=lambda p: _scaled({(1, 4): 1, (1, 5): p["t"], (1, 6): 1, (2, 5): 1, (3, 4): 1}, p),
    acs=_g4_acs,
    ricci=_g4_ricci,
    chain=LOWER_CHAIN,
    decomposition=STANDARD_SPLIT,
    structure=TYPE_1346_WIDE,
    scalable=True,
    notes=(
        "the two-parameter family lam1 e14 + lam2(...) is reached with t = lam1/lam2 and lam = lam2",
        "the bracket listing with e4 and e5 exchanged describes the same algebra",
        "Ricci tensor is not J-Hermitian for any parameter values",
    ),
)


# G5, four inequivalent forms on one algebra


def _g51_acs(p: Params) -> Acs:
    a, q, c = _apc(p)
    t, s = p["t"], p["psi35"]
    j64 = (-2 * q * a * t + q * q * t * t + 1 + a * a) / q
    return _rows(
        (a, q, 0, 0, 0, 0),
        (-c, -a, 0, 0, 0, 0),
        (0, 0, 0, 0, s, 0),
        (0, 0, 0, a - q * t, -q, -q),
        (0, 0, -1 / s, 0, 0, 0),
        (0, 0, 1 / s, j64, q * t - a, q * t - a),
    )


def _g51_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    s = p["psi35"]
    return _block(-q * q * a * a / 2, -a * q**3 / 2, -(q**4 + s * s) / 2)


def _g5_diagonal_ricci(p: Params) -> Matrix:
    q = p["psi12"]
    w = 1 + q * q
    return _block(-(w**3) / (32 * q**4), ZERO, -(w**3) / (32 * q * q))


def _g52_acs(p: Params) -> Acs:
    q = p["psi12"]
    w = 1 + q * q
    h = w / (4 * q)
    return _rows(
        (0, q, 0, 0, 0, 0),
        (-1 / q, 0, 0, 0, 0, 0),
        (-2 / q, 0, 0, h, h, 0),
        (0, 0, -4 * q / w, 0, (1 - q * q) / (2 * q), h),
        (0, 8 * q / w, 0, 0, (q * q - 1) / (2 * q), -h),
        (-32 * q / w**2, 16 * (q * q - 1) * q / w**2, 0, 0, w / q, (1 - q * q) / (2 * q)),
    )


def _g53_acs(p: Params) -> Acs:
    q = p["psi12"]
    w = 1 + q * q
    h = w / (4 * q)
    return _rows(
        (0, q, 0, 0, 0, 0),
        (-1 / q, 0, 0, 0, 0, 0),
        (0, -w / q, 1 / q, h, h, 0),
        (0, 0, -4 / q, -1 / q, -w / (2 * q), h),
        (-4 / q, 4 / q, 0, 0, (q * q - 1) / (2 * q), -h),
        (-8 / q, -8 / q, 0, 0, w / q, -(q * q - 1) / (2 * q)),
    )


def _g54_acs(p: Params) -> Acs:
    q = p["psi12"]
    w = 1 + q * q
    h = w / (4 * q)
    j61 = -16 * q**3 * (q * q - 1) / w**2
    return _rows(
        (0, q, 0, 0, 0, 0),
        (-1 / q, 0, 0, 0, 0, 0),
        (2 * q, 0, 0, h, h, 0),
        (0, 0, 2 * q * (q * q - 1) / w, 0, -(q * q - 1) / (2 * q), h),
        (0, -8 * q**3 / w, -2 * q, 0, (q * q - 1) / (2 * q), -h),
        (j61, j61, -4 * q * (q * q - 1) / w, -2 * q, (1 - q * q) / q, (1 - q * q) / (2 * q)),
    )


G5_SKEW_CHAIN = (((0, 0, 0, 1, -1, 0), _e(6)), _span(3, 4, 5, 6))
G5_SKEW_SPLIT = (_span(1, 2), _span(3, 4), ((0, 0, 0, 1, -1, 0), _e(6)))
G5_SUMMARY = "[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=-e6, [e2,e3]=e5, [e2,e5]=e6"
PSI11_ZERO = {"psi11": "0"}
PSI34_G5 = {"psi34": lambda p: (1 + p["psi12"] ** 2) / (4 * p["psi12"])}

G5_1 = CatalogEntry(
    id="G5.1",
    summary=f"{G5_SUMMARY}; w = t e14 + e15 + e16 + e24 + e35",
    brackets=G5_BRACKETS,
    params=(ParamSpec(name="t", kind="any", default="1", description="lam1 / lam2"), PSI11, PSI12,
            ParamSpec(name="psi35", kind="nonzero")),
    form=lambda p: _scaled({(1, 4): p["t"], (1, 5): 1, (1, 6): 1, (2, 4): 1, (3, 5): 1}, p),
    acs=_g51_acs,
    ricci=_g51_ricci,
    chain=(_span(4, 6), _span(3, 4, 5, 6)),
    decomposition=(_span(1, 2), _span(3, 5), _span(4, 6)),
    structure=TYPE_1346_WIDE,
    scalable=True,
    notes=("Ricci tensor is not J-Hermitian for any parameter values",),
)

G5_2 = CatalogEntry(
    id="G5.2",
    summary=f"{G5_SUMMARY}; w = e16 - 2 e15 - 2 e24 + e26 + e34 + e35",
    brackets=G5_BRACKETS,
    params=(PSI12,),
    fixed=PSI11_ZERO,
    derived=PSI34_G5,
    form=lambda p: _scaled({(1, 6): 1, (1, 5): -2, (2, 4): -2, (2, 6): 1, (3, 4): 1, (3, 5): 1}, p),
    acs=_g52_acs,
    ricci=_g5_diagonal_ricci,
    hermitian_condition="psi11 = 0, psi34 = (1 + psi12^2) / (4 psi12)",
    hermitian_holds=lambda p: True,
    chain=G5_SKEW_CHAIN,
    decomposition=G5_SKEW_SPLIT,
    structure=TYPE_1346_WIDE,
    scalable=True,
)

G5_3 = CatalogEntry(
    id="G5.3",
    summary=f"{G5_SUMMARY}; w = e14 - e15 + e16 - e24 + e25 + e26 + e34 + e35",
    brackets=G5_BRACKETS,
    params=(PSI12,),
    fixed=PSI11_ZERO,
    derived=PSI34_G5,
    form=lambda p: _scaled({(1, 4): 1, (1, 5): -1, (1, 6): 1, (2, 4): -1, (2, 5): 1, (2, 6): 1,
                            (3, 4): 1, (3, 5): 1}, p),
    acs=_g53_acs,
    ricci=_g5_diagonal_ricci,
    hermitian_condition="psi11 = 0, psi34 = (1 + psi12^2) / (4 psi12)",
    hermitian_holds=lambda p: True,
    chain=G5_SKEW_CHAIN,
    decomposition=G5_SKEW_SPLIT,
    structure=TYPE_1346_WIDE,
    scalable=True,
    notes=("J^4_5 is -(1 + psi12^2)/(2 psi12); the printed factor reads as a product",),
)

G5_4 = CatalogEntry(
    id="G5.4",
    summary=f"{G5_SUMMARY}; w = 2 e14 + e16 + 2 e25 + e26 + e34 + e35",
    brackets=G5_BRACKETS,
    params=(PSI12,),
    fixed=PSI11_ZERO,
    derived=PSI34_G5,
    form=lambda p: _scaled({(1, 4): 2, (1, 6): 1, (2, 5): 2, (2, 6): 1, (3, 4): 1, (3, 5): 1}, p),
    acs=_g54_acs,
    ricci=_g5_diagonal_ricci,
    hermitian_condition="psi11 = 0, psi34 = (1 + psi12^2) / (4 psi12)",
    hermitian_holds=lambda p: True,
    chain=G5_SKEW_CHAIN,
    decomposition=G5_SKEW_SPLIT,
    structure=TYPE_1346_WIDE,
    scalable=True,
    notes=("g_15 equals -2(psi12^2 - 1)/psi12",),
)


# G6


def _g6_acs(p: Params) -> Acs:
    u, b = p["psi33"], p["psi43"]
    return _rows(
        (0, 1, 0, 0, 0, 0),
        (-1, 0, 0, 0, 0, 0),
        (0, 0, u, -(1 + u * u) / b, 0, 0),
        (0, 0, b, -u, 0, 0),
        (0, 0, -b, u, 0, -1),
        (0, 0, 0, 1, 1, 0),
    )


def _g6_metric(p: Params) -> Matrix:
    u, b = p["psi33"], p["psi43"]
    return _sym({(1, 4): ONE, (1, 5): ONE, (2, 6): -ONE, (3, 3): -b, (3, 4): u, (4, 4): -(1 + u * u) / b})


def _corner(value: Fraction) -> Matrix:
    return _block(value, ZERO, ZERO)


G6 = CatalogEntry(
    id="G6",
    summary="[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5, [e2,e3]=e6; w = e16 + e24 + e25 - e34",
    brackets=G6_BRACKETS,
    params=(ParamSpec(name="psi33", kind="any", default="0"), ParamSpec(name="psi43", kind="nonzero")),
    form=lambda p: {(1, 6): ONE, (2, 4): ONE, (2, 5): ONE, (3, 4): -ONE},
    acs=_g6_acs,
    ricci=lambda p: _corner(-((1 + p["psi33"] ** 2) ** 2) / (2 * p["psi43"] ** 2)),
    ricci_support="corner",
    chain=LOWER_CHAIN,
    decomposition=STANDARD_SPLIT,
    displayed_metric=_g6_metric,
    structure=ExpectedStructure(type_sequence=(2, 3, 4, 6), descending_dims=(6, 4, 3, 1, 0)),
    notes=("the second form -(e16 + e24 + e25 - e34) gives the same geometry with g negated",),
)


# G7, G9 and G19 share w = e13 + e26 - e45


def _g7_acs(p: Params) -> Acs:
    a, q, _ = _apc(p)
    return _pairs((1, 2, q, -a), (6, 3, -q, -a), (4, 5, p["psi45"], ZERO))


def _g7_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    h = p["psi45"]
    w = 1 + a * a
    return _block(-(w**4 + h * h * q**4) / (2 * q**4), -(w**3) * a / (2 * q**3), -(w * w * a * a) / (2 * q * q))


def _hyperbolic_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    return _block(-a * a * q * q / 2, -a * q**3 / 2, -(q**4) / 2)


PSI45 = ParamSpec(name="psi45", kind="nonzero")

G7_1 = CatalogEntry(
    id="G7.1",
    summary="[e1,e2]=e4, [e1,e4]=e5, [e1,e5]=e6, [e2,e3]=e6, [e2,e4]=e6; w = e13 + e26 - e45",
    brackets=G7_BRACKETS,
    params=(PSI11, PSI12, PSI45),
    form=lambda p: _scaled({(1, 3): 1, (2, 6): 1, (4, 5): -1}, p),
    acs=_g7_acs,
    ricci=_g7_ricci,
    chain=(_span(3, 6), _span(3, 4, 5, 6)),
    structure=TYPE_1346_NARROW,
    scalable=True,
    notes=("Ricci tensor is not J-Hermitian for any parameter values",),
)

G7_2 = CatalogEntry(
    id="G7.2",
    summary="[e1,e2]=e4, [e1,e4]=e5, [e1,e5]=e6, [e2,e3]=e6, [e2,e4]=e6; w = e16 + e25 - e34",
    brackets=G7_BRACKETS,
    params=(PSI11, PSI12),
    form=lambda p: _scaled({(1, 6): 1, (2, 5): 1, (3, 4): -1}, p),
    acs=lambda p: _pairs((1, 2, p["psi12"], -p["psi11"]), (3, 4, ONE, ZERO), (5, 6, -p["psi12"], -p["psi11"])),
    ricci=_hyperbolic_ricci,
    chain=LOWER_CHAIN,
    structure=TYPE_1346_NARROW,
    scalable=True,
)


def _g8_ricci(p: Params) -> Matrix:
    a, q, _ = _apc(p)
    return _block(-q * q * (1 + a * a) / 2, -a * q**3 / 2, -(q**4) / 2)


G8 = CatalogEntry(
    id="G8",
    summary="[e1,e3]=e4, [e1,e4]=e5, [e1,e5]=e6, [e2,e3]=e5, [e2,e4]=e6; w = e16 + e25 - e34",
    brackets=G8_BRACKETS,
    params=(PSI11, PSI12),
    form=lambda p: {(1, 6): ONE, (2, 5): ONE, (3, 4): -ONE},
    acs=lambda p: _pairs((1, 2, p["psi12"], -p["psi11"]), (3, 4, p["psi12"], ZERO),
                         (5, 6, -p["psi12"], -p["psi11"])),
    ricci=_g8_ricci,
    hermitian_condition="psi34 = psi12 (built into the canonical J)",
    hermitian_holds=lambda p: True,
    chain=LOWER_CHAIN,
    structure=ExpectedStructure(type_sequence=(1, 2, 4, 6), descending_dims=(6, 3, 2, 1, 0)),
)

G9 = CatalogEntry(
    id="G9",
    summary="[e1,e2]=e4, [e1,e4]=e5, [e1,e5]=e6, [e2,e3]=e6; w = e13 + e26 - e45",
    brackets=G9_BRACKETS,
    params=(PSI11, PSI12, PSI45),
    form=lambda p: _scaled({(1, 3): 1, (2, 6): 1, (4, 5): -1}, p),
    acs=_g7_acs,
    ricci=_g7_ricci,
    chain=(_span(3, 6), _span(3, 4, 5, 6)),
    structure=TYPE_1346_NARROW,
    scalable=True,
    notes=("Ricci tensor is not J-Hermitian for any parameter values",),
)

G19 = CatalogEntry(
    id="G19",
    summary="[e1,e2]=e4, [e1,e4]=e5, [e1,e5]=e6; w = e13 + e26 - e45",
    brackets=G19_BRACKETS,
    params=(PSI45.model_copy(update={"default": "2"}),),
    form=lambda p: {(1, 3): ONE, (2, 6): ONE, (4, 5): -ONE},
    acs=lambda p: _pairs((1, 2, ONE, ZERO), (4, 5, p["psi45"], ZERO), (3, 6, ONE, ZERO)),
    ricci=lambda p: _corner(-p["psi45"] ** 2 / 2),
    ricci_support="corner",
    chain=(_span(3, 6), _span(3, 4, 5, 6)),
    displayed_metric=lambda p: _sym({(1, 6): ONE, (2, 3): -ONE, (4, 4): 1 / p["psi45"], (5, 5): p["psi45"]}),
    structure=TYPE_2346_NARROW,
    notes=("product of a four-dimensional factor with the abelian span{e3}",),
)

G20 = CatalogEntry(
    id="G20",
    summary="[e1,e2]=e3, [e1,e3]=e4, [e1,e4]=e5, [e2,e3]=e5; w = e16 + e25 - e34",
    brackets=G20_BRACKETS,
    params=(ParamSpec(name="psi34", kind="nonzero"),),
    form=lambda p: {(1, 6): ONE, (2, 5): ONE, (3, 4): -ONE},
    acs=lambda p: _pairs((1, 2, ONE, ZERO), (3, 4, p["psi34"], ZERO), (6, 5, ONE, ZERO)),
    ricci=lambda p: _corner(-p["psi34"] ** 2 / 2),
    ricci_support="corner",
    chain=LOWER_CHAIN,
    displayed_metric=lambda p: _sym({(1, 5): ONE, (2, 6): -ONE, (3, 3): 1 / p["psi34"], (4, 4): p["psi34"]}),
    structure=TYPE_2346_NARROW,
    notes=("product of a five-dimensional filiform factor with the abelian span{e6}",),
)

G22 = CatalogEntry(
    id="G22",
    summary="[e1,e2]=e5, [e1,e5]=e6; w = e16 + e25 + e34",
    brackets=G22_BRACKETS,
    params=(PSI11, PSI12),
    form=lambda p: {(1, 6): ONE, (2, 5): ONE, (3, 4): ONE},
    acs=lambda p: _pairs((1, 2, p["psi12"], -p["psi11"]), (3, 4, -ONE, ZERO),
                         (5, 6, -p["psi12"], -p["psi11"])),
    ricci=_hyperbolic_ricci,
    chain=LOWER_CHAIN,
    structure=ExpectedStructure(type_sequence=(3, 4, 6), descending_dims=(6, 2, 1, 0)),
    notes=("product of the four-dimensional filiform algebra with the abelian span{e3, e4}",),
)

ENTRIES: tuple[CatalogEntry, ...] = (
    G1, G2, G3, G4, G5_1, G5_2, G5_3, G5_4, G6, G7_1, G7_2, G8, G9, G19, G20, G22, G1_RIEM,
)
_BY_ID = {entry.id: entry for entry in ENTRIES}


def list_entries() -> list[tuple[str, str]]:
    return [(entry.id, entry.summary) for entry in ENTRIES]


def get_entry(entry_id: str) -> CatalogEntry:
    try:
        return _BY_ID[entry_id]
    except KeyError:
        raise UnknownEntryError(entry_id) from None


def _resolve(entry: CatalogEntry | str) -> CatalogEntry:
    return get_entry(entry) if isinstance(entry, str) else entry


def default_params(entry: CatalogEntry | str) -> Params:
    entry = _resolve(entry)
    values = {spec.name: to_rational(spec.default) for spec in entry.params}
    if entry.scalable:
        values["lam"] = ONE
    return complete_params(entry, values)


def _check_kind(spec: ParamSpec, value: Fraction) -> None:
    if spec.kind == "nonzero" and not value:
        raise ConstraintError(spec.name, f"{spec.name} must be nonzero")
    if spec.kind == "not_zero_one" and value in (0, 1):
        raise ConstraintError(spec.name, f"{spec.name} must avoid {{0,1}}")
    if spec.kind == "unit_interval" and not 0 < value < 1:
        raise ConstraintError(spec.name, f"{spec.name} must lie strictly between 0 and 1")


def complete_params(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str]) -> Params:
    """Check an assignment against the entry's constraints and add fixed and derived values.

    Missing sampled parameters are an error; fixed parameters may be omitted
    but must match when given. Derived parameters are computed unless the entry
    marks them overridable and the caller supplies them.
    """
    entry = _resolve(entry)
    given = {name: to_rational(value) for name, value in params.items()}
    known = set(entry.param_names())
    unknown = sorted(set(given) - known)
    if unknown:
        raise ConstraintError("unknown_parameter", f"{entry.id} has no parameter {unknown[0]!r}")
    out: Params = {}
    for spec in entry.params:
        if spec.name not in given:
            raise ConstraintError("missing_parameter", f"{entry.id} needs {spec.name}")
        _check_kind(spec, given[spec.name])
        out[spec.name] = given[spec.name]
    if entry.scalable:
        lam = given.get("lam", ONE)
        if not lam:
            raise ConstraintError("lam", "lam must be nonzero")
        out["lam"] = lam
    for name, text in sorted(entry.fixed.items()):
        value = to_rational(text)
        if name in given and given[name] != value:
            raise ConstraintError(name, f"{name} must be {text} for {entry.id}")
        out[name] = value
    for name, rule in sorted(entry.derived.items()):
        if name in given and name in entry.overridable:
            if not given[name]:
                raise ConstraintError(name, f"{name} must be nonzero")
            out[name] = given[name]
            continue
        value = rule(out)
        if name in given and given[name] != value:
            raise ConstraintError(name, f"{name} is determined as {value} for {entry.id}")
        out[name] = value
    return out


def is_canonical(entry: CatalogEntry | str, params: Params) -> bool:
    """True when every derived parameter takes its canonical value."""
    entry = _resolve(entry)
    base = {k: v for k, v in params.items() if k not in entry.derived}
    return all(params[name] == rule(base) for name, rule in entry.derived.items())


def build(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str] | None = None,
          ) -> tuple[LieAlgebra, TwoForm, Acs, Params]:
    """Raw parts without any validity checks, for callers that test them one by one."""
    entry = _resolve(entry)
    values = default_params(entry) if params is None else complete_params(entry, params)
    algebra = LieAlgebra.from_brackets(entry.dim, entry.brackets, validate=False)
    omega = TwoForm.from_terms(entry.dim, entry.form(values))
    return algebra, omega, entry.acs(values), values


def instantiate(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str] | None = None) -> Instance:
    """Validated structure; raises InvalidStructureError or ConstraintError."""
    entry = _resolve(entry)
    raw, omega, j, values = build(entry, params)
    algebra = LieAlgebra(raw.dim, raw.structure_constants)
    metric = validate_structure(algebra, omega, j)
    logger.debug("instantiated %s at %s", entry.id, values)
    return Instance(algebra, omega, j, metric, values)


def expected_ricci(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str]) -> Matrix | None:
    entry = _resolve(entry)
    if entry.ricci is None:
        return None
    return entry.ricci(complete_params(entry, params))


def displayed_metric(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str]) -> Matrix | None:
    entry = _resolve(entry)
    values = complete_params(entry, params)
    if entry.displayed_metric is None or not is_canonical(entry, values):
        return None
    return entry.displayed_metric(values).scale(_lam(values))


def _draw(rng: np.random.Generator, kind: str) -> Fraction:
    while True:
        if kind == "unit_interval":
            den = int(rng.integers(2, SAMPLE_BOUND + 1))
            return F(int(rng.integers(1, den)), den)
        value = F(int(rng.integers(-SAMPLE_BOUND, SAMPLE_BOUND + 1)), int(rng.integers(1, SAMPLE_BOUND + 1)))
        if kind == "any":
            return value
        if value and not (kind == "not_zero_one" and value == 1):
            return value


def sample_params(entry: CatalogEntry | str, count: int, seed: int) -> list[Params]:
    """Deterministic admissible rational assignments for ``entry``."""
    entry = _resolve(entry)
    if count < 1:
        raise ValueError("count must be at least 1")
    rng = np.random.default_rng(seed)
    samples = []
    for _ in range(count):
        values = {spec.name: _draw(rng, spec.kind) for spec in entry.params}
        if entry.scalable:
            values["lam"] = _draw(rng, "nonzero")
        samples.append(complete_params(entry, values))
    return samples


def probe_pattern(entry: CatalogEntry | str, params: Mapping[str, Fraction | int | str] | None = None,
                  release: tuple[tuple[int, int], ...] = ()) -> PatternSpec:
    """Pattern that keeps every non-central row of J at its catalog value.

    Rows indexed by central basis directions stay free, as do the 1-based
    cells in ``release``. Used to test whether curvature depends on the free
    central-row entries.
    """
    inst = instantiate(entry, params)
    return noncentral_pattern(inst.algebra, inst.acs.matrix, release)


def chain_zero_mask(entry: CatalogEntry | str) -> tuple[tuple[int, int], ...]:
    """Cells J^k_j forced to zero by J-invariance of the coordinate chain terms."""
    entry = _resolve(entry)
    cells: set[tuple[int, int]] = set()
    for term in entry.chain_subspaces():
        inside = term.coordinate_indices()
        if inside is None:
            continue
        outside = [k for k in range(1, entry.dim + 1) if k not in inside]
        cells.update((k, j) for j in inside for k in outside)
    return tuple(sorted(cells))
