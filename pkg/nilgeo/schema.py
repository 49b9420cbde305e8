"""JSON documents read and written by the command line.

Exact quantities travel as rational strings ("3/4"); solver output uses plain
JSON floats, which round-trip to the same 64-bit value. All indices are 1-based
and J is stored row-major with column j holding the coordinates of J(e_j).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from pydantic import BaseModel, Field, ValidationError

from .acs import Acs
from .curvature import CurvatureReport
from .errors import DimensionError, DocumentError
from .exact import Matrix, format_rational, to_rational
from .forms import TwoForm
from .liealg import LieAlgebra
from .solver import PatternSpec, ProbeReport, SolveResult, ZeroCurvatureReport
from .verify import Summary

FORMAT_VERSION = "1"


class BracketTerm(BaseModel):
    """[e_i, e_j] = sum over coeffs of value * e_k."""

    i: int = Field(ge=1)
    j: int = Field(ge=1)
    coeffs: dict[int, str]


class AlgebraFragment(BaseModel):
    dim: int = Field(ge=1, le=64)
    brackets: list[BracketTerm] = Field(default_factory=list)


class FormTerm(BaseModel):
    """value * e^i ^ e^j."""

    i: int = Field(ge=1)
    j: int = Field(ge=1)
    value: str


class InputDocument(BaseModel):
    format_version: str = FORMAT_VERSION
    algebra: AlgebraFragment
    omega: list[FormTerm]
    J: list[list[str]] | None = None
    params: dict[str, str] = Field(default_factory=dict)


def _location(loc: tuple) -> str:
    out = ""
    for part in loc:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else str(part))
    return out


def _rational(text: str, where: str) -> Fraction:
    try:
        return to_rational(text)
    except (TypeError, ValueError) as e:
        raise DocumentError(where, str(e)) from None


def load_document(text: str) -> InputDocument:
    try:
        doc = InputDocument.model_validate_json(text)
    except ValidationError as e:
        first = e.errors()[0]
        raise DocumentError(_location(first["loc"]), first["msg"]) from None
    if doc.format_version != FORMAT_VERSION:
        raise DocumentError("format_version", f"unsupported version {doc.format_version!r}")
    return doc


def algebra_from(fragment: AlgebraFragment) -> LieAlgebra:
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for index, term in enumerate(fragment.brackets):
        where = f"algebra.brackets[{index}]"
        if max(term.i, term.j) > fragment.dim:
            raise DocumentError(where, f"bracket indices ({term.i},{term.j}) outside 1..{fragment.dim}")
        for k in term.coeffs:
            if not 1 <= k <= fragment.dim:
                raise DocumentError(f"{where}.coeffs.{k}", f"result index {k} outside 1..{fragment.dim}")
        if term.i == term.j:
            raise DocumentError(where, "i and j must differ")
        i, j = (term.i, term.j) if term.i < term.j else (term.j, term.i)
        sign = 1 if term.i < term.j else -1
        slot = brackets.setdefault((i, j), {})
        for k, text in term.coeffs.items():
            slot[k] = slot.get(k, Fraction(0)) + sign * _rational(text, f"{where}.coeffs.{k}")
    return LieAlgebra.from_brackets(fragment.dim, brackets)


def omega_from(terms: list[FormTerm], dim: int) -> TwoForm:
    values: dict[tuple[int, int], Fraction] = {}
    for index, term in enumerate(terms):
        where = f"omega[{index}]"
        if term.i == term.j or max(term.i, term.j) > dim:
            raise DocumentError(where, f"need distinct indices in 1..{dim}")
        values[(term.i, term.j)] = values.get((term.i, term.j), Fraction(0)) + _rational(term.value, f"{where}.value")
    return TwoForm.from_terms(dim, values)


def acs_from(rows: list[list[str]], dim: int) -> Acs:
    if len(rows) != dim or any(len(row) != dim for row in rows):
        raise DocumentError("J", f"expected a {dim}x{dim} matrix")
    return Acs(Matrix([[_rational(x, f"J[{r}][{c}]") for c, x in enumerate(row)] for r, row in enumerate(rows)]))


def parse_structure(doc: InputDocument) -> tuple[LieAlgebra, TwoForm, Acs | None]:
    """Turn a document into module types; InvalidStructureError names a broken invariant."""
    try:
        algebra = algebra_from(doc.algebra)
        omega = omega_from(doc.omega, doc.algebra.dim)
        j = acs_from(doc.J, doc.algebra.dim) if doc.J is not None else None
    except DimensionError as e:
        raise DocumentError("", str(e)) from None
    return algebra, omega, j


def _matrix_rows(m: Matrix) -> list[list[str]]:
    return [[format_rational(x) for x in row] for row in m]


def structure_document(algebra: LieAlgebra, omega: TwoForm, j: Acs | None = None,
                       params: dict[str, Fraction] | None = None) -> InputDocument:
    return InputDocument(
        algebra=AlgebraFragment(
            dim=algebra.dim,
            brackets=[BracketTerm(i=i, j=jj, coeffs={k: format_rational(v) for k, v in sorted(coeffs.items())})
                      for i, jj, coeffs in algebra.nonzero_brackets()],
        ),
        omega=[FormTerm(i=i, j=jj, value=format_rational(v)) for i, jj, v in omega.terms()],
        J=_matrix_rows(j.matrix) if j is not None else None,
        params={k: format_rational(v) for k, v in sorted((params or {}).items())},
    )


def curvature_payload(report: CurvatureReport, algebra: LieAlgebra, omega: TwoForm, j: Acs,
                      nijenhuis_nonzero: bool | None = None) -> dict[str, Any]:
    s = report.signature
    payload: dict[str, Any] = {
        "format_version": FORMAT_VERSION,
        "input": structure_document(algebra, omega, j).model_dump(mode="json", exclude={"params"}),
        "metric": _matrix_rows(report.metric.matrix),
        "signature": [s.positive, s.negative, s.null],
        "gamma": [{"n": n, "i": i, "j": jj, "value": format_rational(v)} for n, i, jj, v in report.gamma_nonzero()],
        "riemann_nonzero": [{"s": si, "i": i, "j": jj, "k": k, "value": format_rational(v)}
                            for si, i, jj, k, v in report.riemann_nonzero()],
        "ricci": _matrix_rows(report.ricci),
        "scalar": format_rational(report.scalar),
        "RR": format_rational(report.curvature_square),
        "hermitian_ricci": report.hermitian_ricci,
    }
    if nijenhuis_nonzero is not None:
        payload["nijenhuis_nonzero"] = nijenhuis_nonzero
    return payload


def pattern_payload(pattern: PatternSpec) -> dict[str, Any]:
    return {
        "zero": [list(cell) for cell in pattern.zero],
        "fixed": [{"row": f.row, "col": f.col, "value": f.value} for f in pattern.fixed],
    }


def solve_payload(result: SolveResult, pattern: PatternSpec, seed: int, tolerance: float) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "solve",
        "converged": result.converged,
        "residual_norm": float(result.residual_norm),
        "iterations": result.iterations,
        "restarts": result.restarts,
        "seed": seed,
        "tolerance": tolerance,
        "pattern": pattern_payload(pattern),
        "J": [[float(x) for x in row] for row in result.J],
    }


def probe_payload(report: ProbeReport, pattern: PatternSpec, vary: dict[tuple[int, int], list[float]],
                  tolerance: float) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "param_independence",
        "status": report.status,
        "reason": report.reason,
        "tolerance": tolerance,
        "vary": [{"row": r, "col": c, "values": list(v)} for (r, c), v in sorted(vary.items())],
        "gamma_deviation": report.gamma_deviation,
        "riemann_deviation": report.riemann_deviation,
        "ricci_deviation": report.ricci_deviation,
        "pattern": pattern_payload(pattern),
        "solves": [{"converged": r.converged, "residual_norm": float(r.residual_norm),
                    "J": [[float(x) for x in row] for row in r.J]} for r in report.results],
    }


def zero_curvature_payload(report: ZeroCurvatureReport, bound: float) -> dict[str, Any]:
    return {
        "format_version": FORMAT_VERSION,
        "kind": "zero_curvature",
        "trials": report.trials,
        "passed": report.passed,
        "max_curvature": report.max_curvature,
        "bound": bound,
        "converged": sum(1 for r in report.results if r.converged),
    }


def summary_payload(summary: Summary, timings: bool = False) -> dict[str, Any]:
    exclude = None if timings else {"reports": {"__all__": {"wall_time"}}}
    payload = summary.model_dump(exclude=exclude)
    return {"format_version": FORMAT_VERSION, **payload}


def parse_summary(text: str) -> Summary:
    data = json.loads(text)
    version = data.pop("format_version", None)
    if version != FORMAT_VERSION:
        raise DocumentError("format_version", f"unsupported version {version!r}")
    return Summary.model_validate(data)


def dumps(payload: Any) -> str:
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"
