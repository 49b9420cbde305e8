import argparse
import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, Field, model_validator

from .. import catalog
from ..display import console, failure
from ..errors import PreconditionError
from ..liealg import LieAlgebra
from ..schema import dumps, load_document, parse_structure, probe_payload, solve_payload, zero_curvature_payload
from ..solver import (
    CURVATURE_TOLERANCE,
    DEFAULT_TOLERANCE,
    ZERO_CURVATURE_BOUND,
    PatternSpec,
    noncentral_pattern,
    param_independence_probe,
    parse_cells,
    solve_compatible_acs,
    split_fixes,
    zero_curvature_probe,
)
from .show import parse_assignments

logger = logging.getLogger(__name__)

NOT_CONVERGED = 4


class SolveParams(BaseModel):
    """Parameters for the solve command."""

    group: str | None = Field(default=None, description="Catalog id supplying algebra, form and reference J")
    input: Path | None = Field(default=None, description="JSON document supplying algebra, form and optional J")
    fix: list[str] = Field(default_factory=list, description="r,c=v; a cell given twice is varied by the probe")
    zero: list[str] = Field(default_factory=list, description="r,c forced to zero")
    free: list[str] = Field(default_factory=list, description="r,c released from the reference J")
    param: list[str] = Field(default_factory=list, description="Catalog parameters as name=value")
    seed: int = Field(default=0, ge=0)
    tol: float = Field(default=DEFAULT_TOLERANCE, gt=0, description="Residual tolerance for each solve")
    probe: Literal["param-independence", "zero-curvature"] | None = None
    trials: int = Field(default=20, ge=1, description="Solves run by the zero-curvature probe")
    out: Path | None = None

    @model_validator(mode="after")
    def _one_source(self) -> "SolveParams":
        if (self.group is None) == (self.input is None):
            raise ValueError("give exactly one of --group and --input")
        return self


def _source(params: SolveParams):
    """(algebra, omega, reference J or None)."""
    if params.group is not None:
        entry = catalog.get_entry(params.group)
        values = {spec.name: spec.default for spec in entry.params}
        values.update(parse_assignments(params.param))
        inst = catalog.instantiate(entry, values)
        return inst.algebra, inst.omega, inst.acs
    doc = load_document(params.input.read_text(encoding="utf-8"))
    algebra, omega, j = parse_structure(doc)
    return algebra, omega, j


def _pattern(params: SolveParams, algebra: LieAlgebra, reference) -> tuple[PatternSpec, dict]:
    single, vary = split_fixes(params.fix)
    user = PatternSpec.parse(algebra.dim, single, params.zero)
    release = parse_cells(params.free) + tuple(vary)
    base = noncentral_pattern(algebra, reference.matrix) if reference is not None else PatternSpec(dim=algebra.dim)
    return base.merged(user, release), vary


def _emit(payload: dict, out: Path | None) -> None:
    text = dumps(payload)
    if out is None:
        console.print(text, markup=False, highlight=False, soft_wrap=True, end="")
    else:
        out.write_text(text, encoding="utf-8")


def solve(params: SolveParams) -> int:
    algebra, omega, reference = _source(params)

    if params.probe == "zero-curvature":
        report = zero_curvature_probe(algebra, omega, trials=params.trials, seed=params.seed)
        _emit(zero_curvature_payload(report, ZERO_CURVATURE_BOUND), params.out)
        unconverged = sum(1 for r in report.results if not r.converged)
        if unconverged:
            failure(f"{unconverged} of {report.trials} solves did not converge")
            return NOT_CONVERGED
        return 0 if report.passed == report.trials else 1

    pattern, vary = _pattern(params, algebra, reference)
    logger.info("solving with %d free entries", len(pattern.free_cells()))

    if params.probe == "param-independence":
        if not vary:
            raise PreconditionError("the probe needs a cell fixed at least twice, e.g. --fix 6,1=0 --fix 6,1=0.5")
        report = param_independence_probe(algebra, omega, pattern, vary, CURVATURE_TOLERANCE, params.seed, params.tol)
        _emit(probe_payload(report, pattern, vary, CURVATURE_TOLERANCE), params.out)
        if report.status == "inconclusive":
            failure(report.reason)
            return NOT_CONVERGED
        return 0 if report.status == "confirmed" else 1

    if vary:
        raise PreconditionError("a cell fixed more than once needs --probe param-independence")
    initial = reference.matrix.to_float() if reference is not None else None
    result = solve_compatible_acs(omega, pattern, seed=params.seed, tolerance=params.tol, initial=initial)
    _emit(solve_payload(result, pattern, params.seed, params.tol), params.out)
    if not result.converged:
        failure(f"no compatible J within {params.tol:g}: best residual {result.residual_norm:.3g} "
                f"after {result.restarts} restarts and {result.iterations} iterations")
        return NOT_CONVERGED
    return 0


def register(sub: argparse._SubParsersAction) -> None:
    cmd = sub.add_parser("solve", help="Numerically find compatible almost complex structures")
    source = cmd.add_mutually_exclusive_group(required=True)
    source.add_argument("--group")
    source.add_argument("--input", type=Path)
    cmd.add_argument("--fix", action="append", default=[], metavar="R,C=V")
    cmd.add_argument("--zero", action="append", default=[], metavar="R,C")
    cmd.add_argument("--free", action="append", default=[], metavar="R,C")
    cmd.add_argument("--param", action="append", default=[], metavar="NAME=VALUE")
    cmd.add_argument("--seed", type=int, default=0)
    cmd.add_argument("--tol", type=float, default=DEFAULT_TOLERANCE)
    cmd.add_argument("--probe", nargs="?", const="param-independence",
                     choices=["param-independence", "zero-curvature"])
    cmd.add_argument("--trials", type=int, default=20)
    cmd.add_argument("--out", type=Path)
