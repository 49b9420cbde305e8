"""Verification suite over catalog entries.

Every (entry, sample) cell runs the same fixed list of named checks. Exact
checks pass only on an exact zero residual; float checks are marked with
``domain="float"`` and pass within the stated tolerance.
"""

from __future__ import annotations

import logging
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Literal

from pydantic import BaseModel, Field

from . import catalog
from .acs import Metric, acs_ascending_series, associated_metric, check_acs, check_compatible, classify_acs, nijenhuis
from .catalog import CatalogEntry, Params
from .curvature import (
    Connection,
    Tensor4,
    antisymmetry_residual,
    bianchi_residual,
    central_nabla_residual,
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
)
from .exact import ZERO, Matrix, Subspace, format_rational
from .forms import ce_differential, pairing_matrix
from .liealg import LieAlgebra, antisymmetry_violations, ascending_series, center, descending_series, jacobi_check, nilpotency_data
from .settings import load_settings
from .solver import PatternSpec, fixed_point_displacement

logger = logging.getLogger(__name__)

SUITE_VERSION = "1"
FIXED_POINT_TOLERANCE = 1e-12

CHECK_NAMES: tuple[str, ...] = (
    "jacobi",
    "omega_closed",
    "omega_nondegenerate",
    "j_squared",
    "compatibility",
    "metric_symmetric",
    "metric_signature",
    "metric_matches_display",
    "metric_j_invariant",
    "c1_omega_orthogonal_center",
    "jc1_metric_orthogonal_center",
    "central_isotropic",
    "central_ideal_orthogonal",
    "central_nabla_symmetric",
    "central_nabla_vanishes",
    "torsion_free",
    "metric_compatible_connection",
    "riemann_antisymmetric",
    "first_bianchi",
    "riemann_matches_definition",
    "ricci_symmetric",
    "ricci_matches_closed_form",
    "ricci_support",
    "scalar_curvature_zero",
    "curvature_square_zero",
    "hermitian_ricci",
    "nijenhuis_nonzero",
    "chain_invariant",
    "acs_series_in_ascending",
    "structure_matches",
    "splitting_hypotheses",
    "splitting_nabla",
    "splitting_curvature",
    "splitting_ricci",
    "solver_fixed_point",
)

Status = Literal["pass", "fail", "inconclusive"]


class CheckResult(BaseModel):
    name: str
    status: Status
    residual: str | None = None
    detail: str = ""
    domain: Literal["exact", "float"] = "exact"


class Report(BaseModel):
    entry: str
    sample: int = Field(ge=0)
    params: dict[str, str]
    checks: list[CheckResult]
    wall_time: float | None = Field(default=None, description="seconds; left out of JSON unless asked for")

    def failures(self) -> list[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]


class Summary(BaseModel):
    suite_version: str = SUITE_VERSION
    check_names: list[str] = Field(default_factory=lambda: list(CHECK_NAMES))
    samples: int
    seed: int
    entries: list[str]
    counts: dict[str, dict[str, int]]
    failures: int
    reports: list[Report]


class _Checks:
    """Collects results in suite order; anything never recorded is inconclusive."""

    def __init__(self):
        self._results: dict[str, CheckResult] = {}

    def record(self, name: str, status: Status, residual: Fraction | float | str | None = None,
               detail: str = "", domain: Literal["exact", "float"] = "exact") -> None:
        if name in self._results:
            raise ValueError(f"check {name} recorded twice")
        if isinstance(residual, Fraction):
            residual = format_rational(residual)
        elif isinstance(residual, float):
            residual = f"{residual:.17g}"
        self._results[name] = CheckResult(name=name, status=status, residual=residual, detail=detail, domain=domain)

    def exact(self, name: str, residual: Fraction, detail: str = "") -> bool:
        self.record(name, "pass" if residual == 0 else "fail", residual, detail)
        return residual == 0

    def flag(self, name: str, ok: bool, detail: str = "") -> bool:
        self.record(name, "pass" if ok else "fail", None, detail)
        return ok

    def skip(self, name: str, reason: str) -> None:
        self.record(name, "inconclusive", None, reason)

    def results(self, reason: str) -> list[CheckResult]:
        return [self._results.get(name) or CheckResult(name=name, status="inconclusive", detail=reason)
                for name in CHECK_NAMES]


def _max_abs(values) -> Fraction:
    return max((abs(v) for v in values), default=ZERO)


def _sig(metric: Metric) -> str:
    s = metric.signature
    return f"({s.positive},{s.negative},{s.null})"


def _structure_checks(out: _Checks, algebra: LieAlgebra, omega, j, metric: Metric, connection: Connection) -> None:
    n = algebra.dim
    z = center(algebra)
    c1 = descending_series(algebra)[1]
    out.flag("c1_omega_orthogonal_center", pairing_matrix(omega, c1, z).is_zero())
    jc1 = c1.image(j.matrix)
    jz = z.image(j.matrix)
    ok = all(not metric(x, y) for x in jc1.basis for y in z.basis) and all(
        not metric(x, y) for x in c1.basis for y in jz.basis)
    out.flag("jc1_metric_orthogonal_center", ok)

    invariant_terms = [(k, term) for k, term in enumerate(descending_series(algebra)) if k > 0 and term.dim
                       and term.image(j.matrix) == term]
    if invariant_terms:
        bad = [k for k, term in invariant_terms
               if any(metric(x, y) for x in (z & term).basis for y in (z & term).basis)]
        out.flag("central_isotropic", not bad,
                 f"J-invariant C^k for k in {[k for k, _ in invariant_terms]}" + (f"; fails for k={bad[0]}" if bad else ""))
    else:
        out.skip("central_isotropic", "no J-invariant term of the descending series")

    b = z & jz
    if b.dim:
        span = c1 + jc1
        ok = all(not metric(x, y) and not omega(x, y) for x in span.basis for y in b.basis)
        out.flag("central_ideal_orthogonal", ok, f"J-invariant central ideal of dimension {b.dim}")
    else:
        out.skip("central_ideal_orthogonal", "center contains no J-invariant ideal")

    symmetric = all(
        connection.covariant(x, y) == connection.covariant(y, x) for x in z.basis for y in Subspace.full(n).basis
    ) and all(not any(connection.covariant(x, y)) for x in z.basis for y in z.basis)
    out.flag("central_nabla_symmetric", symmetric)

    target = z if c1.image(j.matrix) == c1 else b
    if target.dim:
        witness = central_nabla_residual(connection, target)
        out.flag("central_nabla_vanishes", witness is None,
                 "" if witness is None else f"nonzero derivative {tuple(format_rational(x) for x in witness)}")
    else:
        out.skip("central_nabla_vanishes", "C^1 g is not J-invariant and no J-invariant central ideal exists")


def _curvature_checks(out: _Checks, entry: CatalogEntry, values: Params, algebra: LieAlgebra, j, metric: Metric,
                      connection: Connection) -> tuple[Tensor4, Matrix]:
    r = riemann(algebra, connection)
    ric = ricci(r)
    out.exact("torsion_free", torsion_residual(algebra, connection))
    out.exact("metric_compatible_connection", metric_compatibility_residual(metric, connection))
    out.exact("riemann_antisymmetric", antisymmetry_residual(r))
    out.exact("first_bianchi", bianchi_residual(r))
    out.exact("riemann_matches_definition", tensor_difference(r, riemann_oracle(algebra, connection)))
    out.exact("ricci_symmetric", (ric - ric.T).max_abs())

    expected = entry.ricci(values) if entry.ricci is not None else None
    if expected is None:
        out.skip("ricci_matches_closed_form", f"{entry.id} has no closed-form Ricci tensor")
    else:
        out.exact("ricci_matches_closed_form", (ric - expected).max_abs())

    if entry.ricci_support is None:
        out.skip("ricci_support", f"{entry.id} makes no support claim")
    else:
        allowed = {(0, 0)} if entry.ricci_support == "corner" else {(0, 0), (0, 1), (1, 0), (1, 1)}
        outside = _max_abs(ric[i, k] for i in range(algebra.dim) for k in range(algebra.dim) if (i, k) not in allowed)
        out.exact("ricci_support", outside, f"{entry.ricci_support} support")

    if entry.riemannian:
        out.skip("scalar_curvature_zero", "definite metrics on non-abelian nilpotent algebras have S < 0")
        out.skip("curvature_square_zero", "no vanishing claim for the definite metric")
    else:
        out.exact("scalar_curvature_zero", abs(scalar_curvature(metric, ric)))
        out.exact("curvature_square_zero", abs(curvature_scalar_square(metric, r)))

    if entry.ricci is None:
        out.skip("hermitian_ricci", f"{entry.id} makes no Hermitian claim")
    else:
        want = entry.hermitian_holds(values) if entry.hermitian_holds is not None else False
        got = ricci_hermitian(ric, j)
        out.flag("hermitian_ricci", got == want, f"expected {'Hermitian' if want else 'non-Hermitian'}, got "
                 f"{'Hermitian' if got else 'non-Hermitian'}")
    return r, ric


def _splitting_checks(out: _Checks, entry: CatalogEntry, algebra, omega, j, metric, connection, r, ric) -> None:
    parts = entry.decomposition_subspaces()
    names = ("splitting_hypotheses", "splitting_nabla", "splitting_curvature", "splitting_ricci")
    if parts is None:
        for name in names:
            out.skip(name, f"{entry.id} has no A + B + C splitting")
        return
    report = nabla_subspace_checks(algebra, omega, j, metric, *parts, connection=connection, r=r, ric=ric)
    broken = [k for k, ok in report.hypotheses.items() if not ok]
    out.flag("splitting_hypotheses", not broken, f"violated: {', '.join(broken)}" if broken else "")
    if broken:
        for name in names[1:]:
            out.skip(name, "splitting hypotheses do not hold")
        return
    groups = {
        "splitting_nabla": ("metric_bc_c_orthogonal", "nabla_preserves_bc", "nabla_preserves_c",
                          "nabla_bc_symmetric_in_c", "nabla_bc_c_vanishes"),
        "splitting_curvature": ("curvature_one_in_bc", "curvature_two_in_bc", "curvature_c_with_bc"),
        "splitting_ricci": ("ricci_vanishes_on_bc",),
    }
    for name, clauses in groups.items():
        failed = [(c, report.clauses[c]) for c in clauses if not report.clauses[c].holds]
        if failed:
            clause, outcome = failed[0]
            out.record(name, "fail", None, f"{clause}: {outcome.witness}")
        else:
            out.record(name, "pass", None, f"{len(clauses)} clauses")


def check_sample(entry: CatalogEntry, values: Params, index: int = 0) -> Report:
    """Run the whole suite on one parameter assignment."""
    started = time.perf_counter()
    out = _Checks()
    reason = "an earlier check failed"
    algebra, omega, j, values = catalog.build(entry, values)
    params = {k: format_rational(v) for k, v in sorted(values.items())}

    def finish() -> Report:
        return Report(entry=entry.id, sample=index, params=params, checks=out.results(reason),
                      wall_time=time.perf_counter() - started)

    bad = antisymmetry_violations(algebra) or jacobi_check(algebra)
    if not out.flag("jacobi", not bad, f"first failing triple {bad[0]}" if bad else ""):
        reason = "algebra is not a Lie algebra"
        return finish()

    d_omega = ce_differential(algebra, omega)
    closed = out.exact("omega_closed", _max_abs(v for _, v in d_omega.nonzero_items()))
    nondegenerate = out.flag("omega_nondegenerate", omega.is_nondegenerate(), "" if omega.is_nondegenerate() else "det(omega) = 0")
    squared = out.exact("j_squared", check_acs(j).max_abs())
    compatible = out.exact("compatibility", check_compatible(omega, j).max_abs())
    if not (closed and nondegenerate and squared and compatible):
        reason = "structure is not almost pseudo-Kahler"
        return finish()

    g = omega.matrix @ j.matrix
    out.exact("metric_symmetric", (g - g.T).max_abs())
    metric = associated_metric(omega, j)
    s = metric.signature
    if entry.riemannian:
        out.flag("metric_signature", metric.is_definite(), f"signature {_sig(metric)}")
    else:
        out.flag("metric_signature", s.positive > 0 and s.negative > 0 and s.null == 0, f"signature {_sig(metric)}")
    shown = catalog.displayed_metric(entry, values)
    if shown is None:
        out.skip("metric_matches_display", "no closed-form metric for this assignment")
    else:
        out.exact("metric_matches_display", (metric.matrix - shown).max_abs())
    out.exact("metric_j_invariant", (j.matrix.T @ metric.matrix @ j.matrix - metric.matrix).max_abs())

    connection = levi_civita(algebra, metric)
    _structure_checks(out, algebra, omega, j, metric, connection)
    r, ric = _curvature_checks(out, entry, values, algebra, j, metric, connection)

    n_tensor = nijenhuis(algebra, j)
    out.flag("nijenhuis_nonzero", any(x for plane in n_tensor for row in plane for x in row))

    chain = entry.chain_subspaces()
    if chain:
        verdict = classify_acs(algebra, j, chain)
        out.flag("chain_invariant", bool(verdict.almost_nilpotent), verdict.reason)
    else:
        out.skip("chain_invariant", f"{entry.id} lists no ideal chain")
    upper = ascending_series(algebra)
    series = acs_ascending_series(algebra, j)
    contained = all(term <= upper[min(k, len(upper) - 1)] for k, term in enumerate(series))
    out.flag("acs_series_in_ascending", contained,
             f"a_l(J) dims {[t.dim for t in series]}; J {'is' if series and series[-1].dim == algebra.dim else 'is not'} nilpotent")

    data = nilpotency_data(algebra)
    dims = tuple(t.dim for t in descending_series(algebra))
    want = entry.structure
    out.flag("structure_matches",
             data.type_sequence == want.type_sequence and dims == want.descending_dims and data.is_filiform == want.filiform,
             f"type {data.type_sequence}, descending {dims}, filiform {data.is_filiform}")

    _splitting_checks(out, entry, algebra, omega, j, metric, connection, r, ric)

    shift = fixed_point_displacement(omega, j.matrix, PatternSpec(dim=algebra.dim))
    out.record("solver_fixed_point", "pass" if shift < FIXED_POINT_TOLERANCE else "fail", shift,
               f"one Gauss-Newton step from J, tolerance {FIXED_POINT_TOLERANCE:g}", domain="float")
    return finish()


def _run_cells(cells: list[tuple[CatalogEntry, Params, int]], threads: int | None) -> list[Report]:
    threads = threads or load_settings().threads
    if threads <= 1 or len(cells) <= 1:
        return [check_sample(entry, values, index) for entry, values, index in cells]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        # map keeps submission order, i.e. (entry, sample) order
        return list(pool.map(lambda cell: check_sample(*cell), cells))


def _cells(entry: CatalogEntry, samples: int, seed: int) -> list[tuple[CatalogEntry, Params, int]]:
    return [(entry, values, i) for i, values in enumerate(catalog.sample_params(entry, samples, seed))]


def run_suite(entry: CatalogEntry | str, samples: int, seed: int, threads: int | None = None) -> list[Report]:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    entry = catalog.get_entry(entry) if isinstance(entry, str) else entry
    logger.info("verifying %s on %d samples (seed %d)", entry.id, samples, seed)
    return _run_cells(_cells(entry, samples, seed), threads)


def summarize(reports: list[Report], samples: int, seed: int) -> Summary:
    counts: dict[str, Counter] = {name: Counter() for name in CHECK_NAMES}
    for report in reports:
        for check in report.checks:
            counts[check.name][check.status] += 1
    entries = list(dict.fromkeys(r.entry for r in reports))
    failures = sum(c["fail"] for c in counts.values())
    return Summary(
        samples=samples,
        seed=seed,
        entries=entries,
        counts={name: {s: c[s] for s in ("pass", "fail", "inconclusive")} for name, c in counts.items()},
        failures=failures,
        reports=reports,
    )


def run_all(samples: int, seed: int, threads: int | None = None,
            entries: tuple[CatalogEntry, ...] | None = None,
            progress: Callable[[str], None] | None = None) -> Summary:
    if samples < 1:
        raise ValueError("samples must be at least 1")
    cells = []
    for entry in entries or catalog.ENTRIES:
        if progress:
            progress(entry.id)
        cells.extend(_cells(entry, samples, seed))
    reports = _run_cells(cells, threads)
    summary = summarize(reports, samples, seed)
    logger.info("%d reports, %d failing checks", len(reports), summary.failures)
    return summary


def failing_checks(reports: list[Report]) -> list[tuple[str, int, CheckResult]]:
    return [(r.entry, r.sample, c) for r in reports for c in r.failures()]
