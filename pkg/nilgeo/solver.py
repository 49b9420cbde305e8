"""Float-domain search for compatible almost complex structures.

The unknowns are the free entries of J. The residual stacks vec(J^2 + I) and
vec(J^T w + w J); both blocks are quadratic or linear in J, so the Jacobian is
assembled in closed form and Gauss-Newton steps come from least squares.
"""

from __future__ import annotations

import logging
import re
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from .errors import PreconditionError
from .exact import Matrix
from .forms import TwoForm
from .liealg import LieAlgebra, center

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-10
CURVATURE_TOLERANCE = 1e-8
ZERO_CURVATURE_BOUND = 1e-9
MAX_RESTARTS = 32
MAX_ITERATIONS = 200
START_RANGE = 2.0

_ENTRY = re.compile(r"^\s*(\d+)\s*,\s*(\d+)\s*(?:=\s*(\S+?)\s*)?$")


class FixedEntry(BaseModel):
    model_config = ConfigDict(frozen=True)

    row: int = Field(ge=1, description="1-based row of J")
    col: int = Field(ge=1, description="1-based column of J")
    value: float


class PatternSpec(BaseModel):
    """Which entries of J are forced to zero, fixed, or left free (1-based)."""

    model_config = ConfigDict(frozen=True)

    dim: int = Field(ge=1)
    zero: tuple[tuple[int, int], ...] = ()
    fixed: tuple[FixedEntry, ...] = ()

    @model_validator(mode="after")
    def _check_entries(self) -> PatternSpec:
        cells = list(self.zero) + [(f.row, f.col) for f in self.fixed]
        for r, c in cells:
            if not (1 <= r <= self.dim and 1 <= c <= self.dim):
                raise ValueError(f"entry ({r},{c}) outside a {self.dim}x{self.dim} matrix")
        fixed_cells = [(f.row, f.col) for f in self.fixed]
        if len(set(fixed_cells)) != len(fixed_cells):
            raise ValueError("an entry is fixed more than once")
        clash = set(self.zero) & set(fixed_cells)
        if clash:
            r, c = sorted(clash)[0]
            raise ValueError(f"entry ({r},{c}) is both forced zero and fixed")
        return self

    @classmethod
    def parse(cls, dim: int, fixes: Iterable[str] = (), zeros: Iterable[str] = ()) -> PatternSpec:
        """Read ``"r,c=v"`` fixes (``"r,c=0!"`` forces zero) and ``"r,c"`` zeros."""
        zero: list[tuple[int, int]] = []
        fixed: list[FixedEntry] = []
        for text in fixes:
            r, c, value = _parse_entry(text, need_value=True)
            if value.endswith("!"):
                if float(value[:-1]) != 0.0:
                    raise ValueError(f"only zero can be forced with '!': {text!r}")
                zero.append((r, c))
            else:
                fixed.append(FixedEntry(row=r, col=c, value=float(value)))
        for text in zeros:
            r, c, _ = _parse_entry(text, need_value=False)
            zero.append((r, c))
        return cls(dim=dim, zero=tuple(zero), fixed=tuple(fixed))

    def with_fixed(self, values: Mapping[tuple[int, int], float]) -> PatternSpec:
        kept = tuple(f for f in self.fixed if (f.row, f.col) not in values)
        extra = tuple(FixedEntry(row=r, col=c, value=v) for (r, c), v in sorted(values.items()))
        return PatternSpec(dim=self.dim, zero=self.zero, fixed=kept + extra)

    def merged(self, other: PatternSpec, release: Iterable[tuple[int, int]] = ()) -> PatternSpec:
        """``other`` wins on every cell it mentions; cells in ``release`` become free."""
        taken = set(other.zero) | {(f.row, f.col) for f in other.fixed} | set(release)
        return PatternSpec(
            dim=self.dim,
            zero=tuple(c for c in self.zero if c not in taken) + other.zero,
            fixed=tuple(f for f in self.fixed if (f.row, f.col) not in taken) + other.fixed,
        )

    def free_cells(self) -> list[tuple[int, int]]:
        """0-based (row, col) of entries the solver may move."""
        taken = set(self.zero) | {(f.row, f.col) for f in self.fixed}
        return [(r - 1, c - 1) for r in range(1, self.dim + 1) for c in range(1, self.dim + 1) if (r, c) not in taken]

    def base_matrix(self) -> np.ndarray:
        m = np.zeros((self.dim, self.dim))
        for f in self.fixed:
            m[f.row - 1, f.col - 1] = f.value
        return m


def _parse_entry(text: str, need_value: bool) -> tuple[int, int, str]:
    match = _ENTRY.match(text)
    if not match or (need_value and match.group(3) is None):
        shape = "r,c=v" if need_value else "r,c"
        raise ValueError(f"expected an entry of the form {shape!r}, got {text!r}")
    return int(match.group(1)), int(match.group(2)), match.group(3) or "0"


def parse_cells(texts: Iterable[str]) -> tuple[tuple[int, int], ...]:
    """1-based cells from ``"r,c"`` strings."""
    return tuple(_parse_entry(text, need_value=False)[:2] for text in texts)


def split_fixes(fixes: Iterable[str]) -> tuple[list[str], dict[tuple[int, int], list[float]]]:
    """Separate single ``"r,c=v"`` fixes from cells fixed several times.

    A cell given more than once is a varied cell: its values, in order, are
    the assignments a parameter-independence probe compares.
    """
    by_cell: dict[tuple[int, int], list[tuple[str, str]]] = {}
    for text in fixes:
        r, c, value = _parse_entry(text, need_value=True)
        by_cell.setdefault((r, c), []).append((text, value))
    single = [items[0][0] for items in by_cell.values() if len(items) == 1]
    vary = {cell: [float(v.rstrip("!")) for _, v in items] for cell, items in by_cell.items() if len(items) > 1}
    return single, vary


class SolveResult(NamedTuple):
    J: np.ndarray
    residual_norm: float
    iterations: int
    converged: bool
    restarts: int


def _as_array(omega: TwoForm | np.ndarray) -> np.ndarray:
    return omega.matrix.to_float() if isinstance(omega, TwoForm) else np.asarray(omega, dtype=np.float64)


def residual(omega: np.ndarray, j: np.ndarray) -> np.ndarray:
    n = j.shape[0]
    squared = j @ j + np.eye(n)
    compat = j.T @ omega + omega @ j
    return np.concatenate([squared.ravel(), compat.ravel()])


def residual_blocks(omega: np.ndarray, j: np.ndarray) -> tuple[float, float]:
    """Max-norms of the J^2 + I block and of the compatibility block."""
    n = j.shape[0]
    r = residual(omega, j)
    return float(np.max(np.abs(r[: n * n]))), float(np.max(np.abs(r[n * n :])))


def jacobian(omega: np.ndarray, j: np.ndarray, cells: Sequence[tuple[int, int]]) -> np.ndarray:
    n = j.shape[0]
    out = np.zeros((2 * n * n, len(cells)))
    for col, (a, b) in enumerate(cells):
        d_square = np.zeros((n, n))
        d_square[a, :] += j[b, :]
        d_square[:, b] += j[:, a]
        d_compat = np.zeros((n, n))
        d_compat[b, :] += omega[a, :]
        d_compat[:, b] += omega[:, a]
        out[: n * n, col] = d_square.ravel()
        out[n * n :, col] = d_compat.ravel()
    return out


def gauss_newton_step(omega: np.ndarray, j: np.ndarray, cells: Sequence[tuple[int, int]]) -> np.ndarray:
    """Undamped least-squares step on the free cells, returned as a full matrix."""
    delta, *_ = np.linalg.lstsq(jacobian(omega, j, cells), -residual(omega, j), rcond=None)
    step = np.zeros_like(j)
    for (a, b), d in zip(cells, delta):
        step[a, b] = d
    return step


def _descend(omega: np.ndarray, j: np.ndarray, cells, tolerance: float, max_iter: int) -> tuple[np.ndarray, int, bool]:
    for iteration in range(max_iter):
        if max(residual_blocks(omega, j)) <= tolerance:
            return j, iteration, True
        step = gauss_newton_step(omega, j, cells)
        current = np.linalg.norm(residual(omega, j))
        scale = 1.0
        while scale > 1e-12:
            trial = j + scale * step
            if np.linalg.norm(residual(omega, trial)) < current:
                j = trial
                break
            scale /= 2
        else:
            return j, iteration + 1, False
    return j, max_iter, max(residual_blocks(omega, j)) <= tolerance


def solve_compatible_acs(
    omega: TwoForm | np.ndarray,
    pattern: PatternSpec,
    seed: int = 0,
    tolerance: float = DEFAULT_TOLERANCE,
    max_iter: int = MAX_ITERATIONS,
    restarts: int = MAX_RESTARTS,
    initial: np.ndarray | None = None,
) -> SolveResult:
    """Gauss-Newton with seeded random restarts.

    ``initial`` replaces the random start of the first attempt only; fixed and
    zero entries are always taken from the pattern.
    """
    if tolerance <= 0:
        raise ValueError("tolerance must be positive")
    w = _as_array(omega)
    cells = pattern.free_cells()
    rng = np.random.default_rng(seed)
    base = pattern.base_matrix()
    total = 0
    best = base
    for attempt in range(restarts):
        start = base.copy()
        draws = rng.uniform(-START_RANGE, START_RANGE, size=len(cells))
        for (a, b), v in zip(cells, draws):
            start[a, b] = initial[a, b] if (attempt == 0 and initial is not None) else v
        j, used, ok = _descend(w, start, cells, tolerance, max_iter)
        total += used
        if ok:
            logger.debug("solver converged after %d restarts, %d iterations", attempt, total)
            return SolveResult(j, max(residual_blocks(w, j)), total, True, attempt)
        if attempt == 0 or np.linalg.norm(residual(w, j)) < np.linalg.norm(residual(w, best)):
            best = j
    logger.info("solver gave up after %d restarts", restarts)
    return SolveResult(best, max(residual_blocks(w, best)), total, False, restarts)


def fixed_point_displacement(omega: TwoForm | np.ndarray, j: np.ndarray | Matrix, pattern: PatternSpec) -> float:
    """Max-norm of one undamped Gauss-Newton step taken from ``j``."""
    w = _as_array(omega)
    jf = j.to_float() if isinstance(j, Matrix) else np.asarray(j, dtype=np.float64)
    return float(np.max(np.abs(gauss_newton_step(w, jf, pattern.free_cells()))))


def structure_array(algebra: LieAlgebra) -> np.ndarray:
    return np.array([[[float(x) for x in row] for row in plane] for plane in algebra.structure_constants])


def float_curvature(c: np.ndarray, g: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Gamma[n,i,j], R[s,i,j,k], Ric[j,k]) in floating point."""
    ginv = np.linalg.inv(g)
    t = (
        np.einsum("pk,pij->kij", g, c)
        + np.einsum("pj,pki->kij", g, c)
        + np.einsum("ip,pkj->kij", g, c)
    )
    gamma = 0.5 * np.einsum("kn,kij->nij", ginv, t)
    r = (
        np.einsum("sip,pjk->sijk", gamma, gamma)
        - np.einsum("sjp,pik->sijk", gamma, gamma)
        - np.einsum("pij,spk->sijk", c, gamma)
    )
    ric = np.einsum("ssjk->jk", r)
    return gamma, r, ric


def noncentral_pattern(algebra: LieAlgebra, j: Matrix, release: Iterable[tuple[int, int]] = ()) -> PatternSpec:
    """Freeze every row of ``j`` that does not index a central basis direction.

    Central rows stay free, as do the 1-based cells in ``release``.
    """
    central = set(center(algebra).coordinate_indices() or ())
    released = set(release)
    zero: list[tuple[int, int]] = []
    fixed: list[FixedEntry] = []
    for r in range(1, algebra.dim + 1):
        if r in central:
            continue
        for c in range(1, algebra.dim + 1):
            if (r, c) in released:
                continue
            value = j[r - 1, c - 1]
            if value:
                fixed.append(FixedEntry(row=r, col=c, value=float(value)))
            else:
                zero.append((r, c))
    return PatternSpec(dim=algebra.dim, zero=tuple(zero), fixed=tuple(fixed))


class ProbeReport(NamedTuple):
    status: str
    gamma_deviation: float | None
    riemann_deviation: float | None
    ricci_deviation: float | None
    results: list[SolveResult]
    reason: str


def _max_pairwise(arrays: Sequence[np.ndarray]) -> float:
    return max((float(np.max(np.abs(a - b))) for a, b in combinations(arrays, 2)), default=0.0)


def param_independence_probe(
    algebra: LieAlgebra,
    omega: TwoForm,
    pattern: PatternSpec,
    vary: Mapping[tuple[int, int], Sequence[float]],
    tolerance: float = CURVATURE_TOLERANCE,
    seed: int = 0,
    solve_tolerance: float = DEFAULT_TOLERANCE,
) -> ProbeReport:
    """Solve once per assignment of the varied entries and compare curvature.

    Varied entries (1-based) must sit in rows of central basis directions.
    ``status`` is ``"confirmed"`` when connection and curvature agree within
    ``tolerance`` and ``"refuted"`` when they do not. It is ``"inconclusive"``
    when a sub-solve fails to converge, or when the pattern leaves a cell of a
    non-central row free: independence is only expected when every other row
    is pinned, so a disagreement there would refute nothing.
    """
    central = center(algebra).coordinate_indices()
    for r, _ in vary:
        if central is None or r not in central:
            raise PreconditionError(f"row {r} does not index a central basis direction")
    lengths = {len(v) for v in vary.values()}
    if len(lengths) != 1 or 0 in lengths:
        raise ValueError("every varied entry needs the same nonzero number of values")
    count = lengths.pop()
    loose = [(a + 1, b + 1) for a, b in pattern.free_cells() if a + 1 not in central]
    if loose:
        r, c = loose[0]
        logger.info("%d free cells outside central rows, first (%d,%d)", len(loose), r, c)
        return ProbeReport("inconclusive", None, None, None, [],
                           f"pattern frees non-central cell ({r},{c}); hypothesis not met")
    w = _as_array(omega)
    c = structure_array(algebra)
    results, gammas, curvatures, riccis = [], [], [], []
    for index in range(count):
        assignment = {cell: float(values[index]) for cell, values in vary.items()}
        result = solve_compatible_acs(w, pattern.with_fixed(assignment), seed=seed, tolerance=solve_tolerance)
        results.append(result)
        if not result.converged:
            return ProbeReport("inconclusive", None, None, None, results,
                               f"no compatible J found for assignment {index + 1}")
        gamma, r, ric = float_curvature(c, w @ result.J)
        gammas.append(gamma)
        curvatures.append(r)
        riccis.append(ric)
    gd, rd, qd = _max_pairwise(gammas), _max_pairwise(curvatures), _max_pairwise(riccis)
    status = "confirmed" if gd <= tolerance and rd <= tolerance else "refuted"
    return ProbeReport(status, gd, rd, qd, results, f"{count} assignments compared")


class ZeroCurvatureReport(NamedTuple):
    trials: int
    passed: int
    max_curvature: float
    results: list[SolveResult]


def zero_curvature_probe(
    algebra: LieAlgebra,
    omega: TwoForm,
    trials: int = 20,
    seed: int = 0,
    bound: float = ZERO_CURVATURE_BOUND,
) -> ZeroCurvatureReport:
    if not algebra.is_abelian():
        raise PreconditionError("the zero-curvature probe needs an abelian algebra")
    w = _as_array(omega)
    c = structure_array(algebra)
    pattern = PatternSpec(dim=algebra.dim)
    results: list[SolveResult] = []
    passed = 0
    worst = 0.0
    for trial in range(trials):
        result = solve_compatible_acs(w, pattern, seed=seed + trial)
        results.append(result)
        if not result.converged:
            continue
        _, r, _ = float_curvature(c, w @ result.J)
        size = float(np.max(np.abs(r)))
        worst = max(worst, size)
        if size <= bound:
            passed += 1
    return ZeroCurvatureReport(trials, passed, worst, results)
