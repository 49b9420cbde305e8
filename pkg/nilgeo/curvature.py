"""Levi-Civita connection and curvature of a left-invariant metric.

With [e_i, e_j] = C^k_ij e_k and a constant metric g, the connection is

    G^n_ij = 1/2 g^{kn} (g_pk C^p_ij + g_pj C^p_ki + g_ip C^p_kj)

and the curvature R(e_i, e_j) e_k = R^s_ijk e_s is

    R^s_ijk = G^s_ip G^p_jk - G^s_jp G^p_ik - C^p_ij G^s_pk.

Ric_jk = R^s_sjk, S = g^{jk} Ric_jk, and g(R, R) contracts the fully lowered
tensor R_ijkl = g_ls R^s_ijk against itself with four inverse metrics.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import product
from typing import NamedTuple, Sequence

from .acs import Acs, Metric, associated_metric, check_acs, check_compatible, j_invariant
from .errors import InvalidStructureError
from .exact import ZERO, Matrix, Signature, Subspace, Vector, unit_vector
from .forms import TwoForm, are_dual, ce_differential, is_isotropic, is_nondegenerate_on, omega_orthogonal
from .liealg import LieAlgebra, descending_series

logger = logging.getLogger(__name__)

Tensor3 = tuple[tuple[tuple[Fraction, ...], ...], ...]
Tensor4 = tuple[tuple[tuple[tuple[Fraction, ...], ...], ...], ...]

HALF = Fraction(1, 2)


def _freeze3(a) -> Tensor3:
    return tuple(tuple(tuple(r) for r in p) for p in a)


def _freeze4(a) -> Tensor4:
    return tuple(tuple(tuple(tuple(r) for r in q) for q in p) for p in a)


class Connection:
    """Left-invariant connection with nabla_{e_i} e_j = G[n][i][j] e_n."""

    __slots__ = ("dim", "gamma")

    def __init__(self, gamma: Tensor3):
        self.dim = len(gamma)
        self.gamma = _freeze3(gamma)

    def covariant(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        """nabla_X Y for constant-coefficient fields X and Y."""
        n = self.dim
        out = [ZERO] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                w = xi * yj
                for k in range(n):
                    g = self.gamma[k][i][j]
                    if g:
                        out[k] += w * g
        return tuple(out)

    def is_zero(self) -> bool:
        return not any(x for p in self.gamma for r in p for x in r)


def levi_civita(algebra: LieAlgebra, metric: Metric) -> Connection:
    n = algebra.dim
    c = algebra.structure_constants
    g = metric.matrix
    ginv = metric.inverse
    nonzero_c = [(p, a, b, c[p][a][b]) for p in range(n) for a in range(n) for b in range(n) if c[p][a][b]]
    t = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for p, a, b, v in nonzero_c:
        for k in range(n):
            # g_pk C^p_ij with (i, j) = (a, b)
            if g[p, k]:
                t[k][a][b] += g[p, k] * v
            # g_pj C^p_ki with (k, i) = (a, b)
            if g[p, k]:
                t[a][b][k] += g[p, k] * v
            # g_ip C^p_kj with (k, j) = (a, b)
            if g[k, p]:
                t[a][k][b] += g[k, p] * v
    gamma = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for k, i, j in product(range(n), repeat=3):
        v = t[k][i][j]
        if not v:
            continue
        for m in range(n):
            if ginv[m, k]:
                gamma[m][i][j] += HALF * ginv[m, k] * v
    return Connection(gamma)


def riemann(algebra: LieAlgebra, connection: Connection) -> Tensor4:
    """R[s][i][j][k] by the index formula, skipping zero products."""
    n = algebra.dim
    gam = connection.gamma
    c = algebra.structure_constants
    # by_upper[p]: (j, k, G^p_jk); by_first[p]: (s, k, G^s_pk)
    by_upper = [[(j, k, gam[p][j][k]) for j in range(n) for k in range(n) if gam[p][j][k]] for p in range(n)]
    by_first = [[(s, k, gam[s][p][k]) for s in range(n) for k in range(n) if gam[s][p][k]] for p in range(n)]
    r = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for s, i, p in product(range(n), repeat=3):
        v = gam[s][i][p]
        if not v:
            continue
        for j, k, w in by_upper[p]:
            prod = v * w
            r[s][i][j][k] += prod
            r[s][j][i][k] -= prod
    for p, i, j in product(range(n), repeat=3):
        v = c[p][i][j]
        if not v:
            continue
        for s, k, w in by_first[p]:
            r[s][i][j][k] -= v * w
    return _freeze4(r)


def riemann_oracle(algebra: LieAlgebra, connection: Connection) -> Tensor4:
    """R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z on basis triples."""
    n = algebra.dim
    e = [unit_vector(n, i) for i in range(n)]
    nab = [[connection.covariant(e[i], e[j]) for j in range(n)] for i in range(n)]
    r = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for i, j, k in product(range(n), repeat=3):
        first = connection.covariant(e[i], nab[j][k])
        second = connection.covariant(e[j], nab[i][k])
        third = connection.covariant(algebra.basis_bracket(i, j), e[k])
        for s in range(n):
            r[s][i][j][k] = first[s] - second[s] - third[s]
    return _freeze4(r)


def _support(v: Sequence[Fraction]) -> list[tuple[int, Fraction]]:
    return [(i, x) for i, x in enumerate(v) if x]


def apply_curvature(r: Tensor4, x: Sequence[Fraction], y: Sequence[Fraction], z: Sequence[Fraction]) -> Vector:
    """R(X, Y)Z, summing only over the nonzero coordinates of X, Y and Z."""
    n = len(r)
    out = [ZERO] * n
    zs = _support(z)
    for i, xi in _support(x):
        for j, yj in _support(y):
            xy = xi * yj
            for k, zk in zs:
                w = xy * zk
                for s in range(n):
                    v = r[s][i][j][k]
                    if v:
                        out[s] += w * v
    return tuple(out)


def ricci(r: Tensor4) -> Matrix:
    n = len(r)
    return Matrix([[sum((r[s][s][j][k] for s in range(n)), ZERO) for k in range(n)] for j in range(n)])


def scalar_curvature(metric: Metric, ric: Matrix) -> Fraction:
    ginv = metric.inverse
    n = ric.rows
    return sum((ginv[j, k] * ric[j, k] for j in range(n) for k in range(n) if ginv[j, k] and ric[j, k]), ZERO)


def lower_riemann(metric: Metric, r: Tensor4) -> Tensor4:
    """R_ijkl = g_ls R^s_ijk."""
    n = len(r)
    g = metric.matrix
    out = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for s, i, j, k in product(range(n), repeat=4):
        v = r[s][i][j][k]
        if not v:
            continue
        for l in range(n):
            if g[l, s]:
                out[i][j][k][l] += g[l, s] * v
    return _freeze4(out)


def _raise_slot(t: list, ginv: Matrix, slot: int) -> list:
    n = len(t)
    out = [[[[ZERO] * n for _ in range(n)] for _ in range(n)] for _ in range(n)]
    for idx in product(range(n), repeat=4):
        v = t[idx[0]][idx[1]][idx[2]][idx[3]]
        if not v:
            continue
        for a in range(n):
            h = ginv[a, idx[slot]]
            if h:
                target = list(idx)
                target[slot] = a
                out[target[0]][target[1]][target[2]][target[3]] += h * v
    return out


def curvature_scalar_square(metric: Metric, r: Tensor4) -> Fraction:
    """g(R, R) with all four index pairs contracted by the inverse metric."""
    low = lower_riemann(metric, r)
    up = [[[list(x) for x in q] for q in p] for p in low]
    for slot in range(4):
        up = _raise_slot(up, metric.inverse, slot)
    n = len(r)
    return sum(
        (low[i][j][k][l] * up[i][j][k][l] for i, j, k, l in product(range(n), repeat=4) if low[i][j][k][l]),
        ZERO,
    )


def ricci_hermitian(ric: Matrix, j: Acs) -> bool:
    """Ric(JX, JY) = Ric(X, Y), i.e. J^T Ric J = Ric."""
    return j.matrix.T @ ric @ j.matrix == ric


def torsion_residual(algebra: LieAlgebra, connection: Connection) -> Fraction:
    n = algebra.dim
    gam = connection.gamma
    c = algebra.structure_constants
    return max(abs(gam[k][i][j] - gam[k][j][i] - c[k][i][j]) for k, i, j in product(range(n), repeat=3))


def metric_compatibility_residual(metric: Metric, connection: Connection) -> Fraction:
    """max |g_lk G^l_ij + g_jl G^l_ik|."""
    n = metric.dim
    g = metric.matrix
    gam = connection.gamma
    worst = ZERO
    for i, j, k in product(range(n), repeat=3):
        v = sum((g[l, k] * gam[l][i][j] + g[j, l] * gam[l][i][k] for l in range(n)), ZERO)
        worst = max(worst, abs(v))
    return worst


def antisymmetry_residual(r: Tensor4) -> Fraction:
    n = len(r)
    return max(abs(r[s][i][j][k] + r[s][j][i][k]) for s, i, j, k in product(range(n), repeat=4))


def bianchi_residual(r: Tensor4) -> Fraction:
    n = len(r)
    return max(abs(r[s][i][j][k] + r[s][j][k][i] + r[s][k][i][j]) for s, i, j, k in product(range(n), repeat=4))


def tensor_difference(a: Tensor4, b: Tensor4) -> Fraction:
    n = len(a)
    return max(abs(a[s][i][j][k] - b[s][i][j][k]) for s, i, j, k in product(range(n), repeat=4))


def central_nabla_residual(connection: Connection, w: Subspace) -> Vector | None:
    """First nonzero nabla_X e_j or nabla_{e_j} X for X in ``w``, else None."""
    n = connection.dim
    for x in w.basis:
        for j in range(n):
            e = unit_vector(n, j)
            for v in (connection.covariant(x, e), connection.covariant(e, x)):
                if any(v):
                    return v
    return None


def validate_structure(algebra: LieAlgebra, omega: TwoForm, j: Acs) -> Metric:
    """Raise InvalidStructureError naming the first broken invariant, else return g."""
    closure = ce_differential(algebra, omega)
    if not closure.is_zero():
        (triple, value), *_ = closure.nonzero_items()
        raise InvalidStructureError("omega_closed", f"d(omega) at {triple} is {value}")
    if not omega.is_nondegenerate():
        raise InvalidStructureError("omega_nondegenerate", "det(omega) = 0")
    if not check_acs(j).is_zero():
        raise InvalidStructureError("j_squared", "J^2 + I is not zero")
    if not check_compatible(omega, j).is_zero():
        raise InvalidStructureError("compatibility", "J^T omega + omega J is not zero")
    return associated_metric(omega, j)


class CurvatureReport:
    """Everything curvature-related for one (algebra, form, J) instance."""

    __slots__ = ("metric", "connection", "riemann", "ricci", "scalar", "curvature_square", "hermitian_ricci")

    def __init__(self, metric: Metric, connection: Connection, r: Tensor4, ric: Matrix,
                 scalar: Fraction, curvature_square: Fraction, hermitian_ricci: bool):
        self.metric = metric
        self.connection = connection
        self.riemann = r
        self.ricci = ric
        self.scalar = scalar
        self.curvature_square = curvature_square
        self.hermitian_ricci = hermitian_ricci

    @property
    def signature(self) -> Signature:
        return self.metric.signature

    def riemann_nonzero(self) -> list[tuple[int, int, int, int, Fraction]]:
        """1-based (s, i, j, k, value) for every nonzero component."""
        n = len(self.riemann)
        return [
            (s + 1, i + 1, j + 1, k + 1, self.riemann[s][i][j][k])
            for s, i, j, k in product(range(n), repeat=4)
            if self.riemann[s][i][j][k]
        ]

    def gamma_nonzero(self) -> list[tuple[int, int, int, Fraction]]:
        n = self.connection.dim
        gam = self.connection.gamma
        return [(m + 1, i + 1, j + 1, gam[m][i][j]) for m, i, j in product(range(n), repeat=3) if gam[m][i][j]]


def curvature_report(algebra: LieAlgebra, omega: TwoForm, j: Acs, metric: Metric | None = None) -> CurvatureReport:
    if metric is None:
        metric = validate_structure(algebra, omega, j)
    connection = levi_civita(algebra, metric)
    r = riemann(algebra, connection)
    ric = ricci(r)
    return CurvatureReport(
        metric=metric,
        connection=connection,
        r=r,
        ric=ric,
        scalar=scalar_curvature(metric, ric),
        curvature_square=curvature_scalar_square(metric, r),
        hermitian_ricci=ricci_hermitian(ric, j),
    )


class ClauseOutcome(NamedTuple):
    holds: bool
    witness: str | None = None


class SplittingReport(NamedTuple):
    hypotheses: dict[str, bool]
    clauses: dict[str, ClauseOutcome]

    @property
    def hypotheses_hold(self) -> bool:
        return all(self.hypotheses.values())


def _fmt(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(x) for x in v) + ")"


def _first_failure(cases, predicate) -> ClauseOutcome:
    for label, value in cases:
        if not predicate(value):
            return ClauseOutcome(False, f"{label} = {_fmt(value)}")
    return ClauseOutcome(True)


def nabla_subspace_checks(
    algebra: LieAlgebra,
    omega: TwoForm,
    j: Acs,
    metric: Metric,
    a: Subspace,
    b: Subspace,
    c: Subspace,
    connection: Connection | None = None,
    r: Tensor4 | None = None,
    ric: Matrix | None = None,
) -> SplittingReport:
    """Hypotheses and conclusions of the A + B + C splitting with B + C = C^1 g.

    Conclusions are evaluated on spanning vectors, which suffices because every
    clause is multilinear. They are computed even when a hypothesis fails;
    callers decide how to read them.
    """
    n = algebra.dim
    full = Subspace.full(n)
    bc = b + c
    c1 = descending_series(algebra)[1]
    hypotheses = {
        "direct_sum": a.dim + b.dim + c.dim == n and (a + bc) == full,
        "c1_is_b_plus_c": bc == c1 and b.dim + c.dim == bc.dim,
        "b_plus_c_abelian_ideal": algebra.is_ideal(bc) and algebra.is_abelian_subspace(bc) and j_invariant(j, bc),
        "c_abelian_ideal": algebra.is_ideal(c) and algebra.is_abelian_subspace(c) and j_invariant(j, c),
        "a_c_isotropic": is_isotropic(omega, a) and is_isotropic(omega, c),
        "a_c_dual": are_dual(omega, a, c),
        "omega_nondegenerate_on_b": is_nondegenerate_on(omega, b),
        "omega_b_c_orthogonal": omega_orthogonal(omega, b, c),
    }
    if connection is None:
        connection = levi_civita(algebra, metric)
    if r is None:
        r = riemann(algebra, connection)
    if ric is None:
        ric = ricci(r)

    e = [unit_vector(n, i) for i in range(n)]
    nab = connection.covariant
    clauses: dict[str, ClauseOutcome] = {}

    failures = [(f"g({_fmt(x)}, {_fmt(y)})", (metric(x, y),)) for x in bc.basis for y in c.basis]
    clauses["metric_bc_c_orthogonal"] = _first_failure(failures, lambda v: not v[0])

    def both_orders(xs, ys):
        for x in xs:
            for y in ys:
                yield f"nabla_{_fmt(x)} {_fmt(y)}", nab(x, y)
                yield f"nabla_{_fmt(y)} {_fmt(x)}", nab(y, x)

    clauses["nabla_preserves_bc"] = _first_failure(both_orders(e, bc.basis), lambda v: v in bc)
    clauses["nabla_preserves_c"] = _first_failure(both_orders(e, c.basis), lambda v: v in c)

    def symmetric_in_c():
        for x in bc.basis:
            for y in bc.basis:
                xy, yx = nab(x, y), nab(y, x)
                if xy != yx:
                    return ClauseOutcome(False, f"nabla_{_fmt(x)} {_fmt(y)} != nabla_{_fmt(y)} {_fmt(x)}")
                if xy not in c:
                    return ClauseOutcome(False, f"nabla_{_fmt(x)} {_fmt(y)} = {_fmt(xy)}")
        return ClauseOutcome(True)

    clauses["nabla_bc_symmetric_in_c"] = symmetric_in_c()
    clauses["nabla_bc_c_vanishes"] = _first_failure(both_orders(bc.basis, c.basis), lambda v: not any(v))

    def curvature_clause(choices: list[dict[int, Sequence[Vector]]], predicate) -> ClauseOutcome:
        for slots in choices:
            for x, y, z in product(*(slots.get(p, e) for p in range(3))):
                value = apply_curvature(r, x, y, z)
                if not predicate(value):
                    return ClauseOutcome(False, f"R({_fmt(x)}, {_fmt(y)}){_fmt(z)} = {_fmt(value)}")
        return ClauseOutcome(True)

    one_bc = [{p: bc.basis} for p in range(3)]
    two_bc = [{p: bc.basis, q: bc.basis} for p, q in ((0, 1), (0, 2), (1, 2))]
    one_c = [{p: c.basis} for p in range(3)]
    c_and_bc = [{p: c.basis, q: bc.basis} for p in range(3) for q in range(3) if p != q]
    clauses["curvature_one_in_bc"] = curvature_clause(one_bc, lambda v: v in bc)
    clauses["curvature_two_in_bc"] = curvature_clause(two_bc, lambda v: v in c)
    # Not implied by the hypotheses: G1 has R(e1, e2)e5 in C but nonzero.
    clauses["curvature_one_in_c"] = curvature_clause(one_c, lambda v: not any(v))
    clauses["curvature_c_with_bc"] = curvature_clause(c_and_bc, lambda v: not any(v))

    def ric_value(x: Vector, y: Vector) -> Fraction:
        return sum((xp * ric[p, q] * yq for p, xp in _support(x) for q, yq in _support(y) if ric[p, q]), ZERO)

    ric_cases = [(f"Ric({_fmt(x)}, {_fmt(y)})", (ric_value(x, y),)) for x in bc.basis for y in e]
    clauses["ricci_vanishes_on_bc"] = _first_failure(ric_cases, lambda v: not v[0])
    return SplittingReport(hypotheses, clauses)
