"""Almost complex structures, compatibility with a 2-form and the associated metric.

Matrices use the column-action convention: column j of ``J`` holds the
coordinates of J(e_j), so ``J[k, j]`` is J^k_j.
"""

from __future__ import annotations

import logging
from fractions import Fraction
from typing import Mapping, NamedTuple, Sequence

from .errors import DimensionError, InvalidStructureError
from .exact import ONE, ZERO, Matrix, Signature, Subspace, Vector, signature, to_rational, unit_vector
from .forms import TwoForm
from .liealg import LieAlgebra, next_ascending_term

logger = logging.getLogger(__name__)


class Acs:
    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: Matrix):
        if not matrix.is_square():
            raise DimensionError("an almost complex structure needs a square matrix")
        self.dim = matrix.rows
        self.matrix = matrix

    @classmethod
    def from_images(cls, dim: int, images: Mapping[int, Mapping[int, Fraction | int | str]]) -> Acs:
        """Build from 1-based images {j: {k: coeff}} meaning J(e_j) = sum coeff e_k."""
        m = [[ZERO] * dim for _ in range(dim)]
        for j, image in images.items():
            for k, value in image.items():
                m[k - 1][j - 1] = to_rational(value)
        return cls(Matrix(m))

    def __call__(self, x: Sequence[Fraction]) -> Vector:
        return self.matrix.apply(x)

    def image(self, w: Subspace) -> Subspace:
        return w.image(self.matrix)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Acs) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)


class Metric:
    """Symmetric nondegenerate bilinear form with its signature attached."""

    __slots__ = ("matrix", "signature", "_inverse")

    def __init__(self, matrix: Matrix):
        if not matrix.is_symmetric():
            raise InvalidStructureError("metric_symmetry", "g_ij != g_ji")
        if not matrix.det():
            raise InvalidStructureError("metric_nondegenerate", "det g = 0")
        self.matrix = matrix
        self.signature: Signature = signature(matrix)
        self._inverse: Matrix | None = None

    @property
    def dim(self) -> int:
        return self.matrix.rows

    @property
    def inverse(self) -> Matrix:
        if self._inverse is None:
            self._inverse = self.matrix.inverse()
        return self._inverse

    def __call__(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return sum((a * b for a, b in zip(x, self.matrix.apply(y)) if a and b), ZERO)

    def is_definite(self) -> bool:
        return self.signature.positive == self.dim or self.signature.negative == self.dim


def check_acs(j: Acs) -> Matrix:
    """J.J + I; the zero matrix exactly when J^2 = -I."""
    return j.matrix @ j.matrix + Matrix.identity(j.dim)


def check_compatible(omega: TwoForm, j: Acs) -> Matrix:
    """Residual w_kj J^k_i + w_is J^s_j, i.e. J^T w + w J."""
    if omega.dim != j.dim:
        raise DimensionError(f"form has dimension {omega.dim}, J has {j.dim}")
    return j.matrix.T @ omega.matrix + omega.matrix @ j.matrix


def associated_metric(omega: TwoForm, j: Acs) -> Metric:
    """g(X, Y) = w(X, JY), so g = w.J as matrices."""
    if omega.dim != j.dim:
        raise DimensionError(f"form has dimension {omega.dim}, J has {j.dim}")
    return Metric(omega.matrix @ j.matrix)


def j_invariant(j: Acs, w: Subspace) -> bool:
    return all(j(v) in w for v in w.basis)


def acs_ascending_series(algebra: LieAlgebra, j: Acs) -> list[Subspace]:
    """[a_1(J), a_2(J), ...] until the chain stops growing."""
    series: list[Subspace] = []
    current = Subspace.zero(algebra.dim)
    while True:
        nxt = next_ascending_term(algebra, current, extra=j.matrix)
        if nxt == current:
            return series
        series.append(nxt)
        current = nxt
        if current.dim == algebra.dim:
            return series


class AcsClassification(NamedTuple):
    nilpotent: bool
    almost_nilpotent: bool | None
    reason: str


def classify_acs(algebra: LieAlgebra, j: Acs, chain: Sequence[Subspace] | None = None) -> AcsClassification:
    """Nilpotency via a_l(J); almost nilpotency against a supplied ideal chain.

    ``almost_nilpotent`` is None when no chain is supplied.
    """
    series = acs_ascending_series(algebra, j)
    nilpotent = bool(series) and series[-1].dim == algebra.dim
    if chain is None:
        return AcsClassification(nilpotent, None, "no chain supplied")
    terms = list(chain)
    if not terms or terms[-1].dim != algebra.dim:
        terms.append(Subspace.full(algebra.dim))
    expected = list(range(2, algebra.dim + 1, 2))
    dims = [t.dim for t in terms]
    if dims != expected:
        return AcsClassification(nilpotent, False, f"chain dimensions {dims}, expected {expected}")
    for index, term in enumerate(terms, start=1):
        if not algebra.is_ideal(term):
            return AcsClassification(nilpotent, False, f"chain term {index} is not an ideal")
        if not j_invariant(j, term):
            return AcsClassification(nilpotent, False, f"chain term {index} is not J-invariant")
        if index > 1 and not terms[index - 2] <= term:
            return AcsClassification(nilpotent, False, f"chain term {index - 1} is not contained in term {index}")
    return AcsClassification(nilpotent, True, "chain verified")


def nijenhuis(algebra: LieAlgebra, j: Acs) -> tuple[tuple[tuple[Fraction, ...], ...], ...]:
    """N[k][a][b]: the e_k coordinate of N(e_a, e_b) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y]."""
    n = algebra.dim
    e = [unit_vector(n, i) for i in range(n)]
    je = [j(v) for v in e]
    out = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(a + 1, n):
            first = algebra.bracket(je[a], je[b])
            second = j(algebra.bracket(je[a], e[b]))
            third = j(algebra.bracket(e[a], je[b]))
            fourth = algebra.basis_bracket(a, b)
            for k in range(n):
                value = first[k] - second[k] - third[k] - fourth[k]
                out[k][a][b] = value
                out[k][b][a] = -value
    return tuple(tuple(tuple(plane) for plane in rows) for rows in out)


def complete_pair(x: int, y: int, alpha: Fraction, beta: Fraction) -> dict[int, dict[int, Fraction]]:
    """Images on span{e_x, e_y} from J(e_y) = alpha e_x + beta e_y using J^2 = -I.

    The completion is J(e_x) = -beta e_x + ((-1 - beta^2) / alpha) e_y.
    """
    if not alpha:
        raise InvalidStructureError("j_squared", f"J(e{y}) needs a nonzero e{x} component")
    return {
        y: {x: alpha, y: beta},
        x: {x: -beta, y: (-ONE - beta * beta) / alpha},
    }
