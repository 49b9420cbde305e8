"""Two-forms on a Lie algebra and their Chevalley-Eilenberg differential."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterator, Mapping, Sequence

from .errors import DimensionError, InvalidStructureError
from .exact import ZERO, Matrix, Subspace, dot, to_rational, unit_vector
from .liealg import LieAlgebra


class TwoForm:
    """Antisymmetric bilinear form with matrix omega[i][j] = w(e_i, e_j)."""

    __slots__ = ("dim", "matrix")

    def __init__(self, matrix: Matrix):
        if not matrix.is_square():
            raise DimensionError("a 2-form needs a square matrix")
        if matrix != -matrix.T:
            raise InvalidStructureError("antisymmetry", "omega_ij must equal -omega_ji")
        self.dim = matrix.rows
        self.matrix = matrix

    @classmethod
    def from_terms(cls, dim: int, terms: Mapping[tuple[int, int], Fraction | int | str]) -> TwoForm:
        """Sum of coeff * e^i ^ e^j over 1-based pairs; i > j flips the sign."""
        m = [[ZERO] * dim for _ in range(dim)]
        for (i, j), value in terms.items():
            if not (1 <= i <= dim and 1 <= j <= dim) or i == j:
                raise DimensionError(f"invalid form index pair ({i},{j})")
            v = to_rational(value)
            m[i - 1][j - 1] += v
            m[j - 1][i - 1] -= v
        return cls(Matrix(m))

    def __call__(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
        return dot(x, self.matrix.apply(y))

    def scaled(self, factor: Fraction | int) -> TwoForm:
        return TwoForm(self.matrix.scale(factor))

    def terms(self) -> list[tuple[int, int, Fraction]]:
        return [(i + 1, j + 1, self.matrix[i, j]) for i, j in combinations(range(self.dim), 2) if self.matrix[i, j]]

    def is_nondegenerate(self) -> bool:
        return bool(self.matrix.det())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, TwoForm) and self.matrix == other.matrix

    def __hash__(self) -> int:
        return hash(self.matrix)


class ThreeForm:
    """Fully antisymmetric trilinear form, stored on strictly increasing triples."""

    __slots__ = ("dim", "_values")

    def __init__(self, dim: int, values: Mapping[tuple[int, int, int], Fraction]):
        self.dim = dim
        self._values = {key: v for key, v in values.items() if v}

    def __getitem__(self, key: tuple[int, int, int]) -> Fraction:
        if len(set(key)) < 3:
            return ZERO
        order = sorted(range(3), key=lambda p: key[p])
        inversions = sum(1 for a, b in combinations(order, 2) if a > b)
        value = self._values.get(tuple(sorted(key)), ZERO)
        return -value if inversions % 2 else value

    def is_zero(self) -> bool:
        return not self._values

    def nonzero_items(self) -> Iterator[tuple[tuple[int, int, int], Fraction]]:
        """Nonzero values keyed by 1-based increasing triples."""
        for (i, j, k), v in sorted(self._values.items()):
            yield (i + 1, j + 1, k + 1), v


def ce_differential(algebra: LieAlgebra, omega: TwoForm) -> ThreeForm:
    """dw(X,Y,Z) = w([X,Y],Z) - w([X,Z],Y) + w([Y,Z],X) on every basis triple."""
    if algebra.dim != omega.dim:
        raise DimensionError(f"algebra has dimension {algebra.dim}, form has {omega.dim}")
    n = algebra.dim
    e = [unit_vector(n, i) for i in range(n)]
    values = {}
    for i, j, k in combinations(range(n), 3):
        values[(i, j, k)] = (
            omega(algebra.basis_bracket(i, j), e[k])
            - omega(algebra.basis_bracket(i, k), e[j])
            + omega(algebra.basis_bracket(j, k), e[i])
        )
    return ThreeForm(n, values)


def is_symplectic(algebra: LieAlgebra, omega: TwoForm) -> bool:
    return ce_differential(algebra, omega).is_zero() and omega.is_nondegenerate()


def pairing_matrix(omega: TwoForm, u: Subspace, v: Subspace) -> Matrix:
    return Matrix([[omega(a, b) for b in v.basis] for a in u.basis])


def is_isotropic(omega: TwoForm, w: Subspace) -> bool:
    return omega_orthogonal(omega, w, w)


def are_dual(omega: TwoForm, u: Subspace, v: Subspace) -> bool:
    """Each side pairs nondegenerately against the other."""
    if u.dim != v.dim:
        return False
    if u.dim == 0:
        return True
    return pairing_matrix(omega, u, v).rank() == u.dim


def omega_orthogonal(omega: TwoForm, u: Subspace, v: Subspace) -> bool:
    return all(not omega(a, b) for a in u.basis for b in v.basis)


def is_nondegenerate_on(omega: TwoForm, w: Subspace) -> bool:
    return w.dim == 0 or bool(pairing_matrix(omega, w, w).det())
