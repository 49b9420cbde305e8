"""Lie algebras given by structure constants, and their central series."""

from __future__ import annotations

import logging
from fractions import Fraction
from itertools import combinations
from typing import Mapping, NamedTuple, Sequence

from .errors import DimensionError, InvalidStructureError, NotNilpotentError
from .exact import ZERO, Matrix, Subspace, Vector, kernel_basis, preimage, to_rational, unit_vector

logger = logging.getLogger(__name__)

Brackets = Mapping[tuple[int, int], Mapping[int, Fraction | int | str]]


class LieAlgebra:
    """Real Lie algebra with basis e_1..e_n and [e_i, e_j] = sum_k C[k][i][j] e_k.

    Indices are 0-based internally. Construction checks antisymmetry and the
    Jacobi identity unless ``validate=False`` (used only to inspect broken input).
    """

    __slots__ = ("dim", "structure_constants", "_right")

    def __init__(self, dim: int, structure_constants: Sequence[Sequence[Sequence[Fraction]]], *, validate: bool = True):
        c = tuple(tuple(tuple(to_rational(x) for x in row) for row in plane) for plane in structure_constants)
        if len(c) != dim or any(len(p) != dim or any(len(r) != dim for r in p) for p in c):
            raise DimensionError(f"structure constants must have shape ({dim},{dim},{dim})")
        self.dim = dim
        self.structure_constants = c
        # _right[j] is the matrix of x -> [x, e_j]
        self._right = tuple(Matrix([[c[k][i][j] for i in range(dim)] for k in range(dim)]) for j in range(dim))
        if validate:
            bad = antisymmetry_violations(self)
            if bad:
                i, j, k = bad[0]
                raise InvalidStructureError("antisymmetry", f"C^{k}_{i}{j} != -C^{k}_{j}{i}")
            broken = jacobi_check(self)
            if broken:
                raise InvalidStructureError("jacobi", f"Jacobi identity fails at basis triple {broken[0]}")

    @classmethod
    def from_brackets(cls, dim: int, brackets: Brackets, *, validate: bool = True) -> LieAlgebra:
        """Build from sparse 1-based brackets {(i, j): {k: coeff}} with i < j."""
        c = [[[ZERO] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j), coeffs in brackets.items():
            if not (1 <= i <= dim and 1 <= j <= dim):
                raise DimensionError(f"bracket index ({i},{j}) outside 1..{dim}")
            if i == j:
                raise InvalidStructureError("antisymmetry", f"[e{i},e{i}] must vanish")
            for k, value in coeffs.items():
                k = int(k)
                if not 1 <= k <= dim:
                    raise DimensionError(f"bracket result index {k} outside 1..{dim}")
                v = to_rational(value)
                c[k - 1][i - 1][j - 1] += v
                c[k - 1][j - 1][i - 1] -= v
        return cls(dim, c, validate=validate)

    @classmethod
    def abelian(cls, dim: int) -> LieAlgebra:
        return cls.from_brackets(dim, {})

    def basis_bracket(self, i: int, j: int) -> Vector:
        return tuple(self.structure_constants[k][i][j] for k in range(self.dim))

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> Vector:
        if len(x) != self.dim or len(y) != self.dim:
            raise DimensionError(f"bracket arguments must have length {self.dim}")
        out = [ZERO] * self.dim
        c = self.structure_constants
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj or i == j:
                    continue
                w = xi * yj
                for k in range(self.dim):
                    if c[k][i][j]:
                        out[k] += w * c[k][i][j]
        return tuple(out)

    def right_multiplication(self, j: int) -> Matrix:
        """Matrix of x -> [x, e_j] (0-based j)."""
        return self._right[j]

    def bracket_subspaces(self, u: Subspace, v: Subspace) -> Subspace:
        return Subspace(self.dim, [self.bracket(a, b) for a in u.basis for b in v.basis])

    def is_ideal(self, w: Subspace) -> bool:
        return self.bracket_subspaces(Subspace.full(self.dim), w) <= w

    def is_abelian_subspace(self, w: Subspace) -> bool:
        return self.bracket_subspaces(w, w).dim == 0

    def is_abelian(self) -> bool:
        return not any(x for plane in self.structure_constants for row in plane for x in row)

    def nonzero_brackets(self) -> list[tuple[int, int, dict[int, Fraction]]]:
        """Sparse 1-based listing (i, j, {k: coeff}) for i < j."""
        out = []
        for i, j in combinations(range(self.dim), 2):
            coeffs = {k + 1: v for k, v in enumerate(self.basis_bracket(i, j)) if v}
            if coeffs:
                out.append((i + 1, j + 1, coeffs))
        return out


def antisymmetry_violations(algebra: LieAlgebra) -> list[tuple[int, int, int]]:
    c = algebra.structure_constants
    n = algebra.dim
    return [
        (i + 1, j + 1, k + 1)
        for k in range(n)
        for i in range(n)
        for j in range(i, n)
        if c[k][i][j] != -c[k][j][i]
    ]


def jacobi_check(algebra: LieAlgebra) -> list[tuple[int, int, int]]:
    """1-based basis triples where the Jacobi identity fails (empty when valid)."""
    n = algebra.dim
    e = [unit_vector(n, i) for i in range(n)]
    failures = []
    for i, j, k in combinations(range(n), 3):
        total = [
            a + b + c
            for a, b, c in zip(
                algebra.bracket(algebra.basis_bracket(i, j), e[k]),
                algebra.bracket(algebra.basis_bracket(j, k), e[i]),
                algebra.bracket(algebra.basis_bracket(k, i), e[j]),
            )
        ]
        if any(total):
            failures.append((i + 1, j + 1, k + 1))
    if failures:
        logger.debug("Jacobi identity fails at %d triples", len(failures))
    return failures


def descending_series(algebra: LieAlgebra) -> list[Subspace]:
    """[C^0 g, C^1 g, ...] down to the first repeated term (zero when nilpotent)."""
    g = Subspace.full(algebra.dim)
    series = [g]
    while series[-1].dim:
        nxt = algebra.bracket_subspaces(g, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


def next_ascending_term(algebra: LieAlgebra, previous: Subspace, extra: Matrix | None = None) -> Subspace:
    maps = [algebra.right_multiplication(j) for j in range(algebra.dim)]
    if extra is not None:
        maps += [m @ extra for m in maps]
    return preimage(maps, previous)


def ascending_series(algebra: LieAlgebra) -> list[Subspace]:
    """[g_1, g_2, ..., g] with g_1 the center; raises if it stops short of g."""
    series: list[Subspace] = []
    current = Subspace.zero(algebra.dim)
    while current.dim < algebra.dim:
        nxt = next_ascending_term(algebra, current)
        if nxt == current:
            raise NotNilpotentError(f"ascending central series stabilizes at dimension {current.dim}")
        series.append(nxt)
        current = nxt
    return series


def center(algebra: LieAlgebra) -> Subspace:
    stacked = [row for j in range(algebra.dim) for row in algebra.right_multiplication(j)]
    return kernel_basis(Matrix(stacked))


def derived_series(algebra: LieAlgebra) -> list[Subspace]:
    series = [Subspace.full(algebra.dim)]
    while series[-1].dim:
        nxt = algebra.bracket_subspaces(series[-1], series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
    return series


class NilpotencyData(NamedTuple):
    nilpotency_class: int
    type_sequence: tuple[int, ...]
    is_filiform: bool


def nilpotency_data(algebra: LieAlgebra) -> NilpotencyData:
    descending = descending_series(algebra)
    if descending[-1].dim:
        raise NotNilpotentError(f"descending central series stops at dimension {descending[-1].dim}")
    types = tuple(s.dim for s in ascending_series(algebra))
    n = algebra.dim
    filiform = n >= 3 and types == tuple(range(1, n - 1)) + (n,)
    return NilpotencyData(len(descending) - 1, types, filiform)
