"""Exact rational linear algebra.

Every coefficient lives in :class:`fractions.Fraction`, so zero tests are exact.
Matrices are immutable and row-major; subspaces keep a reduced row-echelon
basis so that two equal subspaces always compare equal syntactically.
The only bridge to floating point is :meth:`Matrix.to_float`, used by the solver.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import DimensionError, SingularMatrixError

Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: Fraction | int | str) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string into a Fraction.

    Floats are refused on purpose: the exact domain never rounds.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational coefficients")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as e:
            raise ValueError(f"not a rational number: {value!r}") from e
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vector(values: Iterable[Fraction | int | str]) -> Vector:
    return tuple(to_rational(v) for v in values)


def unit_vector(dim: int, index: int) -> Vector:
    """Basis vector e_{index+1} (``index`` is 0-based)."""
    return tuple(ONE if k == index else ZERO for k in range(dim))


def dot(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(x, y) if a and b), ZERO)


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    lead = 0
    for col in range(ncols):
        pivot = next((r for r in range(lead, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = ONE / rows[lead][col]
        rows[lead] = [x * inv for x in rows[lead]]
        for r in range(len(rows)):
            if r != lead and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(rows):
            break
    return rows[:lead], pivots


class Matrix:
    """Dense immutable matrix over the rationals."""

    __slots__ = ("_rows", "rows", "cols")

    def __init__(self, entries: Iterable[Iterable[Fraction | int | str]]):
        data = tuple(vector(row) for row in entries)
        ncols = len(data[0]) if data else 0
        if any(len(row) != ncols for row in data):
            raise DimensionError("ragged matrix rows")
        self._rows = data
        self.rows = len(data)
        self.cols = ncols

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([unit_vector(n, i) for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None) -> Matrix:
        cols = rows if cols is None else cols
        return cls([[ZERO] * cols for _ in range(rows)])

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        i, j = index
        return self._rows[i][j]

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self._rows)

    def tolist(self) -> list[list[Fraction]]:
        return [list(row) for row in self._rows]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __iter__(self):
        return iter(self._rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Matrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_rational(x) for x in row) for row in self._rows)
        return f"Matrix([{body}])"

    def _check_same_shape(self, other: Matrix) -> None:
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __sub__(self, other: Matrix) -> Matrix:
        self._check_same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)])

    def __neg__(self) -> Matrix:
        return Matrix([[-a for a in r] for r in self._rows])

    def scale(self, factor: Fraction | int) -> Matrix:
        factor = to_rational(factor)
        return Matrix([[factor * a for a in r] for r in self._rows])

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = [other.column(j) for j in range(other.cols)]
        return Matrix([[dot(r, c) for c in cols] for r in self._rows])

    def apply(self, v: Sequence[Fraction]) -> Vector:
        if len(v) != self.cols:
            raise DimensionError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(dot(r, v) for r in self._rows)

    @property
    def T(self) -> Matrix:
        return Matrix(zip(*self._rows)) if self.rows else Matrix([])

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_zero(self) -> bool:
        return not any(x for r in self._rows for x in r)

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self._rows[i][j] == self._rows[j][i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def max_abs(self) -> Fraction:
        return max((abs(x) for r in self._rows for x in r), default=ZERO)

    def rank(self) -> int:
        return len(_rref(self.tolist(), self.cols)[1])

    def det(self) -> Fraction:
        return mat_det(self)

    def inverse(self) -> Matrix:
        return mat_inverse(self)

    def to_float(self) -> np.ndarray:
        """One-way conversion into the solver's float domain."""
        return np.array([[float(x) for x in r] for r in self._rows], dtype=np.float64).reshape(self.rows, self.cols)


def mat_det(m: Matrix) -> Fraction:
    if not m.is_square():
        raise DimensionError(f"determinant of a non-square {m.rows}x{m.cols} matrix")
    a = m.tolist()
    n = m.rows
    det = ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            return ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col]
        det *= p
        for r in range(col + 1, n):
            if a[r][col]:
                f = a[r][col] / p
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def mat_inverse(m: Matrix) -> Matrix:
    if not m.is_square():
        raise DimensionError(f"inverse of a non-square {m.rows}x{m.cols} matrix")
    n = m.rows
    augmented = [list(row) + list(unit_vector(n, i)) for i, row in enumerate(m)]
    rows, pivots = _rref(augmented, 2 * n)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular (det = 0)")
    return Matrix([row[n:] for row in rows])


def kernel_basis(m: Matrix) -> Subspace:
    """Null space {v : m v = 0} as a canonical subspace."""
    ncols = m.cols
    rows, pivots = _rref(m.tolist(), ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[f]
        basis.append(v)
    return Subspace(ncols, basis)


class Subspace:
    """Linear subspace of Q^n with a canonical RREF basis."""

    __slots__ = ("ambient_dim", "basis", "_annihilator")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence[Fraction | int | str]] = ()):
        rows = [list(vector(v)) for v in vectors]
        for r in rows:
            if len(r) != ambient_dim:
                raise DimensionError(f"vector of length {len(r)} in a subspace of Q^{ambient_dim}")
        reduced, _ = _rref(rows, ambient_dim)
        self.ambient_dim = ambient_dim
        self.basis: tuple[Vector, ...] = tuple(tuple(r) for r in reduced)
        self._annihilator: Matrix | None = None

    @classmethod
    def zero(cls, n: int) -> Subspace:
        return cls(n)

    @classmethod
    def full(cls, n: int) -> Subspace:
        return cls(n, [unit_vector(n, i) for i in range(n)])

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> Subspace:
        """Span of e_i for the given 1-based indices."""
        return cls(n, [unit_vector(n, i - 1) for i in indices])

    @property
    def dim(self) -> int:
        return len(self.basis)

    def _check(self, other: Subspace) -> None:
        if self.ambient_dim != other.ambient_dim:
            raise DimensionError(f"ambient dimensions differ: {self.ambient_dim} vs {other.ambient_dim}")

    def annihilator_matrix(self) -> Matrix:
        """Rows a with a . v = 0 exactly for v in this subspace."""
        if self._annihilator is None:
            if self.dim == 0:
                ann = Subspace.full(self.ambient_dim)
            else:
                ann = kernel_basis(Matrix(self.basis))
            self._annihilator = Matrix(ann.basis) if ann.dim else Matrix.zeros(0, self.ambient_dim)
        return self._annihilator

    def __contains__(self, v: Sequence[Fraction]) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionError(f"vector of length {len(v)} tested against Q^{self.ambient_dim}")
        return not any(dot(a, v) for a in self.annihilator_matrix())

    def __add__(self, other: Subspace) -> Subspace:
        self._check(other)
        return Subspace(self.ambient_dim, self.basis + other.basis)

    def __and__(self, other: Subspace) -> Subspace:
        self._check(other)
        stacked = list(self.annihilator_matrix()) + list(other.annihilator_matrix())
        if not stacked:
            return Subspace.full(self.ambient_dim)
        return kernel_basis(Matrix(stacked))

    def __le__(self, other: Subspace) -> bool:
        self._check(other)
        return all(v in other for v in self.basis)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return hash((self.ambient_dim, self.basis))

    def __repr__(self) -> str:
        vecs = ", ".join("(" + ",".join(format_rational(x) for x in v) + ")" for v in self.basis)
        return f"Subspace(dim={self.dim}, [{vecs}])"

    def image(self, m: Matrix) -> Subspace:
        return Subspace(m.rows, [m.apply(v) for v in self.basis])

    def coordinate_indices(self) -> list[int] | None:
        """1-based indices if this is a coordinate subspace, else None."""
        indices = []
        for v in self.basis:
            nonzero = [i for i, x in enumerate(v) if x]
            if len(nonzero) != 1:
                return None
            indices.append(nonzero[0] + 1)
        return indices


def preimage(maps: Iterable[Matrix], target: Subspace) -> Subspace:
    """{x : M x lies in ``target`` for every M in ``maps``}."""
    ann = target.annihilator_matrix()
    rows: list[Vector] = []
    for m in maps:
        if ann.rows:
            rows.extend((ann @ m).row(i) for i in range(ann.rows))
    if not rows:
        return Subspace.full(target.ambient_dim)
    return kernel_basis(Matrix(rows))


class Signature(NamedTuple):
    positive: int
    negative: int
    null: int


def signature(g: Matrix) -> Signature:
    """Sylvester signature by symmetric Gaussian congruence.

    A zero diagonal is repaired by swapping in a nonzero diagonal entry, or
    failing that by folding a hyperbolic pair (e_i -> e_i + e_j).
    """
    if not g.is_symmetric():
        raise DimensionError("signature requires a symmetric matrix")
    a = g.tolist()
    pos = neg = 0
    while a:
        n = len(a)
        k = next((i for i in range(n) if a[i][i]), None)
        if k is None:
            pair = next(((i, j) for i in range(n) for j in range(i + 1, n) if a[i][j]), None)
            if pair is None:
                break
            i, j = pair
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] += r[j]
            k = i
        a[0], a[k] = a[k], a[0]
        for r in a:
            r[0], r[k] = r[k], r[0]
        p = a[0][0]
        if p > 0:
            pos += 1
        else:
            neg += 1
        a = [[a[r][c] - a[r][0] * a[0][c] / p for c in range(1, n)] for r in range(1, n)]
    return Signature(pos, neg, g.rows - pos - neg)
