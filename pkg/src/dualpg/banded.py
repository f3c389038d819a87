"""Band matrices, LU factorization without pivoting, and operation counting.

Storage is diagonal-major: entry (i, j) with -p <= j - i <= q lives at
data[q + i - j, j]; slots outside the matrix stay zero.  Elimination never
fills outside the band, so L (unit lower, bandwidth p) and U (upper,
bandwidth q) overwrite the same layout.  Every addition, subtraction,
multiplication and division actually performed is counted.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SingularMatrixError",
    "OpCount",
    "BandedMatrix",
    "BandedLU",
    "lu_factor_banded",
    "solve_banded",
    "solve_diagonal_third",
    "solve_diagonal_fifth",
    "diagonal_third_from_moments",
    "diagonal_fifth_from_moments",
]

PIVOT_FLOOR = 1e-300


class SingularMatrixError(ArithmeticError):
    """Elimination hit a vanishing pivot (leading principal minor ~ 0)."""


@dataclass
class OpCount:
    """Tally of scalar arithmetic operations."""

    additions: int = 0
    subtractions: int = 0
    multiplications: int = 0
    divisions: int = 0

    @property
    def total(self) -> int:
        return self.additions + self.subtractions + self.multiplications + self.divisions


@dataclass
class BandedMatrix:
    """Square band matrix with lower bandwidth p and upper bandwidth q."""

    n: int
    p: int
    q: int
    data: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if not (0 <= self.p < self.n and 0 <= self.q < self.n):
            raise ValueError("bandwidths must satisfy 0 <= p, q < n")
        if self.data is None:
            self.data = np.zeros((self.p + self.q + 1, self.n))
        elif self.data.shape != (self.p + self.q + 1, self.n):
            raise ValueError("data must have shape (p+q+1, n)")

    def in_band(self, i: int, j: int) -> bool:
        return -self.p <= j - i <= self.q

    def get(self, i: int, j: int) -> float:
        if not (0 <= i < self.n and 0 <= j < self.n) or not self.in_band(i, j):
            return 0.0
        return float(self.data[self.q + i - j, j])

    def set(self, i: int, j: int, value: float) -> None:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise IndexError(f"entry ({i}, {j}) outside a {self.n}x{self.n} matrix")
        if not self.in_band(i, j):
            raise IndexError(f"entry ({i}, {j}) outside band p={self.p}, q={self.q}")
        self.data[self.q + i - j, j] = value

    def add(self, i: int, j: int, value: float) -> None:
        self.set(i, j, self.get(i, j) + value)

    def matvec(self, x: np.ndarray) -> np.ndarray:
        """y = A x, accumulated diagonal by diagonal."""
        x = np.asarray(x, dtype=float)
        y = np.zeros(self.n)
        for d in range(-self.p, self.q + 1):
            row = self.data[self.q - d]
            if d >= 0:
                y[: self.n - d] += row[d:] * x[d:]
            else:
                y[-d:] += row[: self.n + d] * x[: self.n + d]
        return y

    def rmatvec(self, x: np.ndarray) -> np.ndarray:
        """y = A^T x."""
        x = np.asarray(x, dtype=float)
        y = np.zeros(self.n)
        for d in range(-self.p, self.q + 1):
            row = self.data[self.q - d]
            if d >= 0:
                y[d:] += row[d:] * x[: self.n - d]
            else:
                y[: self.n + d] += row[: self.n + d] * x[-d:]
        return y

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n, self.n))
        for i in range(self.n):
            for j in range(max(0, i - self.p), min(self.n, i + self.q + 1)):
                out[i, j] = self.get(i, j)
        return out

    def copy(self) -> "BandedMatrix":
        return BandedMatrix(self.n, self.p, self.q, self.data.copy())


@dataclass
class BandedLU:
    """In-band LU factors (L unit lower / U upper share one layout)."""

    n: int
    p: int
    q: int
    data: np.ndarray
    ops: OpCount

    def _get(self, i: int, j: int) -> float:
        return float(self.data[self.q + i - j, j])

    def solve(self, rhs: np.ndarray) -> tuple[np.ndarray, OpCount]:
        """Forward/back substitution; returns solution and its OpCount."""
        if len(rhs) != self.n:
            raise ValueError(f"rhs length {len(rhs)} != dimension {self.n}")
        ops = OpCount()
        x = np.asarray(rhs, dtype=float).copy()
        n, p, q = self.n, self.p, self.q
        for i in range(n):
            for j in range(max(0, i - p), i):
                x[i] -= self._get(i, j) * x[j]
                ops.multiplications += 1
                ops.subtractions += 1
        for i in range(n - 1, -1, -1):
            for j in range(i + 1, min(n, i + q + 1)):
                x[i] -= self._get(i, j) * x[j]
                ops.multiplications += 1
                ops.subtractions += 1
            x[i] /= self._get(i, i)
            ops.divisions += 1
        return x, ops

    def solve_transpose(self, rhs: np.ndarray) -> np.ndarray:
        """Solve A^T y = rhs through the same factors (A^T = U^T L^T)."""
        if len(rhs) != self.n:
            raise ValueError(f"rhs length {len(rhs)} != dimension {self.n}")
        x = np.asarray(rhs, dtype=float).copy()
        n, p, q = self.n, self.p, self.q
        for i in range(n):
            for j in range(max(0, i - q), i):
                x[i] -= self._get(j, i) * x[j]
            x[i] /= self._get(i, i)
        for i in range(n - 1, -1, -1):
            for j in range(i + 1, min(n, i + p + 1)):
                x[i] -= self._get(j, i) * x[j]
        return x


def lu_factor_banded(matrix: BandedMatrix) -> BandedLU:
    """LU factorization without pivoting, confined to the band."""
    n, p, q = matrix.n, matrix.p, matrix.q
    data = matrix.data.copy()
    ops = OpCount()

    def get(i: int, j: int) -> float:
        return float(data[q + i - j, j])

    for k in range(n):
        pivot = get(k, k)
        if abs(pivot) < PIVOT_FLOOR:
            raise SingularMatrixError(
                f"vanishing pivot at row {k} (|{pivot:.3e}| < {PIVOT_FLOOR:g})"
            )
        for i in range(k + 1, min(n, k + p + 1)):
            mult = get(i, k) / pivot
            ops.divisions += 1
            data[q + i - k, k] = mult
            for j in range(k + 1, min(n, k + q + 1)):
                data[q + i - j, j] -= mult * get(k, j)
                ops.multiplications += 1
                ops.subtractions += 1
    return BandedLU(n=n, p=p, q=q, data=data, ops=ops)


def solve_banded(factored: BandedLU, rhs: np.ndarray) -> tuple[np.ndarray, OpCount]:
    """Solve the factored system for one right-hand side."""
    return factored.solve(rhs)


def solve_diagonal_third(fstar: np.ndarray) -> np.ndarray:
    """Third-order solve when all operator coefficients vanish.

    The system is the diagonal B1, so a_k = fstar_k / (2 (k+1) (k+3)).
    """
    fstar = np.asarray(fstar, dtype=float)
    k = np.arange(fstar.size)
    return fstar / (2.0 * (k + 1) * (k + 3))


def diagonal_third_from_moments(f: np.ndarray) -> np.ndarray:
    """Explicit route a_k = (k+2)/16 f_k from the unnormalized moments."""
    f = np.asarray(f, dtype=float)
    k = np.arange(f.size)
    return (k + 2) / 16.0 * f


def solve_diagonal_fifth(fstar: np.ndarray) -> np.ndarray:
    """Fifth-order diagonal solve: a_k = fstar_k / (3 (k+1)(k+2)(k+4)(k+5))."""
    fstar = np.asarray(fstar, dtype=float)
    k = np.arange(fstar.size)
    return fstar / (3.0 * (k + 1) * (k + 2) * (k + 4) * (k + 5))


def diagonal_fifth_from_moments(f: np.ndarray) -> np.ndarray:
    """Explicit route a_k = (k+3)/384 f_k from the unnormalized moments."""
    f = np.asarray(f, dtype=float)
    k = np.arange(f.size)
    return (k + 3) / 384.0 * f
