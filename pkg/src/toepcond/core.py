"""Triangular Toeplitz machinery.

An n x n lower-triangular Toeplitz matrix is exactly a polynomial in the
nilpotent Jordan block M_n, so matrices of this class are represented by
the first n Taylor coefficients of their symbol. Multiplication of
matrices is convolution of symbols truncated at order n, and inversion is
the classical triangular power-series reciprocal recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import linalg
from .errors import BezoutPairError, SingularSymbolError

COMMUTATOR_TOL = 1e-12


def _coeff_array(coeffs, n: int) -> np.ndarray:
    c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
    if c.shape[0] != n:
        raise ValueError(f"expected {n} coefficients, got {c.shape[0]}")
    return c


@dataclass(eq=False)
class AnalyticPolynomial:
    """Truncated Taylor series (a_0, ..., a_{n-1}); the symbol of a matrix."""

    n: int
    coeffs: np.ndarray

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("truncation order must be at least 1")
        self.coeffs = _coeff_array(self.coeffs, self.n)

    @classmethod
    def from_coeffs(cls, coeffs) -> "AnalyticPolynomial":
        c = np.asarray(coeffs, dtype=np.complex128).reshape(-1)
        return cls(c.shape[0], c)

    def padded(self, n: int) -> "AnalyticPolynomial":
        """Zero-pad or truncate to order n (truncation == working mod z^n)."""
        c = np.zeros(n, dtype=np.complex128)
        k = min(n, self.n)
        c[:k] = self.coeffs[:k]
        return AnalyticPolynomial(n, c)

    def __mul__(self, other: "AnalyticPolynomial") -> "AnalyticPolynomial":
        """Product truncated at max(self.n, other.n)."""
        n = max(self.n, other.n)
        full = np.convolve(self.coeffs, other.coeffs)
        return AnalyticPolynomial(n, full[:n])


def _lower_toeplitz(column: np.ndarray) -> np.ndarray:
    n = column.shape[0]
    idx = np.subtract.outer(np.arange(n), np.arange(n))
    out = np.zeros((n, n), dtype=np.complex128)
    mask = idx >= 0
    out[mask] = column[idx[mask]]
    return out


@dataclass(eq=False)
class AnalyticToeplitzMatrix:
    """Lower-triangular Toeplitz matrix f(M_n) determined by its symbol f."""

    n: int
    symbol: AnalyticPolynomial

    def __post_init__(self):
        if self.symbol.n != self.n:
            self.symbol = self.symbol.padded(self.n)

    @cached_property
    def matrix(self) -> np.ndarray:
        return _lower_toeplitz(self.symbol.coeffs)

    @property
    def first_column(self) -> np.ndarray:
        return self.symbol.coeffs.copy()

    @property
    def r_min(self) -> float:
        """Minimal eigenvalue modulus; the spectrum is {a_0} by triangularity."""
        return float(abs(self.symbol.coeffs[0]))


@dataclass(eq=False)
class GeneralToeplitzMatrix:
    """Full Toeplitz matrix from diagonals (a_{-n+1}, ..., a_{n-1})."""

    n: int
    diagonals: np.ndarray

    def __post_init__(self):
        self.diagonals = _coeff_array(self.diagonals, 2 * self.n - 1)

    @cached_property
    def matrix(self) -> np.ndarray:
        # entry(i, j) = a_{i-j}; diagonals[k] holds a_{k-(n-1)}
        idx = np.subtract.outer(np.arange(self.n), np.arange(self.n)) + self.n - 1
        return self.diagonals[idx]


def jordan_block(n: int) -> np.ndarray:
    """Nilpotent Jordan block: ones on the first subdiagonal."""
    if n < 1:
        raise ValueError("n must be at least 1")
    M = np.zeros((n, n), dtype=np.complex128)
    if n > 1:
        M[np.arange(1, n), np.arange(n - 1)] = 1.0
    return M


def apply_calculus(phi: AnalyticPolynomial, n: int | None = None) -> AnalyticToeplitzMatrix:
    """The matrix phi(M_n), i.e. sum_k phi_k M_n^k.

    Since M_n^n = 0 the series is truncated at order n; a shorter symbol is
    zero-padded. The result is the lower-triangular Toeplitz matrix whose
    first column is the coefficient vector.
    """
    if n is None:
        n = phi.n
    return AnalyticToeplitzMatrix(n, phi.padded(n))


def commutes_with_shift(A) -> bool:
    """Whether A commutes with the Jordan block of its size.

    True exactly for lower-triangular Toeplitz matrices (up to the
    COMMUTATOR_TOL entrywise tolerance).
    """
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.size == 0:
        raise ValueError("expected a nonempty square matrix")
    S = jordan_block(M.shape[0])
    return bool(np.max(np.abs(M @ S - S @ M)) <= COMMUTATOR_TOL)


def reciprocal_series(f: AnalyticPolynomial) -> AnalyticPolynomial:
    """g with f*g = 1 mod z^n, by the triangular recursion.

    g_0 = 1/a_0 and g_k = -(sum_{j=1..k} a_j g_{k-j}) / a_0. The recursion
    is exact up to roundoff and apply_calculus(g) is the inverse matrix of
    apply_calculus(f).
    """
    a = f.coeffs
    if abs(a[0]) <= 1e-14:
        raise SingularSymbolError(
            "constant term is (near) zero; the matrix f(M_n) is singular exactly when f(0) = 0"
        )
    n = f.n
    g = np.zeros(n, dtype=np.complex128)
    g[0] = 1.0 / a[0]
    for k in range(1, n):
        g[k] = -np.dot(a[1 : k + 1], g[k - 1 :: -1]) / a[0]
    return AnalyticPolynomial(n, g)


def bezout_remainder(f: AnalyticPolynomial, g: AnalyticPolynomial) -> np.ndarray:
    """Coefficients of h in f*g + z^n h = 1.

    Checks that the first n coefficients of the full product f*g are
    (1, 0, ..., 0) and returns the negated tail, of length n-1 (empty for
    n = 1). Raises BezoutPairError when f, g are not reciprocal mod z^n.
    """
    if f.n != g.n:
        raise ValueError("f and g must have the same truncation order")
    n = f.n
    full = np.convolve(f.coeffs, g.coeffs)
    head = full[:n].copy()
    head[0] -= 1.0
    dev = float(np.max(np.abs(head)))
    if dev > 1e-10:
        raise BezoutPairError(f"f*g differs from 1 mod z^n by {dev:.3e}")
    return -full[n:].copy()


def condition_number(A) -> float:
    """Spectral condition number ||A|| * ||A^{-1}||."""
    M = np.asarray(A, dtype=np.complex128)
    return linalg.spectral_norm(M) * linalg.inverse_norm(M)
