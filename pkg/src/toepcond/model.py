"""Compressed-shift matrices on finite model spaces.

Given zeros lambda_1, ..., lambda_n in the open disk, the model space of
their Blaschke product carries the orthonormal Malmquist-Walsh basis

    e_k(z) = sqrt(1 - |lambda_k|^2) / (1 - conj(lambda_k) z)
             * prod_{j < k} (z - lambda_j)/(1 - conj(lambda_j) z).

The compression of multiplication by z to this space, written in that
basis, is lower triangular with diagonal (lambda_1, ..., lambda_n), is a
contraction, and has one-dimensional defect. These are the matrices that
attain the 1/r^n bound on the inverse norm when all |lambda_j| = r.

The partial products use the factor (z - lambda)/(1 - conj(lambda) z),
the sign-flipped variant of BlaschkeFactor, so that zeros at the origin
reproduce the monomial basis and the matrix of the shift is exactly the
Jordan block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg
from .errors import ExtremalityError, QuadratureAccuracyError

GRAM_TARGET = 1e-8
GRAM_LIMIT = 1e-6
MAX_SAMPLES = 2**20


@dataclass(eq=False)
class ModelOperatorMatrix:
    """Matrix of the compressed shift in the Malmquist-Walsh basis."""

    n: int
    zeros: tuple
    matrix: np.ndarray

    @property
    def r_min(self) -> float:
        """Minimal eigenvalue modulus; the spectrum is the zero set."""
        return float(min(abs(z) for z in self.zeros))


@dataclass(eq=False)
class ExtremalityReport:
    """Norm equalities of a model operator with all zeros on |z| = r."""

    n: int
    r: float
    zeros: tuple
    norm: float
    inv_norm: float
    kronecker: float
    rel_gap: float
    defect_rank: int


def _checked_zeros(zeros) -> tuple:
    zs = tuple(complex(z) for z in zeros)
    if len(zs) == 0:
        raise ValueError("at least one zero is required")
    for z in zs:
        if abs(z) >= 1.0:
            raise ValueError(f"zeros must lie in the open unit disk, got |z| = {abs(z):.6g}")
    return zs


def malmquist_walsh_samples(zeros, m: int) -> np.ndarray:
    """Values of the basis functions on the m-point circle grid.

    Returns an n x m array whose k-th row samples e_{k+1}. Requires m to be
    a power of two with m >= max(16, 4n).
    """
    zs = _checked_zeros(zeros)
    n = len(zs)
    m = int(m)
    if m < max(16, 4 * n) or (m & (m - 1)) != 0:
        raise ValueError("sample count must be a power of two, at least max(16, 4n)")
    z = np.exp(2j * np.pi * np.arange(m) / m)
    E = np.empty((n, m), dtype=np.complex128)
    partial = np.ones(m, dtype=np.complex128)
    for k, lam in enumerate(zs):
        kernel = np.sqrt(1.0 - abs(lam) ** 2) / (1.0 - np.conj(lam) * z)
        E[k] = kernel * partial
        partial = partial * (z - lam) / (1.0 - np.conj(lam) * z)
    return E


def _gram_deviation(E: np.ndarray, m: int) -> float:
    G = (E @ E.conj().T) / m
    return float(np.max(np.abs(G - np.eye(E.shape[0]))))


def model_operator(zeros, m: int = 4096) -> ModelOperatorMatrix:
    """Compressed-shift matrix computed by trapezoidal circle quadrature.

    The quadrature is self-validating: the Gram matrix of the sampled basis
    must come out as the identity. The sample count doubles until the Gram
    deviation is at most GRAM_TARGET; if even MAX_SAMPLES leaves it above
    GRAM_LIMIT, a QuadratureAccuracyError is raised (zeros very close to
    the circle need more samples).
    """
    zs = _checked_zeros(zeros)
    n = len(zs)
    m = int(m)
    while True:
        E = malmquist_walsh_samples(zs, m)
        dev = _gram_deviation(E, m)
        if dev <= GRAM_TARGET or m >= MAX_SAMPLES:
            break
        m *= 2
    if dev > GRAM_LIMIT:
        raise QuadratureAccuracyError(
            f"Gram deviation {dev:.3e} at m = {m}; increase the sample count",
            m_last=m,
            deviation=dev,
        )
    z = np.exp(2j * np.pi * np.arange(m) / m)
    # entries <z e_k, e_l>: row l, column k
    M = np.conj(E) @ (z * E).T / m
    return ModelOperatorMatrix(n=n, zeros=zs, matrix=M)


def verify_extremality(r: float, zeros, m: int = 4096) -> ExtremalityReport:
    """Check the equality case ||M^{-1}|| = 1/r^n for zeros on |z| = r.

    Builds the model operator, computes both norms, and verifies
    r^n ||M^{-1}|| = 1 to relative 1e-6 together with the norm identity
    ||M|| = 1. The norm identity needs a space of dimension at least 2:
    the 1x1 compression is plain multiplication by its zero, so for n = 1
    the expected norm is r itself. The defect rank is reported alongside
    (it must be 1 for these contractions).
    """
    r = float(r)
    if not 0.0 < r < 1.0:
        raise ValueError("r must lie strictly between 0 and 1")
    zs = _checked_zeros(zeros)
    for z in zs:
        if abs(abs(z) - r) > 1e-12:
            raise ValueError(f"all zeros must have modulus r = {r}, got |z| = {abs(z):.12g}")
    op = model_operator(zs, m)
    n = len(zs)
    nrm = linalg.spectral_norm(op.matrix)
    inv = linalg.inverse_norm(op.matrix)
    kron = 1.0 / r**n
    rel_gap = abs(inv - kron) / kron
    norm_target = 1.0 if n >= 2 else r
    if abs(nrm - norm_target) > 1e-6:
        raise ExtremalityError(f"expected norm {norm_target:.12g}, got {nrm:.12g}")
    if rel_gap > 1e-6:
        raise ExtremalityError(
            f"inverse norm {inv:.12g} differs from 1/r^n = {kron:.12g} by relative {rel_gap:.3e}"
        )
    rank = linalg.defect_rank(op.matrix, 1e-8)
    return ExtremalityReport(
        n=n,
        r=r,
        zeros=zs,
        norm=nrm,
        inv_norm=inv,
        kronecker=kron,
        rel_gap=rel_gap,
        defect_rank=rank,
    )
