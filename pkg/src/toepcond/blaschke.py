"""Blaschke factors and finite products.

The factor attached to a zero lambda in the open disk is
b_lambda(z) = (lambda - z)/(1 - conj(lambda) z); it is unimodular on the
unit circle and vanishes at lambda. This module provides Taylor
expansions, circle sampling and sup-norm lower bounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .core import AnalyticPolynomial
from .errors import SingularSymbolError


def _check_in_disk(z: complex) -> complex:
    z = complex(z)
    if abs(z) >= 1.0:
        raise ValueError(f"zero must lie in the open unit disk, got |z| = {abs(z):.6g}")
    return z


@dataclass(frozen=True)
class BlaschkeFactor:
    """Single factor b_lambda(z) = (lambda - z)/(1 - conj(lambda) z)."""

    zero: complex

    def __post_init__(self):
        object.__setattr__(self, "zero", _check_in_disk(self.zero))

    def eval(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        lam = self.zero
        return (lam - z) / (1.0 - np.conj(lam) * z)


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite product of Blaschke factors; an inner function of degree n."""

    zeros: tuple

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(_check_in_disk(z) for z in self.zeros))

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def eval(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=np.complex128)
        out = np.ones_like(z)
        for lam in self.zeros:
            out = out * (lam - z) / (1.0 - np.conj(lam) * z)
        return out


def taylor(factor: BlaschkeFactor, n: int) -> AnalyticPolynomial:
    """First n Taylor coefficients of b_lambda at 0.

    Closed form: a_0 = lambda, a_k = -(1 - |lambda|^2) conj(lambda)^{k-1}
    for k >= 1. For lambda = 0 this is the polynomial -z.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    lam = factor.zero
    c = np.zeros(n, dtype=np.complex128)
    c[0] = lam
    if n > 1:
        c[1:] = -(1.0 - abs(lam) ** 2) * np.conj(lam) ** np.arange(n - 1)
    return AnalyticPolynomial(n, c)


def reciprocal_taylor(factor: BlaschkeFactor, n: int) -> AnalyticPolynomial:
    """First n Taylor coefficients of 1/b_lambda at 0.

    Closed form: c_0 = 1/lambda, c_k = (1 - |lambda|^2)/lambda^{k+1}. Equals
    reciprocal_series(taylor(factor, n)) up to roundoff. Undefined for
    lambda = 0, where the factor itself vanishes at the origin.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    lam = factor.zero
    if lam == 0:
        raise SingularSymbolError("the factor with zero at the origin vanishes at 0")
    c = np.zeros(n, dtype=np.complex128)
    c[0] = 1.0 / lam
    if n > 1:
        c[1:] = (1.0 - abs(lam) ** 2) / lam ** np.arange(2, n + 1)
    return AnalyticPolynomial(n, c)


def _check_sample_count(m: int) -> int:
    m = int(m)
    if m < 16 or (m & (m - 1)) != 0:
        raise ValueError("sample count must be a power of two, at least 16")
    return m


Evaluable = Union[BlaschkeFactor, BlaschkeProduct, AnalyticPolynomial]


def eval_on_circle(g: Evaluable, m: int) -> np.ndarray:
    """Moduli |g| at the m-th roots of unity e^{2 pi i k/m}, k = 0..m-1.

    Polynomials are evaluated in one inverse FFT of the zero-padded
    coefficient vector; factors and products are evaluated pointwise from
    their rational form.
    """
    m = _check_sample_count(m)
    if isinstance(g, (BlaschkeFactor, BlaschkeProduct)):
        z = np.exp(2j * np.pi * np.arange(m) / m)
        return np.abs(g.eval(z))
    if isinstance(g, AnalyticPolynomial):
        coeffs = g.coeffs
    else:
        coeffs = np.asarray(g, dtype=np.complex128).reshape(-1)
    if coeffs.shape[0] > m:
        raise ValueError("sample count must be at least the coefficient count")
    padded = np.zeros(m, dtype=np.complex128)
    padded[: coeffs.shape[0]] = coeffs
    # ifft uses kernel e^{+2 pi i jk/m}, matching evaluation at the roots
    return np.abs(m * np.fft.ifft(padded))


def sup_norm_estimate(g: Evaluable, m: int = 4096) -> float:
    """Max of |g| over the m-point circle grid: a lower bound on the sup norm.

    Every inequality this package checks needs the sup norm from below
    only, so no certified upper bound is attempted.
    """
    return float(np.max(eval_on_circle(g, m)))
