"""Kernel tests: norms, solves and defect ranks against dense SVD oracles."""

import numpy as np
import pytest

from toepcond import (
    PowerIterationError,
    SingularMatrixError,
    build_T_r,
    defect_rank,
    defect_singular_values,
    inverse_norm,
    model_operator,
    solve,
    spectral_norm,
)
from toepcond.linalg import lu_factor, lu_solve


def lower_toeplitz(column):
    column = np.asarray(column, dtype=complex)
    n = column.shape[0]
    out = np.zeros((n, n), dtype=complex)
    for k in range(n):
        out[np.arange(k, n), np.arange(n - k)] = column[k]
    return out


def random_complex(rng, shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


class TestSpectralNorm:
    def test_identity(self):
        assert spectral_norm(np.eye(3)) == pytest.approx(1.0, abs=1e-12)

    def test_zero_matrix(self):
        assert spectral_norm(np.zeros((2, 2))) == 0.0

    def test_triangular_toeplitz_236(self):
        # dense SVD oracle value is exactly 8; the first-column norm
        # sqrt(4 + 9 + 36) = 7 is a guaranteed lower bound
        A = lower_toeplitz([2, 3, 6])
        val = spectral_norm(A)
        assert 7.0 <= val <= 8.0 + 1e-10
        assert val == pytest.approx(8.0, rel=1e-11)

    def test_matches_svd_oracle(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            n = int(rng.integers(1, 12))
            A = random_complex(rng, (n, n))
            top = np.linalg.svd(A, compute_uv=False)[0]
            assert spectral_norm(A) == pytest.approx(top, rel=1e-9)

    def test_rectangular(self):
        rng = np.random.default_rng(11)
        A = random_complex(rng, (3, 5))
        top = np.linalg.svd(A, compute_uv=False)[0]
        assert spectral_norm(A) == pytest.approx(top, rel=1e-10)

    def test_scaling_invariance(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            n = int(rng.integers(1, 9))
            A = random_complex(rng, (n, n))
            c = complex(random_complex(rng, ()))
            assert spectral_norm(c * A) == pytest.approx(abs(c) * spectral_norm(A), rel=1e-10)

    def test_nonconvergence_carries_last_value(self):
        A = np.diag([2.0, 1.0])
        with pytest.raises(PowerIterationError) as info:
            spectral_norm(A, max_iter=1)
        assert info.value.last_value > 0.0
        assert info.value.iterations == 1

    def test_rejects_empty_and_bad_tol(self):
        with pytest.raises(ValueError):
            spectral_norm(np.zeros((0, 0)))
        with pytest.raises(ValueError):
            spectral_norm(np.eye(2), tol=0.0)


class TestSolve:
    def test_identity(self):
        x = solve(np.eye(3), np.array([1.0, 0.0, 0.0]))
        assert np.allclose(x, [1, 0, 0], atol=1e-14)

    def test_diagonal(self):
        x = solve(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))
        assert np.allclose(x, [1.0, 1.0], atol=1e-14)

    def test_model_operator_rhs(self):
        # residual oracle: multiply the solution back
        A = model_operator((0.5, -0.5)).matrix
        b = np.array([1.0, 0.0], dtype=complex)
        x = solve(A, b)
        assert np.linalg.norm(A @ x - b) <= 1e-10

    def test_random_residuals(self):
        rng = np.random.default_rng(17)
        for _ in range(10):
            n = int(rng.integers(2, 65))
            A = np.eye(n) + 0.1 * random_complex(rng, (n, n))
            b = random_complex(rng, n)
            x = solve(A, b)
            assert np.linalg.norm(A @ x - b) <= 1e-10 * np.linalg.norm(b)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            solve(np.zeros((2, 2)), np.array([1.0, 1.0]))
        with pytest.raises(SingularMatrixError):
            solve(np.diag([1.0, 1e-15]), np.array([1.0, 1.0]))

    def test_conjugate_transpose_solve(self):
        rng = np.random.default_rng(23)
        A = np.eye(5) + 0.2 * random_complex(rng, (5, 5))
        b = random_complex(rng, 5)
        lu, piv = lu_factor(A)
        x = lu_solve(lu, piv, b, conj_transpose=True)
        assert np.linalg.norm(A.conj().T @ x - b) <= 1e-10 * np.linalg.norm(b)


class TestInverseNorm:
    def test_identity(self):
        assert inverse_norm(np.eye(4)) == pytest.approx(1.0, abs=1e-12)

    def test_diagonal(self):
        assert inverse_norm(np.diag([0.5, 0.25])) == pytest.approx(4.0, rel=1e-12)

    def test_T_r_exemplar(self):
        val = inverse_norm(build_T_r(3, 0.5).matrix)
        assert 7.0 <= val <= 8.0 + 1e-9

    def test_matches_svd_oracle(self):
        rng = np.random.default_rng(29)
        for _ in range(20):
            n = int(rng.integers(2, 10))
            A = np.eye(n) + 0.3 * random_complex(rng, (n, n))
            smallest = np.linalg.svd(A, compute_uv=False)[-1]
            assert inverse_norm(A) == pytest.approx(1.0 / smallest, rel=1e-9)

    def test_condition_number_at_least_one(self):
        rng = np.random.default_rng(31)
        for _ in range(20):
            n = int(rng.integers(1, 8))
            A = np.eye(n) + 0.4 * random_complex(rng, (n, n))
            assert spectral_norm(A) * inverse_norm(A) >= 1.0 - 1e-12

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            inverse_norm(np.zeros((3, 3)))


class TestDefect:
    def test_unitary_has_rank_zero(self):
        theta = 0.7
        Q = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
        assert defect_rank(Q, 1e-8) == 0

    def test_zero_matrix_has_full_rank(self):
        for n in (1, 3, 5):
            assert defect_rank(np.zeros((n, n)), 1e-8) == n

    def test_T_r_defect_is_rank_one(self):
        # I - T*T for T = the r=0.5 symbol applied to the 3x3 Jordan block
        # has one singular value 1 - 0.5^6 = 0.984375 and the rest zero
        A = build_T_r(3, 0.5).matrix
        vals = defect_singular_values(A)
        assert vals[0] == pytest.approx(0.984375, abs=1e-10)
        assert np.all(vals[1:] <= 1e-10)
        assert defect_rank(A, 1e-8) == 1

    def test_values_match_eigen_oracle(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            n = int(rng.integers(1, 8))
            A = random_complex(rng, (n, n))
            A = A / (np.linalg.svd(A, compute_uv=False)[0] + 0.5)
            D = np.eye(n) - A.conj().T @ A
            oracle = np.sort(np.abs(np.linalg.eigvalsh(D)))[::-1]
            vals = defect_singular_values(A)
            assert np.allclose(vals, oracle, atol=1e-9)

    def test_rejects_expansive_input(self):
        with pytest.raises(ValueError):
            defect_rank(2.0 * np.eye(2), 1e-8)
