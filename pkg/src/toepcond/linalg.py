"""Dense complex linear-algebra kernel.

Spectral norms, linear solves and defect ranks on plain numpy arrays of
complex128. Extreme singular values are obtained by power iteration; no
full SVD or eigendecomposition is ever formed, which keeps every result
deterministic and the dependency surface minimal.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from .errors import PowerIterationError, SingularMatrixError

_EPS = float(np.finfo(np.float64).eps)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 100_000

# Pivot magnitudes below this are treated as exact singularity.
PIVOT_TOL = 1e-14


def _as_matrix(A) -> np.ndarray:
    M = np.asarray(A, dtype=np.complex128)
    if M.ndim != 2 or M.size == 0:
        raise ValueError("expected a nonempty two-dimensional array")
    return M


def _require_square(M: np.ndarray) -> int:
    if M.shape[0] != M.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {M.shape}")
    return M.shape[0]


def _power_hermitian(
    apply_op: Callable[[np.ndarray], np.ndarray],
    dim: int,
    tol: float,
    max_iter: int,
    floor: float,
    start: Optional[np.ndarray] = None,
):
    """Largest-magnitude eigenvalue of a Hermitian operator.

    Power iteration with a deterministic start (normalized all-ones unless
    `start` is given). Returns (eigenvalue, eigenvector, iterations).

    Stopping is decided on the Rayleigh quotient. A step is accepted as
    converged when its increment either sits at the absolute noise floor
    or, together with the geometric tail estimate delta*rho/(1-rho) built
    from the previous increment, falls below tol relative to the current
    value. The tail estimate prevents premature stops on slowly decaying
    increments (near-degenerate spectra).

    If the iterate stagnates at zero (start vector orthogonal to the range,
    or a zero operator), the iteration restarts once from (1, 2, ..., dim);
    a second stagnation reports eigenvalue 0.
    """
    if start is None:
        v = np.full(dim, 1.0 / np.sqrt(dim), dtype=np.complex128)
    else:
        v = np.asarray(start, dtype=np.complex128)
        v = v / np.linalg.norm(v)
    restarted = False
    lam_prev = None
    delta_prev = None
    lam = 0.0
    for it in range(1, max_iter + 1):
        w = apply_op(v)
        lam = float(np.real(np.vdot(v, w)))
        wn = float(np.linalg.norm(w))
        if wn == 0.0 or abs(lam) <= floor:
            if restarted:
                return 0.0, v, it
            v = np.arange(1, dim + 1, dtype=np.complex128)
            v /= np.linalg.norm(v)
            restarted = True
            lam_prev = None
            delta_prev = None
            continue
        v = w / wn
        if lam_prev is not None:
            delta = abs(lam - lam_prev)
            thresh = max(tol * abs(lam), floor)
            if delta <= floor:
                return lam, v, it
            if delta <= thresh and delta_prev is not None and delta_prev > 0.0:
                rho = delta / delta_prev
                if rho < 1.0 and delta * rho / (1.0 - rho) <= thresh:
                    return lam, v, it
            delta_prev = delta
        lam_prev = lam
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} iterations",
        last_value=lam,
        iterations=max_iter,
    )


def spectral_norm(A, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest singular value of A, certified from below.

    Power iteration on A*A with the deterministic all-ones start; the
    returned value has relative error at most `tol` for matrices whose top
    singular value is separated, and is never an overestimate beyond
    roundoff.
    """
    M = _as_matrix(A)
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    fro2 = float(np.real(np.vdot(M, M)))
    if fro2 == 0.0:
        return 0.0
    # lam approximates sigma_max^2; 8 eps ||A||_F^2 is its noise floor
    floor = 8.0 * _EPS * fro2
    B = M.conj().T @ M  # forming A*A is fine: only its top eigenvalue is used

    def apply_op(v: np.ndarray) -> np.ndarray:
        return B @ v

    try:
        lam, _, _ = _power_hermitian(apply_op, M.shape[1], tol, max_iter, floor)
    except PowerIterationError as exc:
        raise PowerIterationError(
            str(exc),
            last_value=float(np.sqrt(max(exc.last_value, 0.0))),
            iterations=exc.iterations,
        ) from None
    return float(np.sqrt(max(lam, 0.0)))


def lu_factor(A):
    """LU factorization with partial pivoting, packed LAPACK style.

    Returns (LU, piv) where piv[k] is the row swapped into position k at
    step k. Raises SingularMatrixError when a pivot falls below PIVOT_TOL.
    """
    M = _as_matrix(A).copy()
    n = _require_square(M)
    piv = np.arange(n)
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[p, k]) < PIVOT_TOL:
            raise SingularMatrixError(
                f"matrix is singular to working precision (pivot {abs(M[p, k]):.3e} at step {k})"
            )
        if p != k:
            M[[k, p], :] = M[[p, k], :]
        piv[k] = p
        M[k + 1 :, k] /= M[k, k]
        if k + 1 < n:
            M[k + 1 :, k + 1 :] -= np.outer(M[k + 1 :, k], M[k, k + 1 :])
    return M, piv


def lu_solve(lu: np.ndarray, piv: np.ndarray, b, conj_transpose: bool = False) -> np.ndarray:
    """Solve A x = b (or A* x = b) from a packed factorization of A."""
    n = lu.shape[0]
    x = np.asarray(b, dtype=np.complex128).copy()
    if x.shape != (n,):
        raise ValueError(f"right-hand side must have shape ({n},)")
    if not conj_transpose:
        for k in range(n):
            p = piv[k]
            if p != k:
                x[k], x[p] = x[p], x[k]
        for k in range(1, n):  # L y = P b, unit diagonal
            x[k] -= lu[k, :k] @ x[:k]
        for k in range(n - 1, -1, -1):  # U x = y
            x[k] = (x[k] - lu[k, k + 1 :] @ x[k + 1 :]) / lu[k, k]
    else:
        # A = P^T L U, so A* = U* L* P: solve U* y = b, L* z = y, x = P^T z
        for k in range(n):
            x[k] = (x[k] - lu[:k, k].conj() @ x[:k]) / lu[k, k].conj()
        for k in range(n - 1, -1, -1):
            x[k] -= lu[k + 1 :, k].conj() @ x[k + 1 :]
        for k in range(n - 1, -1, -1):
            p = piv[k]
            if p != k:
                x[k], x[p] = x[p], x[k]
    return x


def solve(A, b) -> np.ndarray:
    """Solve A x = b by Gaussian elimination with partial pivoting."""
    M = _as_matrix(A)
    _require_square(M)
    lu, piv = lu_factor(M)
    return lu_solve(lu, piv, b)


def inverse_norm(A, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> float:
    """Largest singular value of A^{-1}, i.e. 1/sigma_min(A).

    Power iteration on (A*A)^{-1} where every operator application is a
    pair of triangular solves from one LU factorization; A^{-1} is never
    formed.
    """
    M = _as_matrix(A)
    _require_square(M)
    lu, piv = lu_factor(M)

    def apply_op(v: np.ndarray) -> np.ndarray:
        y = lu_solve(lu, piv, v, conj_transpose=True)
        return lu_solve(lu, piv, y)

    try:
        lam, _, _ = _power_hermitian(apply_op, M.shape[0], tol, max_iter, floor=0.0)
    except PowerIterationError as exc:
        raise PowerIterationError(
            str(exc),
            last_value=float(np.sqrt(max(exc.last_value, 0.0))),
            iterations=exc.iterations,
        ) from None
    return float(np.sqrt(max(lam, 0.0)))


def defect_singular_values(A, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """All singular values of the defect operator I - A*A, descending.

    The defect is Hermitian, so its singular values are the moduli of its
    eigenvalues; they are extracted by power iteration with repeated
    deflation. The first stage starts from all-ones; later stages use
    fixed-seed pseudo-random starts so that deflated directions cannot
    trap the iteration (with a deterministic start a whole remaining
    eigenspace can be missed once two directions are deflated).
    """
    M = _as_matrix(A)
    n = _require_square(M)
    D = np.eye(n, dtype=np.complex128) - M.conj().T @ M
    scale = float(np.linalg.norm(D))
    if scale == 0.0:
        return np.zeros(n)
    floor = 8.0 * _EPS * scale
    vals = np.zeros(n)
    for stage in range(n):
        if stage == 0:
            start = None
        else:
            rng = np.random.default_rng([20260817, stage])
            start = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        Dcur = D

        def apply_op(v: np.ndarray, _D=Dcur) -> np.ndarray:
            return _D @ v

        lam, vec, _ = _power_hermitian(apply_op, n, tol, max_iter, floor, start=start)
        vals[stage] = abs(lam)
        if lam != 0.0:
            D = D - lam * np.outer(vec, vec.conj())
    return np.sort(vals)[::-1]


def defect_rank(A, tol: float = 1e-8) -> int:
    """Number of singular values of I - A*A exceeding tol.

    Only meaningful for contractions; enforces spectral_norm(A) <= 1 + tol.
    """
    M = _as_matrix(A)
    _require_square(M)
    nrm = spectral_norm(M)
    if nrm > 1.0 + tol:
        raise ValueError(f"defect_rank expects a contraction, got spectral norm {nrm:.6g}")
    vals = defect_singular_values(M)
    return int(np.count_nonzero(vals > tol))
