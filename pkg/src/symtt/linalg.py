"""Dense complex linear-algebra kernels shared by every other module.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128; vectors are
1-D arrays.  The factorizations wrap LAPACK (via numpy/scipy) and add the
conventions the rest of the package relies on:

* singular values descending, with the largest-magnitude entry of each left
  singular vector rotated to the real non-negative axis (reproducible factors),
* Hermitian eigenvalues ascending, eigenvector phases fixed the same way,
* strict Hermiticity checks before ``eigh``.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.linalg

from .errors import NotHermitianError, ShapeMismatchError

#: relative residual tolerance the kernels are required to meet
EPS_LIN = 1e-12
#: relative singular-value cutoff defining numerical rank
EPS_RANK = 1e-12


def as_cmatrix(a) -> np.ndarray:
    """Coerce ``a`` to a 2-D complex128 array with finite entries."""
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got array of ndim {m.ndim}")
    if m.shape[0] < 1 or m.shape[1] < 1:
        raise ShapeMismatchError(f"matrix dimensions must be >= 1, got {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite (no NaN/Inf)")
    return m


def as_cvector(x) -> np.ndarray:
    """Coerce ``x`` to a 1-D complex128 array with finite entries."""
    v = np.asarray(x, dtype=np.complex128).reshape(-1)
    if not np.all(np.isfinite(v)):
        raise ValueError("vector entries must be finite (no NaN/Inf)")
    return v


def dagger(a: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return a.conj().T


def frob(a: np.ndarray) -> float:
    """Frobenius norm."""
    return float(np.linalg.norm(a))


def require_square(a: np.ndarray) -> int:
    if a.shape[0] != a.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {a.shape}")
    return a.shape[0]


def kron(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result is a[i, j] * b."""
    return np.kron(as_cmatrix(a), as_cmatrix(b))


def kron_chain(factors) -> np.ndarray:
    """Kronecker product of a sequence of matrices, left to right."""
    out = np.array([[1.0 + 0.0j]])
    for f in factors:
        out = np.kron(out, f)
    return out


class SvdResult(NamedTuple):
    u: np.ndarray
    sigma: np.ndarray
    vh: np.ndarray


class EighResult(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def _fix_phases(u: np.ndarray, vh: np.ndarray | None) -> None:
    """Rotate each column of ``u`` so its largest-|entry| is real >= 0.

    The compensating phase goes into the paired row of ``vh`` (when that row
    exists), keeping the factorization product unchanged.  Operates in place.
    """
    for k in range(u.shape[1]):
        col = u[:, k]
        idx = int(np.argmax(np.abs(col)))
        z = col[idx]
        mag = abs(z)
        if mag == 0.0:
            continue
        phase = z / mag
        u[:, k] *= np.conj(phase)
        if vh is not None and k < vh.shape[0]:
            vh[k, :] *= phase


def svd(a, full_matrices: bool = False) -> SvdResult:
    """SVD with descending singular values and fixed left-vector phases."""
    m = as_cmatrix(a)
    try:
        u, s, vh = np.linalg.svd(m, full_matrices=full_matrices)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ValueError(f"SVD did not converge: {exc}") from exc
    u = np.ascontiguousarray(u)
    vh = np.ascontiguousarray(vh)
    _fix_phases(u, vh)
    return SvdResult(u, s, vh)


def rank_from_sigma(sigma: np.ndarray, tol: float = 0.0) -> int:
    """Numerical rank: count of sigma above max(tol, EPS_RANK) * sigma[0]."""
    if len(sigma) == 0 or sigma[0] <= 0.0:
        return 1
    cutoff = max(tol, EPS_RANK) * sigma[0]
    return max(1, int(np.sum(sigma > cutoff)))


def eigh(a) -> EighResult:
    """Hermitian eigendecomposition, eigenvalues ascending.

    Raises NotHermitianError when ||a - a^H||_F > EPS_LIN * ||a||_F.
    """
    m = as_cmatrix(a)
    require_square(m)
    scale = frob(m)
    if frob(m - dagger(m)) > EPS_LIN * scale:
        raise NotHermitianError(
            f"matrix is not Hermitian within {EPS_LIN:g} relative tolerance"
        )
    w, v = np.linalg.eigh(m)
    v = np.ascontiguousarray(v)
    _fix_phases(v, None)
    return EighResult(w, v)


def schur(a) -> tuple[np.ndarray, np.ndarray]:
    """Complex Schur form: returns (q, t) with a = q^H t q, t upper triangular."""
    m = as_cmatrix(a)
    require_square(m)
    try:
        t, z = scipy.linalg.schur(m, output="complex")
    except scipy.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise ValueError(f"Schur iteration did not converge: {exc}") from exc
    return dagger(z), t


def fourier_matrix(n: int) -> np.ndarray:
    """Unitary Fourier matrix, f[j, k] = exp(2 pi i j k / n) / sqrt(n)."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    j = np.arange(n)
    return np.exp(2j * np.pi * np.outer(j, j) / n) / np.sqrt(n)


def exchange_matrix(n: int) -> np.ndarray:
    """Anti-identity permutation matrix of size n (entries exactly 0/1)."""
    if n < 1:
        raise ValueError(f"order must be >= 1, got {n}")
    return np.fliplr(np.eye(n, dtype=np.complex128))
