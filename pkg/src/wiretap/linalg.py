"""Dense complex linear-algebra primitives with explicit numerical contracts.

All functions are pure: inputs are canonicalized to fresh complex128 arrays
and never mutated, so concurrent use is safe.
"""

import numpy as np

from . import kernels
from .errors import InvalidMatrixError, NotPositiveDefiniteError

HERMITIAN_RTOL = 1e-12
SKEW_RTOL = 1e-10
NULLSPACE_RTOL = 1e-10


def as_complex_matrix(a, name="matrix"):
    """Canonicalize ``a`` to a C-ordered complex128 2-D array.

    Raises
    ------
    InvalidMatrixError
        If the array is not 2-D with positive dimensions, or contains
        NaN/Inf entries.
    """
    arr = np.ascontiguousarray(np.asarray(a, dtype=np.complex128))
    if arr.ndim != 2 or arr.shape[0] == 0 or arr.shape[1] == 0:
        raise InvalidMatrixError(f"{name} must be a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise InvalidMatrixError(f"{name} contains non-finite entries")
    return arr


def require_hermitian(a, name="matrix", rtol=HERMITIAN_RTOL):
    """Validate Hermitian symmetry and return the symmetrized matrix."""
    arr = as_complex_matrix(a, name)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError(f"{name} must be square, got shape {arr.shape}")
    scale = max(1.0, float(np.linalg.norm(arr)))
    if float(np.linalg.norm(arr - arr.conj().T)) > rtol * scale:
        raise InvalidMatrixError(f"{name} is not Hermitian within tolerance {rtol}")
    return 0.5 * (arr + arr.conj().T)


def hermitian_eig(a):
    """Eigendecomposition of a Hermitian matrix.

    Returns
    -------
    (w, v)
        Real eigenvalues sorted descending and a unitary matrix of
        eigenvectors (columns), with ``a = v @ diag(w) @ v^H``.
    """
    arr = require_hermitian(a)
    w, v = np.linalg.eigh(arr)
    return np.ascontiguousarray(w[::-1]), np.ascontiguousarray(v[:, ::-1])


def logdet_hpd(a):
    """ln det of a Hermitian positive definite matrix.

    Computed from Cholesky pivots, never from the raw determinant, so it is
    stable for large dimensions and wide eigenvalue spreads.

    Raises
    ------
    NotPositiveDefiniteError
        If a pivot is non-positive.
    """
    arr = require_hermitian(a)
    try:
        return float(kernels.logdet_hpd_k(arr))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("matrix is not positive definite") from exc


def geig_hpd(a, b):
    """Generalized eigendecomposition ``a v = mu b v`` for Hermitian a, HPD b.

    Reduces the pencil with the Cholesky factor of ``b`` and diagonalizes the
    congruent Hermitian matrix, so the returned eigenvalues are real and the
    eigenvectors (columns) are b-orthonormal. Eigenvalues sorted descending.
    """
    aa = require_hermitian(a, "a")
    bb = require_hermitian(b, "b")
    if aa.shape != bb.shape:
        raise InvalidMatrixError("pencil matrices must share a shape")
    try:
        ell = np.linalg.cholesky(bb)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefiniteError("b is not positive definite") from exc
    x = np.linalg.solve(ell, aa)
    cc = np.linalg.solve(ell, x.conj().T).conj().T
    cc = 0.5 * (cc + cc.conj().T)
    w, y = np.linalg.eigh(cc)
    vecs = np.linalg.solve(ell.conj().T, y)
    return np.ascontiguousarray(w[::-1]), np.ascontiguousarray(vecs[:, ::-1])


def null_space_basis(a, tol=NULLSPACE_RTOL):
    """Orthonormal basis of the right null space of ``a``.

    The numerical rank counts singular values above ``tol * sigma_max``; the
    returned matrix is M x k with orthonormal columns and ``a @ basis ~ 0``.
    A full-rank input yields an M x 0 matrix.
    """
    arr = as_complex_matrix(a)
    _, s, vh = np.linalg.svd(arr, full_matrices=True)
    rank = 0
    if s.size and s[0] > 0.0:
        rank = int(np.sum(s > tol * s[0]))
    return np.ascontiguousarray(vh[rank:, :].conj().T)


def expm_skew(g):
    """Exponential of a skew-Hermitian matrix; the result is unitary.

    Computed exactly by diagonalizing the Hermitian matrix ``-i g`` and
    exponentiating its spectrum, which preserves unitarity to round-off.
    """
    arr = as_complex_matrix(g)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError("skew-Hermitian input must be square")
    scale = max(1.0, float(np.linalg.norm(arr)))
    if float(np.linalg.norm(arr + arr.conj().T)) > SKEW_RTOL * scale:
        raise InvalidMatrixError("input is not skew-Hermitian within tolerance")
    return kernels.expm_skew_k(arr)


def qr_orthonormalize(u):
    """Nearest-QR repair of an (almost) unitary square matrix.

    Returns the Q factor with the R diagonal rotated positive, so an exactly
    unitary input is returned unchanged up to round-off.
    """
    arr = as_complex_matrix(u)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError("input must be square")
    q, min_piv = kernels.qr_positive_k(arr)
    floor = arr.shape[0] * np.finfo(np.float64).eps * max(1.0, float(np.linalg.norm(arr)))
    if min_piv <= floor:
        raise InvalidMatrixError("input is numerically singular")
    return q
