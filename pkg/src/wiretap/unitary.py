"""Steepest ascent over the unitary group for fixed eigenvalues.

Steps follow group geodesics: the skew-Hermitian ascent direction is
exponentiated exactly and applied multiplicatively, with occasional QR repair
against accumulated round-off drift.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidConfigError, InvalidMatrixError, NumericalFailureError
from .model import require_eigenvalues, require_unitary


@dataclass
class UnitarySettings:
    max_iters: int = 200
    grad_tol: float = 1e-6
    armijo_beta: float = 0.5
    armijo_c: float = 1e-4
    initial_step: float = 1.0
    reorthonormalize_every: int = 10

    def __post_init__(self):
        if self.max_iters < 1 or self.reorthonormalize_every < 1:
            raise InvalidConfigError("iteration counts must be positive")
        if not (np.isfinite(self.grad_tol) and self.grad_tol > 0):
            raise InvalidConfigError("grad_tol must be positive and finite")
        if not 0.0 < self.armijo_beta < 1.0 or not 0.0 < self.armijo_c < 1.0:
            raise InvalidConfigError("Armijo parameters must lie in (0, 1)")
        if not (np.isfinite(self.initial_step) and self.initial_step > 0):
            raise InvalidConfigError("initial_step must be positive")


@dataclass
class UnitaryResult:
    u_opt: np.ndarray
    objective_trace: np.ndarray
    iterates: np.ndarray
    iters: int
    converged: bool


def riemannian_gradient(euclid_grad, u):
    """Project a Euclidean gradient to the skew-Hermitian ascent direction.

    Returns grad @ u^H - u @ grad^H; moving along exp(mu * G) @ u increases
    the objective at first order by mu * ||G||_F^2.
    """
    g = np.ascontiguousarray(np.asarray(euclid_grad, dtype=np.complex128))
    uu = np.ascontiguousarray(np.asarray(u, dtype=np.complex128))
    if g.shape != uu.shape or g.ndim != 2 or g.shape[0] != g.shape[1]:
        raise InvalidMatrixError("gradient and unitary must be square with equal shapes")
    return kernels.riemannian_grad_k(g, uu)


def ascend_unitary(ch, lambda0, u_init, settings=None):
    """Armijo geodesic ascent of the secrecy rate over unitary matrices.

    Accepted steps satisfy improvement >= armijo_c * step * ||G||_F^2; the run
    stops when the direction norm falls below ``grad_tol``, the step
    collapses, or ``max_iters`` is hit. All recorded iterates stay unitary to
    within round-off thanks to periodic QR repair.
    """
    settings = settings or UnitarySettings()
    u0 = require_unitary(u_init, "u_init")
    if u0.shape[0] != ch.m:
        raise InvalidMatrixError("u_init dimension does not match the channel")
    lam = require_eigenvalues(lambda0, ch.m)
    u, trace, iterates, count, converged, status = kernels.unitary_ascent_k(
        ch.h_main,
        ch.h_eave,
        u0,
        lam,
        settings.max_iters,
        settings.grad_tol,
        settings.armijo_beta,
        settings.armijo_c,
        settings.initial_step,
        settings.reorthonormalize_every,
    )
    if status:
        raise NumericalFailureError("secrecy objective became non-finite during ascent")
    return UnitaryResult(
        u_opt=np.ascontiguousarray(u),
        objective_trace=trace[: count + 1].copy(),
        iterates=iterates[: count + 1].copy(),
        iters=int(count),
        converged=bool(converged),
    )
