"""Iterative linearization over the eigenvalue vector for a fixed eigenbasis.

The convex part of the bound objective (the per-coordinate -ln(1 + d*lam)
terms) is replaced by its tangent at the current point; the resulting concave
subproblem is solved by projected gradient ascent on the capped simplex. The
tangent minorizes the bound objective and touches it at the expansion point,
so every outer iteration is non-decreasing.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidConfigError, NumericalFailureError
from .model import require_eigenvalues, rotated_channel


@dataclass
class PotdcSettings:
    """Termination thresholds for the outer linearization and inner ascent."""

    zeta1: float = 1e-6
    max_outer_iters: int = 100
    inner_tol: float = 1e-8
    inner_max_iters: int = 500
    armijo_beta: float = 0.5
    armijo_c: float = 1e-4
    initial_step: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.zeta1) and self.zeta1 > 0):
            raise InvalidConfigError("zeta1 must be positive and finite")
        if not (np.isfinite(self.inner_tol) and self.inner_tol > 0):
            raise InvalidConfigError("inner_tol must be positive and finite")
        if self.max_outer_iters < 1 or self.inner_max_iters < 1:
            raise InvalidConfigError("iteration limits must be positive")
        if not 0.0 < self.armijo_beta < 1.0 or not 0.0 < self.armijo_c < 1.0:
            raise InvalidConfigError("Armijo parameters must lie in (0, 1)")
        if not (np.isfinite(self.initial_step) and self.initial_step > 0):
            raise InvalidConfigError("initial_step must be positive")


@dataclass
class PotdcResult:
    lambda_opt: np.ndarray
    objective_trace: np.ndarray
    outer_iters: int
    converged: bool


def project_capped_simplex(x, budget):
    """Euclidean projection of ``x`` onto {lam >= 0, sum(lam) <= budget}."""
    if not (np.isfinite(budget) and budget > 0):
        raise InvalidConfigError("budget must be positive and finite")
    arr = np.ascontiguousarray(np.asarray(x, dtype=np.float64))
    return kernels.project_capped_simplex_k(arr, float(budget))


def _linear_coeffs(d, lam_c):
    return d / (1.0 + d * lam_c)


def solve_linearized_subproblem(ch, u0, lambda_c, settings=None):
    """Maximize the tangent subproblem at ``lambda_c`` over the capped simplex.

    Projected gradient ascent with Armijo backtracking, warm-started at the
    expansion point, so the returned vector never scores below ``lambda_c``.
    """
    settings = settings or PotdcSettings()
    am, d = rotated_channel(ch, u0)
    lam_c = require_eigenvalues(lambda_c, ch.m)
    lin = _linear_coeffs(d, lam_c)
    lam, _, _, status = kernels.subproblem_pga_k(
        am,
        lin,
        lam_c,
        float(ch.m),
        settings.inner_tol,
        settings.inner_max_iters,
        settings.armijo_beta,
        settings.armijo_c,
        settings.initial_step,
    )
    if status:
        raise NumericalFailureError("linearized subproblem objective became non-finite")
    return lam


def linearized_objective(ch, u0, lam, lambda_c):
    """Tangent subproblem objective including its constant terms.

    With the constants kept, the value agrees with the bound objective at
    ``lam = lambda_c`` and minorizes it elsewhere on the feasible set.
    """
    am, d = rotated_channel(ch, u0)
    lam = require_eigenvalues(lam, ch.m)
    lam_c = require_eigenvalues(lambda_c, ch.m)
    lin = _linear_coeffs(d, lam_c)
    base = kernels.subproblem_value_k(am, lin, lam)
    return float(base + np.dot(lin, lam_c) - np.sum(np.log1p(d * lam_c)))


def potdc_optimize_lambda(ch, u0, lambda_init, settings=None):
    """Alternate tangent construction and subproblem solves until stationary.

    ``lambda_init=None`` starts from the uniform full-power vector (each entry
    one, summing to the budget); a caller-provided warm start is projected to
    the feasible set. Iterations stop once the bound objective moves by at
    most ``zeta1`` and its projected-gradient mapping is small (the KKT
    proxy), or at ``max_outer_iters``.
    """
    settings = settings or PotdcSettings()
    am, d = rotated_channel(ch, u0)
    m = ch.m
    budget = float(m)
    if lambda_init is None:
        lam = np.ones(m)
    else:
        lam = kernels.project_capped_simplex_k(
            np.ascontiguousarray(np.asarray(lambda_init, dtype=np.float64)), budget
        )
    f = float(kernels.hadamard_objective_k(am, d, lam))
    if not np.isfinite(f):
        raise NumericalFailureError("bound objective non-finite at the initial point")
    trace = [f]
    converged = False
    outer = 0
    for _ in range(settings.max_outer_iters):
        lin = _linear_coeffs(d, lam)
        lam_new, _, _, status = kernels.subproblem_pga_k(
            am,
            lin,
            lam,
            budget,
            settings.inner_tol,
            settings.inner_max_iters,
            settings.armijo_beta,
            settings.armijo_c,
            settings.initial_step,
        )
        if status:
            raise NumericalFailureError("linearized subproblem objective became non-finite")
        f_new = float(kernels.hadamard_objective_k(am, d, lam_new))
        if not np.isfinite(f_new):
            raise NumericalFailureError("bound objective became non-finite")
        lam = lam_new
        trace.append(f_new)
        outer += 1
        if abs(f_new - trace[-2]) <= settings.zeta1:
            g = kernels.lambda_logdet_grad_k(am, lam) - _linear_coeffs(d, lam)
            mapped = kernels.project_capped_simplex_k(lam + g, budget)
            if float(np.linalg.norm(mapped - lam)) <= 10.0 * settings.inner_tol:
                converged = True
                break
    return PotdcResult(
        lambda_opt=lam,
        objective_trace=np.array(trace),
        outer_iters=outer,
        converged=converged,
    )
