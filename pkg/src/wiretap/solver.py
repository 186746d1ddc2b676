"""Alternating eigenvalue / eigenbasis optimization of the secrecy rate.

A run first aligns the eigenbasis by geodesic ascent (the initial eigenvalues
carry full power, so that step always has a live gradient), then alternates
the eigenvalue linearization and further basis ascents. The eigenvalue
half-step optimizes a lower bound, so its output is kept only when the true
rate does not drop; together with the monotone ascent steps this makes the
recorded trace non-decreasing.
"""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import numpy as np

from . import kernels
from .errors import InvalidConfigError, NumericalFailureError
from .linalg import hermitian_eig, qr_orthonormalize
from .model import (
    TransmitCovariance,
    require_eigenvalues,
    require_unitary,
    secrecy_rate_factors,
)
from .potdc import PotdcSettings, potdc_optimize_lambda
from .unitary import UnitarySettings, ascend_unitary

_RATE_GUARD = 1e-12  # slack when deciding whether a half-step kept the rate


class TerminationReason(str, Enum):
    THRESHOLD = "threshold"
    MAX_ITERS = "max_iters"
    NUMERICAL = "numerical"


@dataclass
class AlternatingSettings:
    """Outer loop thresholds plus the two subsolver settings.

    ``n_starts`` random restarts guard against local optima of the
    alternating scheme (set to 1 for strict single-start runs); all
    randomness derives from ``rng_seed``. ``warm_start_lambda=False`` resets
    the eigenvalue iterate to uniform at every alternation instead of
    carrying the previous optimum.
    """

    zeta2: float = 1e-5
    max_alternations: int = 50
    potdc: PotdcSettings = field(default_factory=PotdcSettings)
    unitary: UnitarySettings = field(default_factory=UnitarySettings)
    init_covariance: Optional[TransmitCovariance] = None
    n_starts: int = 3
    rng_seed: int = 0
    warm_start_lambda: bool = True

    def __post_init__(self):
        if not (np.isfinite(self.zeta2) and self.zeta2 > 0):
            raise InvalidConfigError("zeta2 must be positive and finite")
        if self.max_alternations < 1 or self.n_starts < 1:
            raise InvalidConfigError("iteration and start counts must be positive")


@dataclass
class SolverReport:
    p_opt: TransmitCovariance
    secrecy_rate: float
    alternation_trace: np.ndarray
    alternations: int
    converged: bool
    termination_reason: TerminationReason

    def to_dict(self):
        from .model import complex_to_pairs

        return {
            "secrecy_rate": self.secrecy_rate,
            "alternations": self.alternations,
            "converged": self.converged,
            "termination_reason": self.termination_reason.value,
            "alternation_trace": [float(v) for v in self.alternation_trace],
            "p_opt": complex_to_pairs(self.p_opt.p),
            "units": "nats",
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def assemble_covariance(u, lam):
    """Build the covariance u^H diag(lam) u as a validated value object."""
    uu = require_unitary(u)
    ll = require_eigenvalues(lam, uu.shape[0])
    return TransmitCovariance(kernels.covariance_from_factors_k(uu, ll))


def _random_factors(m, rng):
    g = rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))
    u = qr_orthonormalize(g)
    e = rng.exponential(size=m)
    lam = m * e / e.sum()
    return u, lam


def _initial_factors(ch, settings, start_index, rng):
    if start_index == 0 and settings.init_covariance is not None:
        p0 = settings.init_covariance
        if p0.m != ch.m:
            raise InvalidConfigError("init_covariance dimension does not match the channel")
        w, v = hermitian_eig(p0.p)
        return np.ascontiguousarray(v.conj().T), np.maximum(w, 0.0)
    return _random_factors(ch.m, rng)


def _solve_single(ch, settings, u, lam):
    trace = [secrecy_rate_factors(ch, u, lam)]
    best_obj = trace[0]
    best = (u, lam)
    converged = False
    reason = TerminationReason.MAX_ITERS
    alternations = 0
    try:
        # leading basis ascent: a cold random rotation routinely makes the
        # diagonal-bound eigenvalue step zero out all power, which is an
        # absorbing state (the basis gradient vanishes at zero power), so the
        # basis is aligned once before the first eigenvalue decision
        ures = ascend_unitary(ch, lam, u, settings.unitary)
        u = ures.u_opt
        trace.append(float(ures.objective_trace[-1]))
        if trace[-1] > best_obj:
            best_obj = trace[-1]
            best = (u, lam)
        for _ in range(settings.max_alternations):
            f_start = trace[-1]
            # eigenvalue half-step; keep the previous vector when the bound
            # optimum would lower the true rate
            warm = lam if settings.warm_start_lambda else None
            pot = potdc_optimize_lambda(ch, u, warm, settings.potdc)
            cand_rate = secrecy_rate_factors(ch, u, pot.lambda_opt)
            if cand_rate >= trace[-1] - _RATE_GUARD:
                lam = pot.lambda_opt
                trace.append(cand_rate)
            else:
                trace.append(trace[-1])
            # eigenbasis half-step
            ures = ascend_unitary(ch, lam, u, settings.unitary)
            u = ures.u_opt
            trace.append(float(ures.objective_trace[-1]))
            alternations += 1
            if trace[-1] > best_obj:
                best_obj = trace[-1]
                best = (u, lam)
            if trace[-1] - f_start <= settings.zeta2:
                converged = True
                reason = TerminationReason.THRESHOLD
                break
    except NumericalFailureError:
        converged = False
        reason = TerminationReason.NUMERICAL
    return best_obj, best, np.array(trace), alternations, converged, reason


def solve(ch, settings=None):
    """Optimize the transmit covariance of a channel instance.

    Runs ``n_starts`` alternating optimizations from random feasible
    full-power initializations (or the provided ``init_covariance`` for the
    first start) and reports the best covariance encountered. A start that
    collapses to zero rate is retried once from a rank-one full-power state:
    zero power is an absorbing state of the alternation (the basis gradient
    vanishes there), while from a rank-one state the basis ascent climbs the
    generalized Rayleigh quotient toward the best beamforming direction. The
    reported rate is clamped at zero since the zero covariance is always
    feasible.
    """
    settings = settings or AlternatingSettings()
    best = None
    for s in range(settings.n_starts):
        rng = np.random.default_rng(np.random.SeedSequence((int(settings.rng_seed) % (1 << 64), s)))
        u0, lam0 = _initial_factors(ch, settings, s, rng)
        outcome = _solve_single(ch, settings, u0, lam0)
        if outcome[0] <= 1e-12:
            rank_one = np.zeros(ch.m)
            rank_one[0] = float(ch.m)
            rescue = _solve_single(ch, settings, outcome[1][0], rank_one)
            if rescue[0] > outcome[0]:
                outcome = rescue
        if best is None or outcome[0] > best[0]:
            best = outcome
    best_obj, (u, lam), trace, alternations, converged, reason = best
    return SolverReport(
        p_opt=assemble_covariance(u, lam),
        secrecy_rate=max(0.0, float(best_obj)),
        alternation_trace=trace,
        alternations=alternations,
        converged=converged,
        termination_reason=reason,
    )
