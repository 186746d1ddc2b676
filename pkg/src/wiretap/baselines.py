"""Reference precoders, the closed-form MISOME capacity, and a random-search oracle."""

from enum import Enum

import numpy as np

from . import kernels
from .errors import InvalidConfigError
from .linalg import geig_hpd, hermitian_eig, null_space_basis
from .model import TransmitCovariance, secrecy_rate

_ORACLE_BLOCK = 8192  # fixed block size keeps sample streams prefix-stable


class PrecoderKind(str, Enum):
    POTDC = "potdc"
    GSVD = "gsvd"
    ZERO_FORCING = "zero_forcing"
    SLNR = "slnr"
    WATER_FILLING = "water_filling"
    ISOTROPIC = "isotropic"
    RANDOM_SEARCH_ORACLE = "random_search_oracle"


def water_fill(gains, budget):
    """Water-filling power allocation over parallel subchannels.

    Maximizes sum ln(1 + g_i p_i) subject to sum p_i <= budget, p >= 0. The
    water level is found by bisection; dead subchannels (g_i = 0) get zero
    power, and an all-zero gain vector returns the zero allocation.
    """
    if not (np.isfinite(budget) and budget > 0):
        raise InvalidConfigError("budget must be positive and finite")
    g = np.asarray(gains, dtype=np.float64)
    if g.ndim != 1 or np.any(g < 0) or not np.all(np.isfinite(g)):
        raise InvalidConfigError("gains must be a nonnegative finite vector")
    active = g > 0
    if not np.any(active):
        return np.zeros_like(g)
    inv = np.zeros_like(g)
    inv[active] = 1.0 / g[active]

    def allocated(mu):
        p = np.maximum(0.0, mu - inv)
        p[~active] = 0.0
        return p

    lo = 0.0
    hi = float(budget + inv[active].max())
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if allocated(mid).sum() > budget:
            hi = mid
        else:
            lo = mid
    return allocated(lo)


def precode_water_filling(ch):
    """Water-fill the full budget over the main-channel eigenmodes."""
    gram = ch.h_main.conj().T @ ch.h_main
    w, v = hermitian_eig(gram)
    p = water_fill(np.maximum(w, 0.0), float(ch.m))
    return TransmitCovariance((v * p) @ v.conj().T)


def precode_isotropic(ch):
    """Identity covariance: the full budget spread evenly over all antennas."""
    return TransmitCovariance(np.eye(ch.m, dtype=np.complex128))


def precode_zero_forcing(ch, tol=1e-10):
    """Confine transmission to the eavesdropper's null space.

    Water-fills the budget over the main-channel eigenmodes inside the null
    space, which keeps the eavesdropper's log-det term at exactly zero. A
    full-rank eavesdropper (empty null space) yields the zero covariance.
    """
    basis = null_space_basis(ch.h_eave, tol)
    if basis.shape[1] == 0:
        return TransmitCovariance(np.zeros((ch.m, ch.m), dtype=np.complex128))
    heff = ch.h_main @ basis
    w, v = hermitian_eig(heff.conj().T @ heff)
    p = water_fill(np.maximum(w, 0.0), float(ch.m))
    inner = (v * p) @ v.conj().T
    return TransmitCovariance(basis @ inner @ basis.conj().T)


def precode_slnr(ch):
    """Rank-one beamforming along the top signal-to-leakage-plus-noise direction.

    The direction is the principal generalized eigenvector of the pencil
    (h_main^H h_main, I + h_eave^H h_eave), normalized and fed the full budget.
    """
    a = ch.h_main.conj().T @ ch.h_main
    b = np.eye(ch.m, dtype=np.complex128) + ch.h_eave.conj().T @ ch.h_eave
    _, vecs = geig_hpd(a, b)
    w = vecs[:, 0]
    w = w / np.linalg.norm(w)
    return TransmitCovariance(ch.m * np.outer(w, w.conj()))


def _pga_separable_rates(a, b, budget, tol=1e-10, max_iters=500):
    # maximize sum ln(1+a_i p_i) - ln(1+b_i p_i) over the capped simplex,
    # projected gradient ascent from the equal-power point
    k = a.size
    p = np.full(k, budget / k)

    def value(q):
        return float(np.sum(np.log1p(a * q) - np.log1p(b * q)))

    f = value(p)
    for _ in range(max_iters):
        g = a / (1.0 + a * p) - b / (1.0 + b * p)
        ref = kernels.project_capped_simplex_k(p + g, budget)
        if np.linalg.norm(ref - p) <= tol:
            break
        step = 1.0
        accepted = False
        while step > 1e-18:
            trial = kernels.project_capped_simplex_k(p + step * g, budget)
            gain = float(np.dot(g, trial - p))
            ft = value(trial)
            if gain > 0.0 and ft >= f + 1e-4 * gain:
                p, f = trial, ft
                accepted = True
                break
            step *= 0.5
        if not accepted:
            break
    return p


def precode_gsvd(ch, reg=1e-10):
    """Beamform along generalized eigen-directions of the channel pair.

    Directions come from the pencil (h_main^H h_main, reg*I + h_eave^H h_eave);
    only directions whose main-channel gain beats the eavesdropper gain are
    kept, and powers over them are chosen by projected gradient ascent of the
    per-direction rate differences starting from equal power.
    """
    a = ch.h_main.conj().T @ ch.h_main
    b = reg * np.eye(ch.m, dtype=np.complex128) + ch.h_eave.conj().T @ ch.h_eave
    _, vecs = geig_hpd(a, b)
    dirs = []
    gains_m = []
    gains_e = []
    for i in range(ch.m):
        v = vecs[:, i]
        v = v / np.linalg.norm(v)
        gm = float(np.linalg.norm(ch.h_main @ v) ** 2)
        ge = float(np.linalg.norm(ch.h_eave @ v) ** 2)
        if gm > ge:
            dirs.append(v)
            gains_m.append(gm)
            gains_e.append(ge)
    if not dirs:
        return TransmitCovariance(np.zeros((ch.m, ch.m), dtype=np.complex128))
    powers = _pga_separable_rates(
        np.array(gains_m), np.array(gains_e), float(ch.m)
    )
    p = np.zeros((ch.m, ch.m), dtype=np.complex128)
    for v, q in zip(dirs, powers):
        p += q * np.outer(v, v.conj())
    return TransmitCovariance(p)


def misome_capacity(ch):
    """Closed-form secrecy capacity for a single-antenna legitimate receiver.

    Equals ln of the top generalized eigenvalue of the full-power rank-one
    beamforming pencil (I + M h_m^H h_m, I + M h_e^H h_e), clamped at zero.
    """
    if ch.n_main != 1:
        raise InvalidConfigError("closed-form capacity requires n_main == 1")
    m = ch.m
    a = np.eye(m, dtype=np.complex128) + m * (ch.h_main.conj().T @ ch.h_main)
    b = np.eye(m, dtype=np.complex128) + m * (ch.h_eave.conj().T @ ch.h_eave)
    mu, _ = geig_hpd(a, b)
    return max(0.0, float(np.log(mu[0])))


def _deterministic_candidates(ch):
    yield TransmitCovariance(np.zeros((ch.m, ch.m), dtype=np.complex128))
    yield precode_isotropic(ch)
    yield precode_water_filling(ch)
    yield precode_zero_forcing(ch)
    yield precode_slnr(ch)
    yield precode_gsvd(ch)


def random_search_oracle(ch, samples, rng_seed):
    """Best secrecy rate over random feasible covariances plus all baselines.

    Random candidates use a Gaussian-QR eigenbasis and eigenvalues uniform on
    the simplex, scaled to a random total power that sits on the full-power
    boundary with probability one half. The raw uniform stream is consumed in
    fixed-size blocks, so for a fixed seed the first n samples of a longer
    run coincide with a run of n samples.
    """
    samples = int(samples)
    if samples < 1:
        raise InvalidConfigError("samples must be >= 1")
    m = ch.m
    budget = float(m)
    best_rate = -np.inf
    best_p = None
    for cand in _deterministic_candidates(ch):
        rate = secrecy_rate(ch, cand)
        if rate > best_rate:
            best_rate = rate
            best_p = cand
    rng = np.random.default_rng(int(rng_seed) % (1 << 64))
    row_len = 2 * m * m + m + 2
    best_row = None
    remaining = samples
    while remaining > 0:
        block = min(_ORACLE_BLOCK, remaining)
        raw = rng.random((block, row_len))
        rate, idx = kernels.oracle_scan_k(ch.h_main, ch.h_eave, raw, budget)
        if rate > best_rate:
            best_rate = rate
            best_row = raw[idx].copy()
        remaining -= block
    if best_row is not None:
        q, lam = kernels.oracle_decode_k(best_row, m, budget)
        best_p = TransmitCovariance((q * lam) @ q.conj().T)
    return float(best_rate), best_p
