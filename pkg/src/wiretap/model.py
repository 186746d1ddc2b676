"""Wire-tap channel instances and the rate/gradient evaluations the solvers use.

Rates are in nats throughout the library; unit conversion happens only at the
reporting layer. Channel and covariance values are immutable once built.
"""

import json
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import InvalidConfigError, InvalidMatrixError
from .linalg import as_complex_matrix, require_hermitian

PSD_TOL = 1e-9
TRACE_TOL = 1e-9
UNITARY_TOL = 1e-8
EIGENVALUE_TOL = 1e-12


def _frozen(arr):
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class ChannelPair:
    """Problem instance: main and eavesdropper channels with their linear SNRs.

    ``h_main`` is N_m x M, ``h_eave`` is N_e x M; the shared column count M is
    both the transmit antenna count and the total power budget.
    """

    h_main: np.ndarray
    h_eave: np.ndarray
    rho_main: float
    rho_eave: float

    def __post_init__(self):
        hm = as_complex_matrix(self.h_main, "h_main")
        he = as_complex_matrix(self.h_eave, "h_eave")
        if hm.shape[1] != he.shape[1]:
            raise InvalidMatrixError("h_main and h_eave must agree on the transmit dimension")
        for name, rho in (("rho_main", self.rho_main), ("rho_eave", self.rho_eave)):
            if not (np.isfinite(rho) and rho >= 0.0):
                raise InvalidConfigError(f"{name} must be finite and nonnegative")
        object.__setattr__(self, "h_main", _frozen(hm))
        object.__setattr__(self, "h_eave", _frozen(he))
        object.__setattr__(self, "rho_main", float(self.rho_main))
        object.__setattr__(self, "rho_eave", float(self.rho_eave))

    @property
    def m(self):
        return self.h_main.shape[1]

    @property
    def n_main(self):
        return self.h_main.shape[0]

    @property
    def n_eave(self):
        return self.h_eave.shape[0]


@dataclass(frozen=True)
class TransmitCovariance:
    """Hermitian PSD transmit covariance with trace at most the antenna count."""

    p: np.ndarray

    def __post_init__(self):
        arr = require_hermitian(self.p, "covariance")
        m = arr.shape[0]
        w = np.linalg.eigvalsh(arr)
        if w[0] < -PSD_TOL:
            raise InvalidConfigError(f"covariance has eigenvalue {w[0]:.3e} below -{PSD_TOL}")
        if float(np.real(np.trace(arr))) > m + TRACE_TOL:
            raise InvalidConfigError("covariance trace exceeds the power budget")
        object.__setattr__(self, "p", _frozen(arr))

    @property
    def m(self):
        return self.p.shape[0]

    @property
    def trace(self):
        return float(np.real(np.trace(self.p)))


@dataclass(frozen=True)
class EigenFactorization:
    """Factor pair (u, lam) with covariance u^H diag(lam) u."""

    u: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        u = as_complex_matrix(self.u, "u")
        if u.shape[0] != u.shape[1]:
            raise InvalidMatrixError("u must be square")
        m = u.shape[0]
        if float(np.linalg.norm(u.conj().T @ u - np.eye(m))) > UNITARY_TOL:
            raise InvalidMatrixError("u is not unitary within tolerance")
        lam = require_eigenvalues(self.lam, m)
        object.__setattr__(self, "u", _frozen(u))
        object.__setattr__(self, "lam", _frozen(lam))

    def covariance(self):
        return TransmitCovariance(kernels.covariance_from_factors_k(self.u, self.lam))


def require_eigenvalues(lam, m, budget=None):
    """Validate an eigenvalue vector: length m, entries >= 0, sum within budget."""
    arr = np.ascontiguousarray(np.asarray(lam, dtype=np.float64))
    if arr.ndim != 1 or arr.shape[0] != m:
        raise InvalidConfigError(f"expected {m} eigenvalues, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidConfigError("eigenvalues contain non-finite entries")
    if np.min(arr) < -EIGENVALUE_TOL:
        raise InvalidConfigError("eigenvalues must be nonnegative")
    cap = float(m if budget is None else budget)
    if float(arr.sum()) > cap + TRACE_TOL:
        raise InvalidConfigError("eigenvalues exceed the power budget")
    return np.maximum(arr, 0.0)


def require_unitary(u, name="u", tol=UNITARY_TOL):
    """Validate approximate unitarity of a square matrix."""
    arr = as_complex_matrix(u, name)
    if arr.shape[0] != arr.shape[1]:
        raise InvalidMatrixError(f"{name} must be square")
    m = arr.shape[0]
    if float(np.linalg.norm(arr.conj().T @ arr - np.eye(m))) > tol:
        raise InvalidMatrixError(f"{name} is not unitary within {tol}")
    return arr


def sample_channel(dims, rho_main, rho_eave, rng_seed):
    """Draw an i.i.d. circularly-symmetric complex Gaussian channel pair.

    ``dims`` is (m, n_main, n_eave). Each entry of ``h_main`` has variance
    ``rho_main / m`` split evenly between real and imaginary parts (likewise
    for the eavesdropper), and the draw is deterministic given ``rng_seed``.
    """
    m, n_main, n_eave = (int(x) for x in dims)
    if m <= 0 or n_main <= 0 or n_eave <= 0:
        raise InvalidConfigError("channel dimensions must be positive")
    for name, rho in (("rho_main", rho_main), ("rho_eave", rho_eave)):
        if not (np.isfinite(rho) and rho >= 0.0):
            raise InvalidConfigError(f"{name} must be finite and nonnegative")
    rng = np.random.default_rng(int(rng_seed) % (1 << 64))
    sm = np.sqrt(rho_main / (2.0 * m))
    se = np.sqrt(rho_eave / (2.0 * m))
    h_main = sm * (rng.standard_normal((n_main, m)) + 1j * rng.standard_normal((n_main, m)))
    h_eave = se * (rng.standard_normal((n_eave, m)) + 1j * rng.standard_normal((n_eave, m)))
    return ChannelPair(h_main, h_eave, float(rho_main), float(rho_eave))


def _covariance_array(p, m):
    arr = p.p if isinstance(p, TransmitCovariance) else as_complex_matrix(p, "covariance")
    if arr.shape != (m, m):
        raise InvalidMatrixError(f"covariance shape {arr.shape} does not match {m} antennas")
    return arr


def secrecy_rate(ch, p):
    """Achievable secrecy rate in nats for covariance ``p`` (may be negative)."""
    arr = _covariance_array(p, ch.m)
    return float(kernels.secrecy_rate_k(ch.h_main, ch.h_eave, arr))


def secrecy_rate_factors(ch, u, lam):
    """Secrecy rate of the covariance u^H diag(lam) u.

    ``u`` is used as-is (no unitarity check) so line searches and
    finite-difference probes can evaluate off-manifold points.
    """
    uu = np.ascontiguousarray(np.asarray(u, dtype=np.complex128))
    ll = np.ascontiguousarray(np.asarray(lam, dtype=np.float64))
    return float(kernels.secrecy_rate_factors_k(ch.h_main, ch.h_eave, uu, ll))


def rotated_channel(ch, u0):
    """Channel seen from the eigenbasis ``u0``.

    Returns ``(am, d)``: the main channel ``h_main @ u0^H`` and the real
    diagonal of the rotated eavesdropper Gram matrix ``u0 h_eave^H h_eave u0^H``.
    """
    u = require_unitary(u0, "u0")
    if u.shape[0] != ch.m:
        raise InvalidMatrixError("u0 dimension does not match the channel")
    am = np.ascontiguousarray(ch.h_main @ u.conj().T)
    he_u = ch.h_eave @ u.conj().T
    d = np.ascontiguousarray(np.sum(np.abs(he_u) ** 2, axis=0))
    return am, d


def secrecy_rate_reduced(ch, u, lam):
    """Secrecy rate evaluated with the eavesdropper term folded to M x M.

    Uses det(I_Ne + He P He^H) = det(I_M + D(u) diag(lam)) and evaluates the
    right-hand side through the symmetric congruence with sqrt(lam), which
    keeps the argument Hermitian positive definite.
    """
    uu = require_unitary(u)
    ll = require_eigenvalues(lam, ch.m)
    am, _ = rotated_channel(ch, uu)
    km = np.eye(ch.n_main, dtype=np.complex128) + (am * ll) @ am.conj().T
    he_u = ch.h_eave @ uu.conj().T
    dmat = he_u.conj().T @ he_u
    s = np.sqrt(ll)
    ke = np.eye(ch.m, dtype=np.complex128) + (s[:, None] * dmat) * s[None, :]
    return float(kernels.logdet_hpd_k(km) - kernels.logdet_hpd_k(ke))


def hadamard_objective(ch, u0, lam):
    """Lower bound on the secrecy rate of (u0, lam).

    The eavesdropper determinant is bounded by the product of its diagonal
    entries, so the bound is tight whenever the rotated eavesdropper Gram
    matrix is diagonal.
    """
    am, d = rotated_channel(ch, u0)
    ll = require_eigenvalues(lam, ch.m)
    return float(kernels.hadamard_objective_k(am, d, ll))


def grad_unitary(ch, u, lambda0):
    """Euclidean gradient of the secrecy rate in ``u`` for fixed eigenvalues.

    Convention: objective(u + t*delta) ~ objective(u) + 2t Re<grad, delta>
    with the Frobenius inner product.
    """
    uu = require_unitary(u)
    if uu.shape[0] != ch.m:
        raise InvalidMatrixError("u dimension does not match the channel")
    ll = require_eigenvalues(lambda0, ch.m)
    return kernels.unitary_euclidean_grad_k(ch.h_main, ch.h_eave, uu, ll)


def grad_lambda_logdet(ch, u0, lam):
    """Gradient of the main-channel log-det term in the eigenvalues.

    Component i is a_i^H (I + A diag(lam) A^H)^{-1} a_i with A the rotated
    main channel; all components are nonnegative.
    """
    am, _ = rotated_channel(ch, u0)
    ll = require_eigenvalues(lam, ch.m)
    return kernels.lambda_logdet_grad_k(am, ll)


def complex_to_pairs(arr):
    """Nested [re, im] lists for JSON serialization."""
    a = np.asarray(arr, dtype=np.complex128)
    return [[[float(x.real), float(x.imag)] for x in row] for row in a]


def pairs_to_complex(rows):
    """Inverse of :func:`complex_to_pairs`."""
    return np.array([[complex(p[0], p[1]) for p in row] for row in rows], dtype=np.complex128)


def channel_to_dict(ch):
    """JSON-ready dict with the channel wire schema."""
    return {
        "m": ch.m,
        "n_main": ch.n_main,
        "n_eave": ch.n_eave,
        "rho_main": ch.rho_main,
        "rho_eave": ch.rho_eave,
        "h_main": complex_to_pairs(ch.h_main),
        "h_eave": complex_to_pairs(ch.h_eave),
    }


def channel_from_dict(doc):
    """Rebuild a :class:`ChannelPair` from its wire schema."""
    try:
        h_main = pairs_to_complex(doc["h_main"])
        h_eave = pairs_to_complex(doc["h_eave"])
        ch = ChannelPair(h_main, h_eave, float(doc["rho_main"]), float(doc["rho_eave"]))
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise InvalidConfigError(f"malformed channel document: {exc}") from exc
    declared = (int(doc["m"]), int(doc["n_main"]), int(doc["n_eave"]))
    if declared != (ch.m, ch.n_main, ch.n_eave):
        raise InvalidConfigError("channel dimensions disagree with the matrix shapes")
    return ch


def save_channel(ch, path):
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(channel_to_dict(ch), fh, indent=2, sort_keys=True)
        fh.write("\n")


def load_channel(path):
    with open(path, "r", encoding="utf-8") as fh:
        return channel_from_dict(json.load(fh))
