"""Hot numeric kernels shared by the solvers.

Everything here is written in njit-compatible numpy and compiled when the
accelerated lane is active (see ``wiretap._jit``). With ``WIRETAP_NUMBA=0``
the same source runs as plain numpy, so both lanes share one implementation.

The matrices involved are tiny (antenna counts), so the Cholesky, Gram and
matrix-product primitives are explicit loops: under numba they beat the
LAPACK/BLAS call overhead by an order of magnitude. Eigendecompositions stay
on LAPACK. Kernels expect C-ordered complex128/float64 arrays and do no
validation; the public modules wrap them with the checked API.
"""

import numpy as np

from ._jit import njit


@njit(cache=True)
def _chol_factor(a):
    """Lower Cholesky factor of a Hermitian PD matrix (entries read symmetrized)."""
    n = a.shape[0]
    ell = np.zeros((n, n), dtype=np.complex128)
    for j in range(n):
        s = a[j, j].real
        for k in range(j):
            s -= (ell[j, k] * ell[j, k].conjugate()).real
        if s <= 0.0:
            raise np.linalg.LinAlgError("matrix is not positive definite")
        d = np.sqrt(s)
        ell[j, j] = d
        for i in range(j + 1, n):
            z = 0.5 * (a[i, j] + a[j, i].conjugate())
            for k in range(j):
                z -= ell[i, k] * ell[j, k].conjugate()
            ell[i, j] = z / d
    return ell


@njit(cache=True)
def _chol_solve(ell, b):
    """Solve (ell ell^H) x = b for a matrix right-hand side."""
    n = ell.shape[0]
    m = b.shape[1]
    x = b.copy()
    for col in range(m):
        for i in range(n):
            z = x[i, col]
            for k in range(i):
                z -= ell[i, k] * x[k, col]
            x[i, col] = z / ell[i, i]
        for i in range(n - 1, -1, -1):
            z = x[i, col]
            for k in range(i + 1, n):
                z -= ell[k, i].conjugate() * x[k, col]
            x[i, col] = z / ell[i, i]
    return x


@njit(cache=True)
def _matmul(a, b):
    n, kk = a.shape
    m = b.shape[1]
    out = np.zeros((n, m), dtype=np.complex128)
    for i in range(n):
        for k in range(kk):
            aik = a[i, k]
            for j in range(m):
                out[i, j] += aik * b[k, j]
    return out


@njit(cache=True)
def _gram_eye(h, p):
    """I + h @ p @ h^H."""
    n, m = h.shape
    tmp = np.zeros((n, m), dtype=np.complex128)
    for i in range(n):
        for k in range(m):
            hik = h[i, k]
            for j in range(m):
                tmp[i, j] += hik * p[k, j]
    out = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            z = 0.0 + 0.0j
            for k in range(m):
                z += tmp[i, k] * h[j, k].conjugate()
            out[i, j] = z
        out[i, i] += 1.0
    return out


@njit(cache=True)
def _gram_eye_scaled(a, lam):
    """I + a @ diag(lam) @ a^H."""
    n, m = a.shape
    out = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            z = 0.0 + 0.0j
            for k in range(m):
                z += lam[k] * a[i, k] * a[j, k].conjugate()
            out[i, j] = z
        out[i, i] += 1.0
    return out


@njit(cache=True)
def logdet_hpd_k(a):
    """ln det of a Hermitian positive definite matrix via Cholesky pivots."""
    ell = _chol_factor(a)
    acc = 0.0
    for i in range(ell.shape[0]):
        acc += np.log(ell[i, i].real)
    return 2.0 * acc


@njit(cache=True)
def covariance_from_factors_k(u, lam):
    """Assemble u^H diag(lam) u, symmetrized."""
    m = u.shape[0]
    p = np.zeros((m, m), dtype=np.complex128)
    for k in range(m):
        for i in range(m):
            c = u[k, i].conjugate() * lam[k]
            for j in range(m):
                p[i, j] += c * u[k, j]
    for i in range(m):
        for j in range(i):
            z = 0.5 * (p[i, j] + p[j, i].conjugate())
            p[i, j] = z
            p[j, i] = z.conjugate()
        p[i, i] = complex(p[i, i].real, 0.0)
    return p


@njit(cache=True)
def secrecy_rate_k(hm, he, p):
    """Main-channel log-det minus eavesdropper log-det, in nats."""
    return logdet_hpd_k(_gram_eye(hm, p)) - logdet_hpd_k(_gram_eye(he, p))


@njit(cache=True)
def secrecy_rate_factors_k(hm, he, u, lam):
    """Secrecy rate of the covariance u^H diag(lam) u."""
    return secrecy_rate_k(hm, he, covariance_from_factors_k(u, lam))


@njit(cache=True)
def hadamard_objective_k(am, d, lam):
    """Main log-det minus the diagonal (product) bound on the eavesdropper term.

    ``am`` is the main channel in the current eigenbasis, ``d`` the diagonal
    of the rotated eavesdropper Gram matrix.
    """
    val = logdet_hpd_k(_gram_eye_scaled(am, lam))
    for i in range(lam.shape[0]):
        val -= np.log(1.0 + d[i] * lam[i])
    return val


@njit(cache=True)
def lambda_logdet_grad_k(am, lam):
    """Gradient of lndet(I + am diag(lam) am^H) in lam; entries are >= 0."""
    nm, m = am.shape
    ell = _chol_factor(_gram_eye_scaled(am, lam))
    x = _chol_solve(ell, am)
    g = np.empty(m)
    for i in range(m):
        acc = 0.0
        for n in range(nm):
            acc += (am[n, i].conjugate() * x[n, i]).real
        g[i] = acc
    return g


@njit(cache=True)
def project_capped_simplex_k(x, budget):
    """Euclidean projection onto {lam >= 0, sum(lam) <= budget}."""
    y = np.maximum(x, 0.0)
    if y.sum() <= budget:
        return y
    u = -np.sort(-x)
    css = np.cumsum(u)
    rho = 0
    for j in range(x.shape[0]):
        if u[j] - (css[j] - budget) / (j + 1.0) > 0.0:
            rho = j
    theta = (css[rho] - budget) / (rho + 1.0)
    return np.maximum(x - theta, 0.0)


@njit(cache=True)
def subproblem_value_k(am, lin, lam):
    """Linearized subproblem objective (constants dropped)."""
    return logdet_hpd_k(_gram_eye_scaled(am, lam)) - np.dot(lin, lam)


@njit(cache=True)
def subproblem_pga_k(am, lin, lam_start, budget, tol, max_iters, beta, c, step0):
    """Projected gradient ascent for the linearized eigenvalue subproblem.

    Returns (lam, iterations, gradient-mapping norm, status); status 1 flags a
    non-finite objective. Iterates never decrease the subproblem objective.
    """
    lam = project_capped_simplex_k(lam_start, budget)
    f = subproblem_value_k(am, lin, lam)
    if not np.isfinite(f):
        return lam, 0, np.inf, 1
    gm = np.inf
    it = 0
    while it < max_iters:
        g = lambda_logdet_grad_k(am, lam) - lin
        ref = project_capped_simplex_k(lam + g, budget)
        gm = np.sqrt(np.sum((ref - lam) ** 2))
        if gm <= tol:
            return lam, it, gm, 0
        step = step0
        accepted = False
        while step > 1e-18:
            trial = project_capped_simplex_k(lam + step * g, budget)
            gain = np.dot(g, trial - lam)
            ftrial = subproblem_value_k(am, lin, trial)
            if not np.isfinite(ftrial):
                return lam, it, gm, 1
            if gain > 0.0 and ftrial >= f + c * gain:
                lam = trial
                f = ftrial
                accepted = True
                break
            step *= beta
        it += 1
        if not accepted:
            break
    return lam, it, gm, 0


@njit(cache=True)
def _grad_side(h, u, lam):
    """One log-det term's contribution: diag(lam) u h^H (I + h u^H diag(lam) u h^H)^{-1} h."""
    n, m = h.shape
    uh = np.empty((m, n), dtype=np.complex128)
    for i in range(m):
        for j in range(n):
            z = 0.0 + 0.0j
            for k in range(m):
                z += u[i, k] * h[j, k].conjugate()
            uh[i, j] = z
    kk = np.empty((n, n), dtype=np.complex128)
    for i in range(n):
        for j in range(n):
            z = 0.0 + 0.0j
            for k in range(m):
                z += lam[k] * uh[k, i].conjugate() * uh[k, j]
            kk[i, j] = z
        kk[i, i] += 1.0
    x = _chol_solve(_chol_factor(kk), h)
    out = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            z = 0.0 + 0.0j
            for k in range(n):
                z += uh[i, k] * x[k, j]
            out[i, j] = lam[i] * z
    return out


@njit(cache=True)
def unitary_euclidean_grad_k(hm, he, u, lam):
    """Euclidean gradient of the secrecy rate in u for fixed eigenvalues."""
    return _grad_side(hm, u, lam) - _grad_side(he, u, lam)


@njit(cache=True)
def riemannian_grad_k(grad, u):
    """Skew-Hermitian ascent direction grad u^H - u grad^H."""
    m = u.shape[0]
    out = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            z1 = 0.0 + 0.0j
            z2 = 0.0 + 0.0j
            for k in range(m):
                z1 += grad[i, k] * u[j, k].conjugate()
                z2 += u[i, k] * grad[j, k].conjugate()
            out[i, j] = z1 - z2
    return out


@njit(cache=True)
def expm_skew_k(g):
    """Exact unitary exponential of a skew-Hermitian matrix."""
    h = -1j * g
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    m = v.shape[0]
    ph = np.exp(1j * w)
    out = np.empty((m, m), dtype=np.complex128)
    for i in range(m):
        for j in range(m):
            z = 0.0 + 0.0j
            for k in range(m):
                z += v[i, k] * ph[k] * v[j, k].conjugate()
            out[i, j] = z
    return out


@njit(cache=True)
def qr_positive_k(a):
    """Orthonormalization with the positive-diagonal QR convention.

    Two-pass modified Gram-Schmidt; the triangular factor's diagonal is the
    (nonnegative) column residual norm. Returns (q, min |R_jj|); the caller
    decides what counts as singular.
    """
    n = a.shape[0]
    q = a.copy()
    min_piv = np.inf
    for j in range(n):
        for _ in range(2):
            for k in range(j):
                c = 0.0 + 0.0j
                for i in range(n):
                    c += q[i, k].conjugate() * q[i, j]
                for i in range(n):
                    q[i, j] -= c * q[i, k]
        nrm = 0.0
        for i in range(n):
            nrm += (q[i, j] * q[i, j].conjugate()).real
        nrm = np.sqrt(nrm)
        if nrm < min_piv:
            min_piv = nrm
        if nrm > 0.0:
            inv = 1.0 / nrm
            for i in range(n):
                q[i, j] *= inv
    return q, min_piv


@njit(cache=True)
def unitary_ascent_k(hm, he, u0, lam, max_iters, grad_tol, beta, c, step0, reorth_every):
    """Geodesic Armijo ascent on the unitary group for fixed eigenvalues.

    Returns (u, trace, iterates, accepted-step count, converged, status);
    trace/iterates are preallocated, entries [0..count] are valid.
    """
    m = u0.shape[0]
    u = u0.copy()
    f = secrecy_rate_factors_k(hm, he, u, lam)
    trace = np.empty(max_iters + 1)
    iterates = np.empty((max_iters + 1, m, m), dtype=np.complex128)
    trace[0] = f
    iterates[0] = u
    count = 0
    converged = 0
    status = 0
    if not np.isfinite(f):
        return u, trace, iterates, count, converged, 1
    for _ in range(max_iters):
        grad = unitary_euclidean_grad_k(hm, he, u, lam)
        gdir = riemannian_grad_k(grad, u)
        gnorm2 = np.sum(np.abs(gdir) ** 2)
        if np.sqrt(gnorm2) <= grad_tol:
            converged = 1
            break
        step = step0
        accepted = False
        bad = False
        while step > 1e-18:
            utrial = _matmul(expm_skew_k(step * gdir), u)
            ftrial = secrecy_rate_factors_k(hm, he, utrial, lam)
            if not np.isfinite(ftrial):
                bad = True
                break
            if ftrial >= f + c * step * gnorm2:
                accepted = True
                break
            step *= beta
        if bad:
            status = 1
            break
        if not accepted:
            break
        u = utrial
        f = ftrial
        count += 1
        if reorth_every > 0 and count % reorth_every == 0:
            u, _ = qr_positive_k(u)
            f = secrecy_rate_factors_k(hm, he, u, lam)
        trace[count] = f
        iterates[count] = u
    return u, trace, iterates, count, converged, status


@njit(cache=True)
def oracle_decode_k(row, m, budget):
    """Decode one row of raw uniforms into an (eigenbasis, eigenvalues) candidate.

    Layout per row: 2*m*m uniforms (Box-Muller Gaussians for the basis),
    m uniforms (exponentials for a uniform simplex point), one uniform for
    the total power, one coin deciding full power.
    """
    g = np.empty((m, m), dtype=np.complex128)
    idx = 0
    two_pi = 2.0 * np.pi
    for a in range(m):
        for b in range(m):
            u1 = row[idx]
            u2 = row[idx + 1]
            idx += 2
            if u1 < 1e-300:
                u1 = 1e-300
            rad = np.sqrt(-2.0 * np.log(u1))
            g[a, b] = rad * np.cos(two_pi * u2) + 1j * rad * np.sin(two_pi * u2)
    q, _ = qr_positive_k(g)
    e = np.empty(m)
    tot = 0.0
    for i in range(m):
        ui = row[idx]
        idx += 1
        if ui < 1e-300:
            ui = 1e-300
        e[i] = -np.log(ui)
        tot += e[i]
    total = budget
    if row[idx + 1] >= 0.5:
        total = budget * row[idx]
    lam = e * (total / tot)
    return q, lam


@njit(cache=True)
def oracle_scan_k(hm, he, raw, budget):
    """Best secrecy rate over the candidates decoded from ``raw`` rows."""
    best = -np.inf
    best_idx = -1
    m = hm.shape[1]
    for r in range(raw.shape[0]):
        q, lam = oracle_decode_k(raw[r], m, budget)
        p = np.zeros((m, m), dtype=np.complex128)
        for k in range(m):
            for i in range(m):
                c = q[i, k] * lam[k]
                for j in range(m):
                    p[i, j] += c * q[j, k].conjugate()
        rate = secrecy_rate_k(hm, he, p)
        if rate > best:
            best = rate
            best_idx = r
    return best, best_idx
