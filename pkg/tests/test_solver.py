import json

import numpy as np
import pytest

from wiretap.baselines import misome_capacity, random_search_oracle
from wiretap.errors import InvalidConfigError, InvalidMatrixError
from wiretap.linalg import hermitian_eig, qr_orthonormalize
from wiretap.model import ChannelPair, TransmitCovariance, sample_channel, secrecy_rate
from wiretap.solver import (
    AlternatingSettings,
    TerminationReason,
    assemble_covariance,
    solve,
)


class TestAssembleCovariance:
    def test_identity_basis(self):
        p = assemble_covariance(np.eye(2), np.array([2.0, 0.0]))
        assert np.allclose(p.p, np.diag([2.0, 0.0]))

    def test_zero_eigenvalues(self):
        p = assemble_covariance(np.eye(3), np.zeros(3))
        assert np.allclose(p.p, 0.0)

    def test_round_trip_eigenvalues(self):
        rng = np.random.default_rng(31)
        g = rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
        u = qr_orthonormalize(g)
        lam = np.array([1.4, 1.0, 0.6])
        p = assemble_covariance(u, lam)
        w, _ = hermitian_eig(p.p)
        assert np.allclose(w, lam, atol=1e-9)

    def test_rejects_infeasible_eigenvalues(self):
        with pytest.raises(InvalidConfigError):
            assemble_covariance(np.eye(2), np.array([3.0, 0.0]))
        with pytest.raises(InvalidConfigError):
            assemble_covariance(np.eye(2), np.array([-0.5, 0.5]))

    def test_rejects_non_unitary(self):
        with pytest.raises(InvalidMatrixError):
            assemble_covariance(2 * np.eye(2), np.ones(2))


class TestSolveTrivial:
    def test_no_eavesdropper_scalar(self):
        ch = ChannelPair(np.array([[1.0 + 0j]]), np.zeros((1, 1)), 1.0, 0.0)
        report = solve(ch, AlternatingSettings(rng_seed=1))
        assert np.allclose(report.p_opt.p, [[1.0]], atol=1e-6)
        assert report.secrecy_rate == pytest.approx(np.log(2.0), abs=1e-8)

    def test_no_main_channel(self):
        ch = ChannelPair(np.zeros((1, 2)), np.ones((1, 2), dtype=complex), 0.0, 1.0)
        report = solve(ch, AlternatingSettings(rng_seed=2))
        assert report.secrecy_rate == 0.0
        assert report.p_opt.trace <= 2.0 + 1e-9


class TestSolveQuality:
    def test_matches_random_search_oracle(self):
        ch = sample_channel((2, 2, 1), 10.0, 10.0, 404)
        report = solve(ch, AlternatingSettings(rng_seed=4))
        rate, _ = random_search_oracle(ch, 10**5, 5)
        assert report.secrecy_rate >= max(0.0, rate) - 1e-2

    def test_never_exceeds_misome_capacity(self):
        for seed in range(8):
            ch = sample_channel((2, 1, 2), 10.0, 10.0, 500 + seed)
            report = solve(ch, AlternatingSettings(rng_seed=seed))
            assert report.secrecy_rate <= misome_capacity(ch) + 1e-6


class TestSolveContracts:
    def test_trace_monotone_and_feasible(self):
        rng = np.random.default_rng(37)
        for _ in range(10):
            dims = tuple(int(rng.integers(1, 4)) for _ in range(3))
            ch = sample_channel(dims, 10.0, 10.0, int(rng.integers(2**31)))
            report = solve(ch, AlternatingSettings(rng_seed=int(rng.integers(2**31)), n_starts=1))
            assert np.all(np.diff(report.alternation_trace) >= -1e-8)
            w = np.linalg.eigvalsh(report.p_opt.p)
            assert w.min() >= -1e-10
            assert report.p_opt.trace <= ch.m + 1e-9

    def test_idempotent_at_convergence(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 777)
        settings = AlternatingSettings(rng_seed=7)
        first = solve(ch, settings)
        rerun = solve(
            ch,
            AlternatingSettings(rng_seed=7, n_starts=1, init_covariance=first.p_opt),
        )
        assert rerun.secrecy_rate <= first.secrecy_rate + settings.zeta2 + 1e-8

    def test_objective_consistent_with_report(self):
        ch = sample_channel((3, 2, 2), 10.0, 10.0, 888)
        report = solve(ch, AlternatingSettings(rng_seed=8))
        assert report.secrecy_rate == pytest.approx(
            max(0.0, secrecy_rate(ch, report.p_opt)), abs=1e-9
        )

    def test_termination_reason(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 999)
        report = solve(ch, AlternatingSettings(rng_seed=9))
        assert report.termination_reason in (
            TerminationReason.THRESHOLD,
            TerminationReason.MAX_ITERS,
        )
        capped = solve(ch, AlternatingSettings(rng_seed=9, max_alternations=1, zeta2=1e-15))
        assert capped.termination_reason is TerminationReason.MAX_ITERS
        assert not capped.converged

    def test_deterministic_given_seed(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 123)
        a = solve(ch, AlternatingSettings(rng_seed=3))
        b = solve(ch, AlternatingSettings(rng_seed=3))
        assert a.secrecy_rate == b.secrecy_rate
        assert np.array_equal(a.p_opt.p, b.p_opt.p)

    def test_reset_lambda_mode(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 321)
        report = solve(ch, AlternatingSettings(rng_seed=3, warm_start_lambda=False))
        assert np.all(np.diff(report.alternation_trace) >= -1e-8)
        assert report.secrecy_rate >= 0.0

    def test_init_covariance_dimension_check(self):
        ch = sample_channel((2, 2, 2), 1.0, 1.0, 1)
        bad = TransmitCovariance(np.eye(3, dtype=complex))
        with pytest.raises(InvalidConfigError):
            solve(ch, AlternatingSettings(init_covariance=bad, n_starts=1))

    def test_report_serialization(self):
        ch = sample_channel((2, 2, 2), 5.0, 5.0, 55)
        report = solve(ch, AlternatingSettings(rng_seed=5, n_starts=1))
        doc = json.loads(report.to_json())
        assert doc["units"] == "nats"
        assert doc["termination_reason"] in ("threshold", "max_iters", "numerical")
        assert len(doc["p_opt"]) == 2 and len(doc["p_opt"][0][0]) == 2
        assert doc["secrecy_rate"] == pytest.approx(report.secrecy_rate)

    def test_settings_validation(self):
        with pytest.raises(InvalidConfigError):
            AlternatingSettings(zeta2=-1.0)
        with pytest.raises(InvalidConfigError):
            AlternatingSettings(n_starts=0)
