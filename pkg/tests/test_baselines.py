import numpy as np
import pytest

from wiretap.baselines import (
    PrecoderKind,
    misome_capacity,
    precode_gsvd,
    precode_isotropic,
    precode_slnr,
    precode_water_filling,
    precode_zero_forcing,
    random_search_oracle,
    water_fill,
)
from wiretap.errors import InvalidConfigError
from wiretap.kernels import logdet_hpd_k
from wiretap.linalg import geig_hpd
from wiretap.model import ChannelPair, sample_channel, secrecy_rate


def eavesdropper_logdet(ch, p):
    arg = np.eye(ch.n_eave, dtype=complex) + ch.h_eave @ p.p @ ch.h_eave.conj().T
    return float(logdet_hpd_k(np.ascontiguousarray(arg)))


def main_logdet(ch, p):
    arg = np.eye(ch.n_main, dtype=complex) + ch.h_main @ p.p @ ch.h_main.conj().T
    return float(logdet_hpd_k(np.ascontiguousarray(arg)))


class TestWaterFill:
    def test_symmetric(self):
        assert np.allclose(water_fill([1.0, 1.0], 2.0), [1.0, 1.0])

    def test_dead_subchannel(self):
        assert np.allclose(water_fill([1.0, 0.0], 2.0), [2.0, 0.0])

    def test_hand_solved_kkt(self):
        # mu solves (mu - 1/4) + (mu - 1) = 1 -> mu = 1.125
        p = water_fill([4.0, 1.0], 1.0)
        assert np.allclose(p, [0.875, 0.125], atol=1e-9)

    def test_kkt_residual(self):
        rng = np.random.default_rng(41)
        for _ in range(20):
            g = rng.uniform(0, 4, 5)
            g[rng.integers(0, 5)] = 0.0
            budget = float(rng.uniform(0.5, 5.0))
            p = water_fill(g, budget)
            assert p.min() >= 0
            assert abs(p.sum() - budget) <= 1e-10 * max(1.0, budget)
            active = p > 1e-12
            if np.any(active):
                levels = p[active] + 1.0 / g[active]
                assert np.ptp(levels) <= 1e-9
                inactive = (~active) & (g > 0)
                if np.any(inactive):
                    assert np.min(1.0 / g[inactive]) >= levels.max() - 1e-9

    def test_all_gains_zero(self):
        assert np.allclose(water_fill([0.0, 0.0], 3.0), 0.0)

    def test_rejects_bad_input(self):
        with pytest.raises(InvalidConfigError):
            water_fill([1.0], 0.0)
        with pytest.raises(InvalidConfigError):
            water_fill([-1.0], 1.0)


class TestWaterFillingPrecoder:
    def test_zero_channel(self):
        ch = ChannelPair(np.zeros((2, 2)), np.zeros((1, 2)), 0.0, 0.0)
        assert np.allclose(precode_water_filling(ch).p, 0.0)

    def test_orthogonal_equal_gains(self):
        ch = ChannelPair(2.0 * np.eye(2, dtype=complex), np.zeros((1, 2)), 1.0, 0.0)
        p = precode_water_filling(ch)
        assert np.allclose(p.p, np.eye(2), atol=1e-10)

    def test_beats_isotropic_on_main_link(self):
        rng = np.random.default_rng(43)
        for _ in range(10):
            ch = sample_channel((2, 2, 1), 10.0, 10.0, int(rng.integers(2**31)))
            wf = precode_water_filling(ch)
            iso = precode_isotropic(ch)
            assert main_logdet(ch, wf) >= main_logdet(ch, iso) - 1e-10


class TestIsotropic:
    def test_identity(self):
        ch = sample_channel((2, 1, 1), 1.0, 1.0, 0)
        p = precode_isotropic(ch)
        assert np.allclose(p.p, np.eye(2))
        assert p.trace == pytest.approx(2.0)

    def test_rate_finite(self):
        ch = sample_channel((3, 2, 2), 100.0, 100.0, 1)
        assert np.isfinite(secrecy_rate(ch, precode_isotropic(ch)))


class TestZeroForcing:
    def test_full_rank_eavesdropper(self):
        ch = sample_channel((2, 2, 3), 10.0, 10.0, 3)
        p = precode_zero_forcing(ch)
        assert np.allclose(p.p, 0.0)
        assert secrecy_rate(ch, p) == pytest.approx(0.0, abs=1e-14)

    def test_no_eavesdropper_reduces_to_water_filling(self):
        ch = ChannelPair(
            sample_channel((3, 2, 1), 10.0, 10.0, 5).h_main, np.zeros((1, 3)), 10.0, 0.0
        )
        zf = precode_zero_forcing(ch)
        wf = precode_water_filling(ch)
        assert secrecy_rate(ch, zf) == pytest.approx(secrecy_rate(ch, wf), abs=1e-9)

    def test_leakage_is_zero(self):
        rng = np.random.default_rng(47)
        for _ in range(10):
            ch = sample_channel((3, 2, 1), 10.0, 10.0, int(rng.integers(2**31)))
            p = precode_zero_forcing(ch)
            assert eavesdropper_logdet(ch, p) <= 1e-10


class TestSlnr:
    def test_matched_filter_without_eavesdropper(self):
        h = np.array([[1.0 + 1j, 2.0 - 1j]])
        ch = ChannelPair(h, np.zeros((1, 2)), 1.0, 0.0)
        p = precode_slnr(ch)
        w = h.conj().T / np.linalg.norm(h)
        assert np.allclose(p.p, 2.0 * w @ w.conj().T, atol=1e-8)

    def test_zero_main_channel_still_feasible(self):
        ch = ChannelPair(np.zeros((1, 2)), np.ones((1, 2), dtype=complex), 0.0, 1.0)
        p = precode_slnr(ch)
        assert p.trace == pytest.approx(2.0, abs=1e-9)

    def test_rayleigh_quotient_matches_pencil(self):
        rng = np.random.default_rng(53)
        for _ in range(10):
            ch = sample_channel((2, 2, 2), 10.0, 10.0, int(rng.integers(2**31)))
            p = precode_slnr(ch)
            a = ch.h_main.conj().T @ ch.h_main
            b = np.eye(2, dtype=complex) + ch.h_eave.conj().T @ ch.h_eave
            mu, _ = geig_hpd(a, b)
            w, v = np.linalg.eigh(p.p)
            top = v[:, -1]
            quotient = (top.conj() @ a @ top).real / (top.conj() @ b @ top).real
            assert quotient == pytest.approx(mu[0], abs=1e-8)


class TestGsvd:
    def test_no_eavesdropper_matches_water_filling(self):
        ch = ChannelPair(
            sample_channel((3, 3, 1), 10.0, 10.0, 7).h_main, np.zeros((1, 3)), 10.0, 0.0
        )
        g = precode_gsvd(ch)
        wf = precode_water_filling(ch)
        # water-filling is optimal for the main link, so agreement is two-sided
        assert abs(main_logdet(ch, g) - main_logdet(ch, wf)) <= 1e-3

    def test_zero_main_channel(self):
        ch = ChannelPair(np.zeros((1, 2)), np.ones((1, 2), dtype=complex), 0.0, 1.0)
        assert np.allclose(precode_gsvd(ch).p, 0.0)

    def test_bounded_by_misome_capacity(self):
        rng = np.random.default_rng(59)
        for _ in range(10):
            ch = sample_channel((2, 1, 2), 10.0, 10.0, int(rng.integers(2**31)))
            rate = secrecy_rate(ch, precode_gsvd(ch))
            assert rate <= misome_capacity(ch) + 1e-6


class TestMisomeCapacity:
    def test_no_eavesdropper(self):
        h = np.array([[0.6 + 0.8j, 1.0]])
        ch = ChannelPair(h, np.zeros((1, 2)), 1.0, 0.0)
        gain = float(np.linalg.norm(h) ** 2)
        assert misome_capacity(ch) == pytest.approx(np.log(1 + 2 * gain), abs=1e-10)

    def test_dominant_eavesdropper_clamps_to_zero(self):
        h = np.array([[1.0 + 0j, 0.0]])
        ch = ChannelPair(h, 2.0 * np.vstack([h, [[0.0, 1.0]]]).astype(complex), 1.0, 4.0)
        assert misome_capacity(ch) == 0.0

    def test_requires_single_main_antenna(self):
        ch = sample_channel((2, 2, 2), 1.0, 1.0, 0)
        with pytest.raises(InvalidConfigError):
            misome_capacity(ch)

    def test_dominates_oracle_and_baselines(self):
        rng = np.random.default_rng(61)
        for _ in range(3):
            ch = sample_channel((2, 1, 2), 10.0, 10.0, int(rng.integers(2**31)))
            cap = misome_capacity(ch)
            rate, _ = random_search_oracle(ch, 10**5, 9)
            assert cap >= rate - 1e-3
            for precoder in (
                precode_gsvd,
                precode_zero_forcing,
                precode_slnr,
                precode_water_filling,
                precode_isotropic,
            ):
                assert cap >= secrecy_rate(ch, precoder(ch)) - 1e-6


class TestRandomSearchOracle:
    def test_deterministic(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 71)
        r1, p1 = random_search_oracle(ch, 2000, 5)
        r2, p2 = random_search_oracle(ch, 2000, 5)
        assert r1 == r2
        assert np.array_equal(p1.p, p2.p)

    def test_exact_on_scalar_no_eavesdropper(self):
        ch = ChannelPair(np.array([[2.0 + 0j]]), np.zeros((1, 1)), 4.0, 0.0)
        rate, _ = random_search_oracle(ch, 1, 0)
        assert rate == pytest.approx(np.log(1 + 1 * 4.0), abs=1e-12)

    def test_prefix_monotone_in_sample_count(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 73)
        rates = [random_search_oracle(ch, n, 11)[0] for n in (500, 2000, 10000, 50000)]
        assert all(b >= a for a, b in zip(rates, rates[1:]))

    def test_sample_size_self_consistency(self):
        ch = sample_channel((2, 2, 2), 10.0, 10.0, 79)
        r5, _ = random_search_oracle(ch, 10**5, 13)
        r6, _ = random_search_oracle(ch, 10**6, 13)
        assert abs(r6 - r5) <= 5e-3

    def test_outputs_feasible(self):
        rng = np.random.default_rng(83)
        for _ in range(5):
            ch = sample_channel((3, 2, 2), 10.0, 10.0, int(rng.integers(2**31)))
            rate, p = random_search_oracle(ch, 1000, int(rng.integers(2**31)))
            assert rate >= 0.0  # zero covariance is always a candidate
            assert p.trace <= 3.0 + 1e-9

    def test_rejects_bad_sample_count(self):
        ch = sample_channel((2, 2, 2), 1.0, 1.0, 0)
        with pytest.raises(InvalidConfigError):
            random_search_oracle(ch, 0, 0)


def test_precoder_kind_tags():
    assert {k.value for k in PrecoderKind} == {
        "potdc",
        "gsvd",
        "zero_forcing",
        "slnr",
        "water_filling",
        "isotropic",
        "random_search_oracle",
    }


def test_all_precoders_feasible_on_random_instances():
    rng = np.random.default_rng(89)
    for _ in range(5):
        ch = sample_channel((3, 2, 2), 10.0, 10.0, int(rng.integers(2**31)))
        for precoder in (
            precode_gsvd,
            precode_zero_forcing,
            precode_slnr,
            precode_water_filling,
            precode_isotropic,
        ):
            p = precoder(ch)  # TransmitCovariance construction enforces PSD/trace
            assert p.trace <= ch.m + 1e-9
