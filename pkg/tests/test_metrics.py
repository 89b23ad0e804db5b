import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from psm_ras.metrics import (
    Estimator,
    cutoff_bob,
    cutoff_bob_pairs,
    cutoff_eve,
    cutoff_sr,
    high_snr_objective,
    low_snr_objective,
    mi_bob_mc,
    mi_eve_mc,
    mi_from_noise,
    secrecy_rate_mc,
    spectrum_rate_bob,
    spectrum_rate_eve,
    spectrum_sr_objective,
)
from psm_ras.numeric import inv_sqrt_psd, sample_complex_gaussian
from psm_ras.precoding import EveWhitening, PrecoderSet, compute_precoders, compute_whitening
from psm_ras.system import (
    ChannelPair,
    SystemConfig,
    build_constellation,
    distance_spectrum,
    enumerate_patterns,
    select_rows,
)

from conftest import random_matrix

QPSK_UNIT_GAIN = -np.log2(1 / 16 + 7 / 8 * np.exp(-2) + 1 / 16 * np.exp(-4))


def looped_mi_bob(beta, symbols, Nt, rho1Ps, sigma_sq, noise_b):
    """Direct nested-loop evaluation of Bob's mutual information."""
    M = len(symbols)
    total = 0.0
    for m in range(M):
        for n in range(Nt):
            for nb in noise_b:
                acc = 0.0
                for mp in range(M):
                    for n_p in range(Nt):
                        v = np.zeros(Nt, dtype=complex)
                        v[n] += symbols[m]
                        v[n_p] -= symbols[mp]
                        delta = np.sqrt(rho1Ps) * beta * v
                        acc += np.exp((np.sum(np.abs(nb) ** 2) - np.sum(np.abs(delta + nb) ** 2)) / sigma_sq)
                total += np.log2(acc)
    return np.log2(M * Nt) - total / (M * Nt * len(noise_b))


def fake_precoders(beta, Nt):
    return PrecoderSet(P_k=beta * np.eye(Nt), beta_k=beta, P_AN=np.zeros((Nt, Nt)), mu=0.0)


def fake_whitening(Q):
    Q = np.asarray(Q, dtype=complex)
    ne = Q.shape[0]
    return EveWhitening(W=np.eye(ne), W_inv_sqrt=np.eye(ne), Q=Q)


def random_instance(seed, Na=6, Nb=5, Nt=4, Ne=2, snr=None):
    rng = np.random.default_rng(seed)
    snr = rng.uniform(-10, 20) if snr is None else snr
    cfg = SystemConfig(Na=Na, Nb=Nb, Nt=Nt, Ne=Ne).with_snr_db(snr)
    ch = ChannelPair(H=random_matrix(rng, Nb, Na), G=random_matrix(rng, Ne, Na))
    p = enumerate_patterns(Nb, Nt)[rng.integers(cfg.K)]
    ps = compute_precoders(select_rows(ch.H, p))
    return cfg, ch, p, ps, compute_whitening(ch.G, ps, cfg)


def symmetric_instance(seed, sigma_sq=0.5):
    """Eve receives exactly Bob's selected rows with no AN."""
    rng = np.random.default_rng(seed)
    cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=4, rho1=1.0, sigma_b_sq=sigma_sq, sigma_e_sq=sigma_sq)
    H = random_matrix(rng, 5, 6)
    p = enumerate_patterns(5, 4)[rng.integers(cfg.K)]
    return cfg, ChannelPair(H=H, G=select_rows(H, p)), p


class TestMonteCarlo:
    def test_dual_implementation(self):
        cfg = SystemConfig(Na=2, Nb=2, Nt=2, Ne=1, M=2, rho1=1.0).with_snr_db(0.0)
        c = build_constellation(2)
        ps = fake_precoders(1.0, 2)
        est = mi_bob_mc(ps, c, cfg, 64, np.random.default_rng(77))
        w = sample_complex_gaussian(64, 2, 1.0, np.random.default_rng(77))
        oracle = looped_mi_bob(1.0, c.symbols, 2, cfg.rho1 * cfg.Ps, cfg.sigma_b_sq,
                               np.sqrt(cfg.sigma_b_sq) * w)
        assert est.value == pytest.approx(oracle, abs=1e-12)
        assert est.estimator is Estimator.MC and est.n_samples == 64

    def test_low_snr_limit(self, qpsk):
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2).with_snr_db(-40)
        est = mi_bob_mc(fake_precoders(0.7, 4), qpsk, cfg, 500, np.random.default_rng(0))
        assert est.value < 0.05

    def test_high_snr_limit(self, qpsk):
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2).with_snr_db(40)
        est = mi_bob_mc(fake_precoders(0.7, 4), qpsk, cfg, 500, np.random.default_rng(0))
        assert est.value == pytest.approx(4.0, abs=1e-6)

    def test_eve_blind(self, qpsk, desk_cfg):
        est = mi_eve_mc(fake_whitening(np.zeros((2, 4))), qpsk, desk_cfg, 300, np.random.default_rng(1))
        assert abs(est.value) <= 1e-12

    def test_eve_copy_of_bob(self, qpsk):
        cfg, ch, p = symmetric_instance(3)
        ps = compute_precoders(select_rows(ch.H, p))
        ew = compute_whitening(ch.G, ps, cfg)
        np.testing.assert_allclose(ew.Q, ps.beta_k / np.sqrt(cfg.sigma_b_sq) * np.eye(4), atol=1e-9)
        bob = mi_bob_mc(ps, qpsk, cfg, 2000, np.random.default_rng(10))
        eve = mi_eve_mc(ew, qpsk, cfg, 2000, np.random.default_rng(11))
        assert abs(bob.value - eve.value) <= 4 * np.hypot(bob.std_error, eve.std_error)
        same = mi_eve_mc(ew, qpsk, cfg, 2000, np.random.default_rng(10))
        assert same.value == pytest.approx(bob.value, abs=1e-8)

    def test_eve_explicit_an_slow_path(self, qpsk):
        """Sampling z and n_e then whitening agrees with direct unit-noise sampling."""
        cfg, ch, p, ps, ew = random_instance(21, Ne=3, snr=5.0)
        rng = np.random.default_rng(5)
        n = 4000
        z = sample_complex_gaussian(cfg.Na, n, 1.0, rng)
        n_e = sample_complex_gaussian(cfg.Ne, n, cfg.sigma_e_sq, rng)
        S = inv_sqrt_psd(ew.W)
        ne_white = (S @ (np.sqrt(cfg.rho2 * cfg.Ps) * ch.G @ ps.P_AN @ z + n_e)).T
        cov = ne_white.T @ ne_white.conj() / n
        assert np.max(np.abs(cov - np.eye(cfg.Ne))) < 0.1
        slow = mi_from_noise(S @ ch.G @ ps.P_k, qpsk, cfg, ne_white)
        fast = mi_eve_mc(ew, qpsk, cfg, n, np.random.default_rng(6))
        assert abs(slow.value - fast.value) <= 4 * np.hypot(slow.std_error, fast.std_error)

    def test_determinism(self, qpsk, desk_cfg):
        ps = fake_precoders(0.8, 4)
        a = mi_bob_mc(ps, qpsk, desk_cfg, 100, np.random.default_rng(3))
        b = mi_bob_mc(ps, qpsk, desk_cfg, 100, np.random.default_rng(3))
        assert a == b

    @settings(max_examples=30, deadline=None)
    @given(seed=st.integers(0, 2**31))
    def test_entropy_bound(self, seed):
        cfg, ch, p, ps, ew = random_instance(seed)
        c = build_constellation(4)
        for est in (mi_bob_mc(ps, c, cfg, 200, np.random.default_rng(seed)),
                    mi_eve_mc(ew, c, cfg, 200, np.random.default_rng(seed + 1))):
            assert -3 * est.std_error - 1e-12 <= est.value <= np.log2(cfg.L) + 3 * est.std_error + 1e-12


class TestSecrecyRate:
    def test_symmetric_zero(self, qpsk):
        cfg, ch, p = symmetric_instance(8)
        est = secrecy_rate_mc(ch, p, cfg, qpsk, 1000, np.random.default_rng(2))
        assert 0.0 <= est.value <= 3 * est.std_error

    def test_blind_eve_equals_bob(self, qpsk):
        cfg, ch, p, ps, _ = random_instance(4)
        blind = ChannelPair(H=ch.H, G=np.zeros_like(ch.G))
        sr = secrecy_rate_mc(blind, p, cfg, qpsk, 400, np.random.default_rng(9))
        bob = mi_bob_mc(ps, qpsk, cfg, 400, np.random.default_rng(9))
        assert sr.value == pytest.approx(max(bob.value, 0.0), abs=1e-12)

    @settings(max_examples=20, deadline=None)
    @given(seed=st.integers(0, 2**31))
    def test_clamped(self, seed):
        cfg, ch, p, _, _ = random_instance(seed)
        assert secrecy_rate_mc(ch, p, cfg, build_constellation(4), 100, np.random.default_rng(seed)).value >= 0


class TestCutoff:
    def test_bob_limits(self, qpsk):
        base = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2)
        assert cutoff_bob(1.0, base.with_snr_db(-80), qpsk).value < 1e-6
        assert cutoff_bob(1.0, base.with_snr_db(60), qpsk).value == pytest.approx(4.0, abs=1e-9)

    def test_bob_derived_value(self, qpsk):
        # rho1 Ps beta^2 / (4 sigma^2) = 1
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, rho1=0.5, sigma_b_sq=0.125)
        est = cutoff_bob(1.0, cfg, qpsk)
        assert est.value == pytest.approx(QPSK_UNIT_GAIN, abs=1e-13)
        assert est.estimator is Estimator.CUTOFF and est.n_samples == 0 and est.std_error == 0
        assert cutoff_bob_pairs(1.0, cfg, qpsk).value == pytest.approx(QPSK_UNIT_GAIN, abs=1e-13)

    def test_eve_cases(self, qpsk, desk_cfg):
        assert cutoff_eve(fake_whitening(np.zeros((2, 4))), desk_cfg, qpsk).value == 0.0
        beta = 0.9
        Q = beta / np.sqrt(desk_cfg.sigma_b_sq) * np.eye(4)
        assert cutoff_eve(fake_whitening(Q), desk_cfg, qpsk).value == pytest.approx(
            cutoff_bob(beta, desk_cfg, qpsk).value, abs=1e-12)

    def test_sr_cases(self, qpsk):
        cfg, ch, p = symmetric_instance(5)
        assert abs(cutoff_sr(ch, p, cfg, qpsk).value) <= 1e-9
        cfg, ch, p, ps, _ = random_instance(6)
        blind = ChannelPair(H=ch.H, G=np.zeros_like(ch.G))
        assert cutoff_sr(blind, p, cfg, qpsk).value == pytest.approx(cutoff_bob(ps.beta_k, cfg, qpsk).value, abs=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 2**31))
    def test_bounds_and_ordering(self, seed):
        cfg, ch, p, ps, ew = random_instance(seed)
        c = build_constellation(4)
        spec = distance_spectrum(c, cfg.Nt)
        top = np.log2(cfg.L)
        ib, ie = cutoff_bob(ps.beta_k, cfg, c).value, cutoff_eve(ew, cfg, c).value
        assert 0 <= ib <= top and 0 <= ie <= top
        assert -top <= cutoff_sr(ch, p, cfg, c).value <= top
        assert spectrum_rate_eve(ew, cfg, spec) >= ie - 1e-12
        assert abs(spectrum_rate_bob(ps.beta_k, cfg, spec) - cutoff_bob_pairs(ps.beta_k, cfg, c).value) <= 1e-12

    def test_bob_decreasing_in_noise(self, qpsk):
        base = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2)
        vals = [cutoff_bob(0.8, base.with_snr_db(s), qpsk).value for s in np.linspace(20, -20, 41)]
        assert np.all(np.diff(vals) < 0)


class TestObjectives:
    def test_low_snr(self, desk_cfg):
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, sigma_b_sq=1.0)
        assert low_snr_objective(1.3, fake_whitening(np.zeros((2, 4))), cfg) == pytest.approx(1.69)
        assert low_snr_objective(1.0, fake_whitening([[2.0]]), cfg) == pytest.approx(-3.0)

    def test_low_snr_homogeneity(self):
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, rho1=1.0)
        rng = np.random.default_rng(2)
        ps = compute_precoders(random_matrix(rng, 4, 6))
        G = random_matrix(rng, 2, 6)
        base = ps.beta_k**2 / cfg.sigma_b_sq
        t1 = base - low_snr_objective(ps.beta_k, compute_whitening(G, ps, cfg), cfg)
        t2 = base - low_snr_objective(ps.beta_k, compute_whitening(2 * G, ps, cfg), cfg)
        assert t2 == pytest.approx(4 * t1, rel=1e-12)

    def test_high_snr(self):
        assert high_snr_objective(fake_whitening(np.zeros((2, 2)))) == 0
        assert high_snr_objective(fake_whitening(np.eye(2))) == pytest.approx(2)
        Q = random_matrix(np.random.default_rng(0), 3, 4)
        sv = np.linalg.svd(Q, compute_uv=False)
        assert high_snr_objective(fake_whitening(Q)) == pytest.approx(np.sum(sv**2), rel=1e-12)

    def test_spectrum_objective(self, qpsk, qpsk_spec4):
        cfg = SystemConfig(Na=6, Nb=5, Nt=4, Ne=2, rho1=1.0, sigma_b_sq=0.25)
        # beta^2 / sigma^2 = 4 = ||Q||^2
        Q = np.diag([2.0, 0.5])
        ew = fake_whitening(np.hstack([Q, np.zeros((2, 2))]))
        assert spectrum_sr_objective(1.0, ew, cfg, qpsk_spec4) == pytest.approx(0.0, abs=1e-12)
        blind = fake_whitening(np.zeros((2, 4)))
        val = spectrum_sr_objective(1.0, blind, cfg, qpsk_spec4)
        assert val == pytest.approx(QPSK_UNIT_GAIN, abs=1e-12)
        assert val == pytest.approx(cutoff_bob(1.0, cfg, qpsk).value, abs=1e-12)
        assert val == pytest.approx(
            spectrum_rate_bob(1.0, cfg, qpsk_spec4) - spectrum_rate_eve(blind, cfg, qpsk_spec4), abs=1e-12)
