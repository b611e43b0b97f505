import numpy as np
import pytest

from disentangler.errors import DomainError, InfeasibleMachineError
from disentangler.linalg import hermitian_eigenvalues
from disentangler.machine import (
    MachineConfig,
    MachineRealization,
    build_gram,
    config_feasible,
    gram_feasible,
    pivoted_cholesky,
    realize,
    verify_machine_constraints,
)
from disentangler.states import bloch_to_density, density_to_bloch


def sample_feasible(rng):
    while True:
        cfg = MachineConfig(eta=rng.uniform(1e-3, 1.0), lam=rng.uniform(-1.0, 1.0))
        if config_feasible(cfg):
            return cfg


class TestMachineConfig:
    def test_domain(self):
        with pytest.raises(DomainError):
            MachineConfig(eta=0.0)
        with pytest.raises(DomainError):
            MachineConfig(eta=1.2)
        with pytest.raises(DomainError):
            MachineConfig(eta=0.5, lam=1.5)

    def test_coefficient_normalization(self):
        for eta in np.linspace(0.05, 1.0, 9):
            cfg = MachineConfig(eta=float(eta))
            assert abs(cfg.m0**2 + cfg.m1**2 - 1) < 1e-12
            assert abs(cfg.m0_tilde**2 + cfg.m1_tilde**2 - 1) < 1e-12

    def test_big_lambda_bound(self):
        for eta in np.linspace(0.05, 1.0, 9):
            cfg = MachineConfig(eta=float(eta), lam=1.0)
            assert cfg.big_lambda**2 <= (1 - eta * eta) / 4 + 1e-12


class TestBuildGram:
    def test_identity_limit(self):
        g = build_gram(MachineConfig(eta=1.0, lam=0.0))
        expected = np.eye(4, dtype=complex)
        expected[0, 3] = expected[3, 0] = 1.0
        assert np.array_equal(g, expected)

    def test_third_eta_overlap(self):
        g = build_gram(MachineConfig(eta=1 / 3, lam=0.0))
        assert np.isclose(g[0, 3], 0.5)

    def test_hermitian_exactly(self):
        rng = np.random.default_rng(0)
        for _ in range(20):
            g = build_gram(MachineConfig(eta=rng.uniform(0.01, 1), lam=rng.uniform(-1, 1)))
            assert np.array_equal(g, g.conj().T)

    def test_real_symmetric_at_lambda_zero(self):
        g = build_gram(MachineConfig(eta=0.4, lam=0.0))
        assert np.abs(g.imag).max() == 0.0


class TestGramFeasible:
    def test_lambda_zero_spectrum(self):
        for eta in np.linspace(0.05, 1.0, 9):
            g = build_gram(MachineConfig(eta=float(eta), lam=0.0))
            r = 2 * eta / (1 + eta)
            w = hermitian_eigenvalues(g)
            assert np.allclose(np.sort(w), np.sort([1 - r, 1, 1, 1 + r]), atol=1e-12)
            ok, _ = gram_feasible(g)
            assert ok

    def test_eta_one_boundary(self):
        ok, lo = gram_feasible(build_gram(MachineConfig(eta=1.0, lam=0.0)))
        assert ok
        assert abs(lo) < 1e-12

    def test_large_lambda_at_high_eta_infeasible(self):
        ok, lo = gram_feasible(build_gram(MachineConfig(eta=0.99, lam=1.0)))
        assert not ok
        assert lo < -1e-3


class TestPivotedCholesky:
    def test_roundtrip_random_psd(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            g = a @ a.conj().T
            w = pivoted_cholesky(g)
            assert np.abs(w.conj().T @ w - g).max() < 1e-10 * np.abs(g).max()

    def test_rank_deficient(self):
        g = np.ones((3, 3), dtype=complex)  # rank 1
        w = pivoted_cholesky(g)
        assert np.abs(w.conj().T @ w - g).max() < 1e-12


class TestRealize:
    def test_isometry(self):
        r = realize(MachineConfig(eta=1 / 3, lam=0.0))
        assert np.abs(r.isometry.conj().T @ r.isometry - np.eye(2)).max() < 1e-12

    def test_gram_roundtrip_random(self):
        rng = np.random.default_rng(2)
        for _ in range(100):
            cfg = sample_feasible(rng)
            r = realize(cfg)
            got = r.vectors.conj().T @ r.vectors
            assert np.abs(got - build_gram(cfg)).max() < 1e-10

    def test_identity_channel_at_eta_one(self):
        r = realize(MachineConfig(eta=1.0, lam=0.0))
        rng = np.random.default_rng(3)
        for _ in range(20):
            v = rng.normal(size=3)
            s = v / np.linalg.norm(v)
            out = density_to_bloch(r.apply(bloch_to_density(s)))
            assert np.abs(out - s).max() < 1e-10

    def test_infeasible_raises(self):
        with pytest.raises(InfeasibleMachineError):
            realize(MachineConfig(eta=0.99, lam=1.0))


class TestVerifyConstraints:
    def test_valid_realization(self):
        rng = np.random.default_rng(4)
        for _ in range(30):
            cfg = sample_feasible(rng)
            rep = verify_machine_constraints(realize(cfg), cfg)
            assert rep["max_residual"] < 1e-10

    def test_perturbation_detected(self):
        cfg = MachineConfig(eta=0.5, lam=0.2)
        r = realize(cfg)
        vecs = r.vectors.copy()
        vecs[0, 0] += 1e-3
        bad = MachineRealization(cfg=cfg, vectors=vecs, isometry=r.isometry)
        rep = verify_machine_constraints(bad, cfg)
        assert rep["max_residual"] > 1e-4

    def test_eta_one_reduction_factor(self):
        cfg = MachineConfig(eta=1.0, lam=0.0)
        rep = verify_machine_constraints(realize(cfg), cfg)
        assert rep["reduction_factor"] < 1e-12

    def test_lambda_match(self):
        rng = np.random.default_rng(8)
        for _ in range(20):
            cfg = sample_feasible(rng)
            rep = verify_machine_constraints(realize(cfg), cfg)
            assert rep["lambda_match"] < 1e-12


class TestSingleQubitChannel:
    def test_plane_shrink_for_all_feasible_lambda(self):
        # real-amplitude inputs shrink by exactly eta whatever the overlap
        rng = np.random.default_rng(5)
        for eta in (0.3, 0.6, 0.9):
            for lam in (-0.8, -0.3, 0.0, 0.4, 1.0):
                cfg = MachineConfig(eta=eta, lam=lam)
                if not config_feasible(cfg):
                    continue
                r = realize(cfg)
                for _ in range(20):
                    theta = rng.uniform(0, 2 * np.pi)
                    s = np.array([np.sin(theta), 0.0, np.cos(theta)])
                    out = density_to_bloch(r.apply(bloch_to_density(s)))
                    assert np.abs(out - eta * s).max() < 1e-10

    def test_full_sphere_isotropic_at_lambda_zero(self):
        rng = np.random.default_rng(6)
        for eta in (0.25, 0.5, 0.75, 1.0):
            r = realize(MachineConfig(eta=eta, lam=0.0))
            for _ in range(20):
                v = rng.normal(size=3)
                s = v / np.linalg.norm(v)
                out = density_to_bloch(r.apply(bloch_to_density(s)))
                assert np.abs(out - eta * s).max() < 1e-10

    def test_y_component_cross_term(self):
        # with a nonzero overlap the channel maps s to
        # (eta*sx, eta*sy, eta*sz - 2*Lambda*sy): a y-to-z cross term
        rng = np.random.default_rng(7)
        for _ in range(20):
            cfg = sample_feasible(rng)
            r = realize(cfg)
            v = rng.normal(size=3)
            s = v / np.linalg.norm(v)
            out = density_to_bloch(r.apply(bloch_to_density(s)))
            expected = np.array(
                [cfg.eta * s[0], cfg.eta * s[1], cfg.eta * s[2] - 2 * cfg.big_lambda * s[1]]
            )
            assert np.abs(out - expected).max() < 1e-10
