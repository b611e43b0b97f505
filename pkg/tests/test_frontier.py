import numpy as np
import pytest

from disentangler.errors import DomainError
from disentangler.frontier import (
    BISECT_TOL,
    DEFAULT_FIGURE2_PAIRS,
    UniversalityGrid,
    eta_max_sym,
    eta_max_ta,
    eta_y_frontier,
    figure1_scan,
    figure2_scan,
    footnote7_probe,
    mixed_state_experiment,
    universal_ok,
)
from disentangler.machine import MachineConfig

FAST_GRID = UniversalityGrid(n=501, refine_depth=30)


class TestUniversalOk:
    def test_ta_below_third(self):
        assert universal_ok("TA", 0.3, grid=FAST_GRID).ok

    def test_ta_above_third(self):
        chk = universal_ok("TA", 0.34, grid=FAST_GRID)
        assert not chk.ok
        assert abs(chk.binding_s - 0.5) < 1e-6

    def test_sym_above_rt3(self):
        assert not universal_ok("SYM", 0.58, grid=FAST_GRID).ok

    def test_infeasible_flagged(self):
        chk = universal_ok("SYM", 0.99, lam=1.0, grid=FAST_GRID)
        assert not chk.ok
        assert chk.infeasible

    def test_unknown_case(self):
        with pytest.raises(DomainError):
            universal_ok("XYZ", 0.5)

    def test_grid_validation(self):
        with pytest.raises(DomainError):
            UniversalityGrid(n=1)


class TestEtaMax:
    def test_ta_value(self):
        e = eta_max_ta()
        assert abs(e - 1 / 3) <= 1e-4

    def test_ta_bisection_contract(self):
        e = eta_max_ta()
        assert universal_ok("TA", e - 1e-5).ok
        assert not universal_ok("TA", e + 1e-4).ok

    def test_sym_value(self):
        e = eta_max_sym(0.0)
        assert abs(e - 1 / np.sqrt(3)) <= 1e-4

    def test_sym_bisection_contract(self):
        e = eta_max_sym(0.0)
        assert universal_ok("SYM", e - 10 * BISECT_TOL).ok
        assert not universal_ok("SYM", e + 10 * BISECT_TOL).ok

    def test_sym_domain(self):
        with pytest.raises(DomainError):
            eta_max_sym(1.5)


class TestFrontier:
    def test_corner_matches_ta(self):
        pt = eta_y_frontier(1.0, grid=FAST_GRID)
        assert abs(pt.eta_y_max - eta_max_ta(grid=FAST_GRID)) <= 2e-4

    def test_hyperbola(self):
        for ex in np.arange(0.4, 1.01, 0.1):
            pt = eta_y_frontier(float(ex), grid=FAST_GRID)
            assert abs(pt.eta_x * pt.eta_y_max - 1 / 3) <= 1e-3

    def test_symmetric_fixed_point(self):
        # on the lambda = 0 frontier, eta_x = eta_y happens at the symmetric optimum
        target = eta_max_sym(0.0, grid=FAST_GRID)
        pt = eta_y_frontier(target, grid=FAST_GRID)
        assert abs(pt.eta_y_max - target) <= 2e-4

    def test_nonzero_lambda_dominated(self):
        base = eta_y_frontier(0.7, grid=FAST_GRID).eta_y_max
        off = eta_y_frontier(0.7, 0.2, -0.2, grid=FAST_GRID).eta_y_max
        assert off <= base + 1e-6

    def test_domain(self):
        with pytest.raises(DomainError):
            eta_y_frontier(0.0)


class TestScans:
    def test_figure1_rows(self):
        rows = figure1_scan([0.0, 0.25, 1.0], grid=FAST_GRID)
        ords = [r.ordinate for r in rows]
        assert abs(ords[0] - 1 / np.sqrt(3)) <= 1e-4
        assert ords[0] >= ords[1] >= ords[2] - 1e-6
        assert all(0 <= o <= 1 for o in ords)

    def test_figure2_shape_and_pairs(self):
        rows = figure2_scan(eta_x_values=[0.5], pairs=[(0.0, 0.0)], grid=FAST_GRID)
        assert len(rows) == 1
        assert abs(rows[0].ordinate - 2 / 3) <= 1e-3
        assert DEFAULT_FIGURE2_PAIRS[0] == (0.0, 0.0)

    def test_figure2_requires_pairs(self):
        with pytest.raises(DomainError):
            figure2_scan(pairs=())


class TestFootnote7:
    def test_determinism(self):
        assert footnote7_probe(500, 7) == footnote7_probe(500, 7)

    def test_zero_overlap_residual_vanishes(self):
        from disentangler.separability import asym_residual_terms

        s = np.linspace(0, 0.5, 101)
        r = asym_residual_terms(s, 0.8, 0.0, 0.6, 0.0)
        assert np.abs(r).max() == 0.0

    def test_both_signs_occur(self):
        rep = footnote7_probe(5000, 0)
        assert rep.any_positive and rep.any_negative

    def test_positive_residuals_only_at_small_schmidt_product(self):
        # positives require signed overlaps and exist only for s below ~0.22;
        # beyond that every draw is non-positive, however many are taken
        rep = footnote7_probe(20_000, 1)
        small = [b for b in rep.buckets if b.s <= 0.15]
        large = [b for b in rep.buckets if b.s >= 0.3]
        assert all(b.positive_found for b in small)
        assert all(not b.positive_found for b in large)
        assert not rep.every_bucket_has_positive

    def test_no_positives_with_nonnegative_overlaps(self):
        # restricting both overlaps to [0, 1] kills every positive residual
        from disentangler.separability import asym_residual_terms

        rng = np.random.default_rng(2)
        n = 20_000
        lx, ly = rng.uniform(0, 1, n), rng.uniform(0, 1, n)
        ex, ey = rng.uniform(1e-6, 1, n), rng.uniform(1e-6, 1, n)
        Lx = lx * np.sqrt((1 - ex * ex) / 4)
        Ly = ly * np.sqrt((1 - ey * ey) / 4)
        for s in np.linspace(0.02, 0.5, 13):
            r3 = asym_residual_terms(np.full(n, float(s)), ex, Lx, ey, Ly)[2]
            assert r3.max() <= 1e-15


class TestMixedStateExperiment:
    def test_shrink_preserved(self):
        rep = mixed_state_experiment(
            60, MachineConfig(eta=0.8), MachineConfig(eta=0.4), seed=0
        )
        assert rep.max_shrink_deviation <= 1e-8
        assert rep.max_fit_residual <= 1e-10
        assert rep.max_linearity_deviation <= 1e-10
        assert rep.evaluated + rep.degenerate_skipped == rep.samples
