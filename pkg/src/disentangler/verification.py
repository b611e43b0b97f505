"""End-to-end property suites bundled for the CLI `verify` command."""

from __future__ import annotations

import numpy as np

from .channel import closed_form_asym, closed_form_sym, closed_form_ta, simulate_channel
from .frontier import footnote7_probe, mixed_state_experiment
from .machine import MachineConfig, config_feasible, realize
from .separability import asym_residual_terms, consistency_sweep
from .states import TwoQubitPureState, bloch_to_density, density_to_bloch

SUITES = ("oracle_equivalence", "isotropy", "cross_validation", "mixed_state", "footnote7")


def _sample_feasible_config(rng) -> MachineConfig:
    while True:
        cfg = MachineConfig(eta=rng.uniform(1e-3, 1.0), lam=rng.uniform(-1.0, 1.0))
        if config_feasible(cfg):
            return cfg


def suite_oracle_equivalence(draws: int, seed: int) -> dict:
    """Closed-form outputs against isometry simulation, all three settings."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(draws):
        cfg_x = _sample_feasible_config(rng)
        cfg_y = _sample_feasible_config(rng)
        st = TwoQubitPureState.from_alpha(rng.uniform(0.0, 1.0))
        rho = st.density()
        mx, my = realize(cfg_x), realize(cfg_y)
        worst = max(worst, float(np.abs(simulate_channel(rho, mx, my) - closed_form_asym(st, cfg_x, cfg_y)).max()))
        worst = max(worst, float(np.abs(simulate_channel(rho, None, my) - closed_form_ta(st, cfg_y)).max()))
        worst = max(worst, float(np.abs(simulate_channel(rho, my, my) - closed_form_sym(st, cfg_y)).max()))
    return {"name": "oracle_equivalence", "draws": draws, "max_diff": worst, "passed": worst <= 1e-10}


def suite_isotropy(draws_per_cell: int, seed: int) -> dict:
    """Single-qubit channel shrinks Bloch vectors by exactly eta.

    Real-amplitude inputs (Bloch vectors in the x-z plane) shrink by eta for
    every feasible overlap lambda; the full sphere shrinks isotropically when
    lambda = 0.  Non-zero lambda adds a y-to-z cross term, so full-sphere
    draws are restricted to lambda = 0.
    """
    rng = np.random.default_rng(seed)
    etas = np.linspace(0.2, 1.0, 5)
    lams = np.linspace(-1.0, 1.0, 5)
    worst_plane = 0.0
    worst_sphere = 0.0
    skipped = 0
    for eta in etas:
        for lam in lams:
            cfg = MachineConfig(eta=float(eta), lam=float(lam))
            if not config_feasible(cfg):
                skipped += 1
                continue
            r = realize(cfg)
            for _ in range(draws_per_cell):
                theta = rng.uniform(0.0, 2 * np.pi)
                s_in = np.array([np.sin(theta), 0.0, np.cos(theta)])
                s_out = density_to_bloch(r.apply(bloch_to_density(s_in)))
                worst_plane = max(worst_plane, float(np.abs(s_out - eta * s_in).max()))
            if lam == 0.0:
                for _ in range(draws_per_cell):
                    v = rng.normal(size=3)
                    s_in = v / np.linalg.norm(v)
                    s_out = density_to_bloch(r.apply(bloch_to_density(s_in)))
                    worst_sphere = max(worst_sphere, float(np.abs(s_out - eta * s_in).max()))
    return {
        "name": "isotropy",
        "draws_per_cell": draws_per_cell,
        "infeasible_cells_skipped": skipped,
        "max_plane_deviation": worst_plane,
        "max_sphere_deviation_lambda0": worst_sphere,
        "passed": worst_plane <= 1e-10 and worst_sphere <= 1e-10,
    }


def suite_cross_validation(draws: int, seed: int) -> dict:
    rep = consistency_sweep(draws=draws, seed=seed)
    return {
        "name": "cross_validation",
        "draws": rep.draws,
        "evaluated": rep.evaluated,
        "infeasible_skipped": rep.infeasible_skipped,
        "hard_failures": rep.hard_failures,
        "worst_pt_eig_when_satisfied": rep.worst_pt_eig_when_satisfied,
        "passed": rep.hard_failures == 0,
    }


def suite_mixed_state(samples: int, seed: int) -> dict:
    rep = mixed_state_experiment(
        samples, MachineConfig(eta=0.8, lam=0.0), MachineConfig(eta=0.4, lam=0.0), seed=seed
    )
    return {
        "name": "mixed_state",
        "samples": rep.samples,
        "degenerate_skipped": rep.degenerate_skipped,
        "max_shrink_deviation": rep.max_shrink_deviation,
        "max_linearity_deviation": rep.max_linearity_deviation,
        "passed": rep.max_shrink_deviation <= 1e-8 and rep.max_linearity_deviation <= 1e-10,
    }


def suite_footnote7(samples: int, seed: int) -> dict:
    """Sign census of the extra term in the third general separability condition.

    Checks the honestly verifiable facts: the term vanishes identically when
    both overlaps are zero, both signs occur over the signed overlap box, and
    the census is deterministic per seed.  Whether a positive draw exists in
    *every* s-bucket is reported, not asserted — positive residuals only occur
    at small Schmidt products.
    """
    rep = footnote7_probe(samples=samples, seed=seed)
    rep2 = footnote7_probe(samples=samples, seed=seed)
    s = np.linspace(0.0, 0.5, 21)
    zero_at_l0 = float(np.abs(asym_residual_terms(s, 0.7, 0.0, 0.5, 0.0)[2]).max())
    positive_buckets = [b.s for b in rep.buckets if b.positive_found]
    return {
        "name": "footnote7",
        "samples": rep.samples,
        "deterministic": rep == rep2,
        "residual_at_lambda0": zero_at_l0,
        "any_positive": rep.any_positive,
        "any_negative": rep.any_negative,
        "every_bucket_has_positive": rep.every_bucket_has_positive,
        "positive_bucket_s_values": positive_buckets,
        "passed": rep == rep2 and zero_at_l0 == 0.0 and rep.any_positive and rep.any_negative,
    }


_QUICK = {"oracle": 200, "isotropy": 10, "sweep": 10_000, "mixed": 50, "footnote7": 2_000}
_FULL = {"oracle": 1000, "isotropy": 50, "sweep": 100_000, "mixed": 200, "footnote7": 10_000}


def run_verification(suite: str = "quick", seed: int = 0) -> dict:
    """Run every property suite at the requested size; returns a summary dict."""
    sizes = {"quick": _QUICK, "full": _FULL}[suite]
    results = [
        suite_oracle_equivalence(sizes["oracle"], seed),
        suite_isotropy(sizes["isotropy"], seed + 1),
        suite_cross_validation(sizes["sweep"], seed + 2),
        suite_mixed_state(sizes["mixed"], seed + 3),
        suite_footnote7(sizes["footnote7"], seed + 4),
    ]
    return {
        "suite": suite,
        "seed": seed,
        "passed": all(r["passed"] for r in results),
        "results": results,
    }
