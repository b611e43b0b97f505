"""Worst-case-over-states optimization of the machine reduction factors.

A machine setting is "universal" when the relevant condition set holds for
every Schmidt product s = alpha*beta in [0, 1/2].  Maximal reduction factors
are located by bisection on that predicate.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .channel import reduced_shrink_factors, simulate_channel
from .errors import DegenerateInputError, DomainError
from .machine import MachineConfig, config_feasible, realize
from .separability import asym_residual_terms, asym_values, sym_values, ta_values
from .states import sample_mixed_density, spectral_decompose

MARGIN_TOL = 1e-12
BISECT_TOL = 1e-6


@dataclass(frozen=True)
class UniversalityGrid:
    """Uniform s-grid on [0, 1/2] with golden-section refinement settings."""

    n: int = 2001
    refine_depth: int = 40

    def __post_init__(self):
        if self.n < 2:
            raise DomainError("grid needs at least 2 points")

    @property
    def s_values(self) -> np.ndarray:
        return np.linspace(0.0, 0.5, self.n)


DEFAULT_GRID = UniversalityGrid()

_INVPHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden_min(f, lo: float, hi: float, depth: int) -> tuple[float, float]:
    """Golden-section search for the minimum of a scalar function on [lo, hi]."""
    a, b = lo, hi
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(depth):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def _case_margin_fn(case: str, eta: float, *, lam=0.0, eta_x=None, lambda_x=0.0, lambda_y=0.0):
    """Vectorized s -> min condition value for the given machine setting.

    Returns None when no machine with the requested overlaps exists (the
    Gram of the machine states is not PSD) — that is a different failure
    mode from a machine that exists but fails to disentangle.
    """
    if case == "TA":
        cfg = MachineConfig(eta=eta, lam=lam)
        if not config_feasible(cfg):
            return None
        L = cfg.big_lambda
        return lambda s: ta_values(s, eta, L).min(axis=0)
    if case == "SYM":
        cfg = MachineConfig(eta=eta, lam=lam)
        if not config_feasible(cfg):
            return None
        L = cfg.big_lambda
        return lambda s: sym_values(s, eta, L).min(axis=0)
    if case == "ASYM":
        cfg_x = MachineConfig(eta=eta_x, lam=lambda_x)
        cfg_y = MachineConfig(eta=eta, lam=lambda_y)
        if not (config_feasible(cfg_x) and config_feasible(cfg_y)):
            return None
        Lx, Ly = cfg_x.big_lambda, cfg_y.big_lambda
        return lambda s: asym_values(s, eta_x, Lx, eta, Ly).min(axis=0)
    raise DomainError(f"unknown case {case!r}")


@dataclass(frozen=True)
class UniversalCheck:
    ok: bool
    worst_margin: float
    binding_s: float
    infeasible: bool = False


def universal_ok(
    case: str,
    eta: float,
    *,
    lam: float = 0.0,
    eta_x: float | None = None,
    lambda_x: float = 0.0,
    lambda_y: float = 0.0,
    grid: UniversalityGrid = DEFAULT_GRID,
) -> UniversalCheck:
    """Does the machine setting disentangle every pure input state?

    Evaluates the matching condition set over the s-grid, then refines the
    worst margin with a golden-section search around the grid minimum.
    """
    margin = _case_margin_fn(
        case, eta, lam=lam, eta_x=eta_x, lambda_x=lambda_x, lambda_y=lambda_y
    )
    if margin is None:
        return UniversalCheck(ok=False, worst_margin=-np.inf, binding_s=np.nan, infeasible=True)
    s = grid.s_values
    vals = margin(s)
    i = int(np.argmin(vals))
    lo = s[max(i - 1, 0)]
    hi = s[min(i + 1, len(s) - 1)]
    scalar = lambda x: float(margin(np.array([x]))[0])  # noqa: E731
    s_star, m_star = _golden_min(scalar, lo, hi, grid.refine_depth)
    if vals[i] < m_star:
        s_star, m_star = float(s[i]), float(vals[i])
    return UniversalCheck(ok=m_star >= -MARGIN_TOL, worst_margin=m_star, binding_s=s_star)


def _bisect_eta(predicate, tol: float = BISECT_TOL) -> float:
    """Largest eta in (0, 1] where predicate(eta) holds, to absolute tol."""
    if predicate(1.0):
        return 1.0
    lo, hi = 0.0, 1.0  # predicate vacuously true at eta -> 0+
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if predicate(mid):
            lo = mid
        else:
            hi = mid
    return lo


def eta_max_ta(lam: float = 0.0, grid: UniversalityGrid = DEFAULT_GRID) -> float:
    """Largest universal reduction factor with a machine on one qubit only."""
    return _bisect_eta(lambda e: universal_ok("TA", e, lam=lam, grid=grid).ok)


def eta_max_sym(lambda_sq: float, grid: UniversalityGrid = DEFAULT_GRID) -> float:
    """Largest universal reduction factor for identical machines, given lambda^2."""
    if not 0.0 <= lambda_sq <= 1.0:
        raise DomainError(f"lambda_sq must lie in [0, 1], got {lambda_sq}")
    lam = float(np.sqrt(lambda_sq))
    return _bisect_eta(lambda e: universal_ok("SYM", e, lam=lam, grid=grid).ok)


@dataclass(frozen=True)
class FrontierPoint:
    eta_x: float
    lambda_x: float
    lambda_y: float
    eta_y_max: float
    binding_s: float


def eta_y_frontier(
    eta_x: float,
    lambda_x: float = 0.0,
    lambda_y: float = 0.0,
    grid: UniversalityGrid = DEFAULT_GRID,
) -> FrontierPoint:
    """Largest eta_y that disentangles universally alongside the given x machine."""
    if not 0.0 < eta_x <= 1.0:
        raise DomainError(f"eta_x must lie in (0, 1], got {eta_x}")

    def pred(e):
        return universal_ok(
            "ASYM", e, eta_x=eta_x, lambda_x=lambda_x, lambda_y=lambda_y, grid=grid
        ).ok

    ey = _bisect_eta(pred)
    # Probe just above the frontier: there the violated condition pinpoints
    # the binding Schmidt product; below it every margin is non-negative.
    check = universal_ok(
        "ASYM",
        min(ey + BISECT_TOL, 1.0),
        eta_x=eta_x,
        lambda_x=lambda_x,
        lambda_y=lambda_y,
        grid=grid,
    )
    if check.infeasible:
        check = universal_ok(
            "ASYM", max(ey - BISECT_TOL, BISECT_TOL), eta_x=eta_x,
            lambda_x=lambda_x, lambda_y=lambda_y, grid=grid,
        )
    return FrontierPoint(
        eta_x=eta_x,
        lambda_x=lambda_x,
        lambda_y=lambda_y,
        eta_y_max=ey,
        binding_s=check.binding_s,
    )


@dataclass(frozen=True)
class ScanRow:
    case: str
    abscissa: float
    ordinate: float
    binding_s: float
    metadata: dict = field(default_factory=dict)


DEFAULT_LAMBDA_SQ_GRID = tuple(np.round(np.arange(0.0, 1.0001, 0.05), 10))
DEFAULT_ETA_X_GRID = tuple(np.round(np.arange(0.4, 1.0001, 0.1), 10))
DEFAULT_FIGURE2_PAIRS = ((0.0, 0.0), (0.2, -0.2), (0.5, -0.5), (0.9, 0.1))


def figure1_scan(
    lambda_sq_values=DEFAULT_LAMBDA_SQ_GRID, grid: UniversalityGrid = DEFAULT_GRID
) -> list[ScanRow]:
    """eta_max against lambda^2 for the symmetric two-machine setting."""
    rows = []
    for lsq in lambda_sq_values:
        e = eta_max_sym(float(lsq), grid=grid)
        lam = float(np.sqrt(lsq))
        chk = universal_ok("SYM", min(e + BISECT_TOL, 1.0), lam=lam, grid=grid)
        if chk.infeasible:
            chk = universal_ok("SYM", max(e - BISECT_TOL, BISECT_TOL), lam=lam, grid=grid)
        rows.append(
            ScanRow(
                case="SYM",
                abscissa=float(lsq),
                ordinate=e,
                binding_s=chk.binding_s,
                metadata={"grid_n": grid.n, "tol": BISECT_TOL},
            )
        )
    return rows


def figure2_scan(
    eta_x_values=DEFAULT_ETA_X_GRID,
    pairs=DEFAULT_FIGURE2_PAIRS,
    grid: UniversalityGrid = DEFAULT_GRID,
) -> list[ScanRow]:
    """eta_y_max against eta_x for each (lambda_x, lambda_y) machine pair."""
    if not pairs:
        raise DomainError("at least one (lambda_x, lambda_y) pair is required")
    rows = []
    for lx, ly in pairs:
        for ex in eta_x_values:
            pt = eta_y_frontier(float(ex), float(lx), float(ly), grid=grid)
            rows.append(
                ScanRow(
                    case="ASYM",
                    abscissa=float(ex),
                    ordinate=pt.eta_y_max,
                    binding_s=pt.binding_s,
                    metadata={"lambda_x": float(lx), "lambda_y": float(ly)},
                )
            )
    return rows


@dataclass(frozen=True)
class Footnote7Bucket:
    s: float
    positive_found: bool
    negative_found: bool
    max_residual: float
    min_residual: float


@dataclass(frozen=True)
class Footnote7Report:
    samples: int
    seed: int
    buckets: tuple
    every_bucket_has_positive: bool
    any_positive: bool
    any_negative: bool


def footnote7_probe(
    samples: int = 10_000, seed: int = 0, s_grid=None
) -> Footnote7Report:
    """Sign census of the extra (non-product) term in the third general condition.

    Samples machine parameters uniformly — reduction factors over (0, 1],
    overlaps lambda over the signed box [-1, 1]^2 (the residual is odd in
    lambda_x*lambda_y, so sign coverage matters) — and records, per Schmidt
    product s, whether the residual takes either sign.
    """
    rng = np.random.default_rng(seed)
    if s_grid is None:
        s_grid = np.linspace(0.02, 0.5, 25)
    lx = rng.uniform(-1.0, 1.0, samples)
    ly = rng.uniform(-1.0, 1.0, samples)
    ex = rng.uniform(0.0, 1.0, samples)
    ey = rng.uniform(0.0, 1.0, samples)
    ex[ex == 0] = 1.0
    ey[ey == 0] = 1.0
    Lx = lx * np.sqrt((1 - ex * ex) / 4)
    Ly = ly * np.sqrt((1 - ey * ey) / 4)
    buckets = []
    for s in s_grid:
        r3 = asym_residual_terms(np.full(samples, float(s)), ex, Lx, ey, Ly)[2]
        buckets.append(
            Footnote7Bucket(
                s=float(s),
                positive_found=bool((r3 > 0).any()),
                negative_found=bool((r3 < 0).any()),
                max_residual=float(r3.max()),
                min_residual=float(r3.min()),
            )
        )
    return Footnote7Report(
        samples=samples,
        seed=seed,
        buckets=tuple(buckets),
        every_bucket_has_positive=all(b.positive_found for b in buckets),
        any_positive=any(b.positive_found for b in buckets),
        any_negative=any(b.negative_found for b in buckets),
    )


@dataclass(frozen=True)
class MixedStateReport:
    samples: int
    evaluated: int
    degenerate_skipped: int
    max_shrink_deviation: float
    max_fit_residual: float
    max_linearity_deviation: float


def mixed_state_experiment(
    samples: int, cfg_x: MachineConfig, cfg_y: MachineConfig, seed: int = 0
) -> MixedStateReport:
    """Random mixed inputs keep the machines' reduction factors.

    Also checks that the channel output of a mixture equals the weighted
    channel outputs of its spectral components (linearity).
    """
    rng = np.random.default_rng(seed)
    mx, my = realize(cfg_x), realize(cfg_y)
    max_dev = 0.0
    max_res = 0.0
    max_lin = 0.0
    degenerate = 0
    evaluated = 0
    for _ in range(samples):
        rho = sample_mixed_density(rng)
        out = simulate_channel(rho, mx, my)
        ens = spectral_decompose(rho)
        recombined = np.zeros((4, 4), dtype=complex)
        for w, v in zip(ens.weights, ens.components.T):
            recombined += w * simulate_channel(np.outer(v, v.conj()), mx, my)
        max_lin = max(max_lin, float(np.abs(out - recombined).max()))
        try:
            fit = reduced_shrink_factors(rho, out)
        except DegenerateInputError:
            degenerate += 1
            continue
        evaluated += 1
        max_dev = max(max_dev, abs(fit.eta_x - cfg_x.eta), abs(fit.eta_y - cfg_y.eta))
        max_res = max(max_res, fit.residual_x, fit.residual_y)
    return MixedStateReport(
        samples=samples,
        evaluated=evaluated,
        degenerate_skipped=degenerate,
        max_shrink_deviation=max_dev,
        max_fit_residual=max_res,
        max_linearity_deviation=max_lin,
    )
