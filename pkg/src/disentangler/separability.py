"""Separability certification: PPT oracle plus the closed-form condition sets.

The PPT (positive partial transpose) verdict is authoritative — for two
qubits it is exactly separability.  The polynomial condition sets are
sufficiency claims kept as signed values so boundary behaviour is visible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .linalg import hermitian_eigenvalues, partial_transpose
from .machine import MachineConfig, big_lambda
from .states import check_density_matrix

CONDITION_TOL = 1e-12

CASE_TAGS = ("TA", "SYM", "SYM_L0", "SYM_MAXENT", "ASYM", "ASYM_L0")


@dataclass(frozen=True)
class ConditionSet:
    """Signed values of one closed-form separability test, in source order."""

    case: str
    values: tuple

    def satisfied(self, tol: float = CONDITION_TOL) -> bool:
        return all(v >= -tol for v in self.values)

    @property
    def margin(self) -> float:
        return float(min(self.values))


@dataclass(frozen=True)
class SeparabilityVerdict:
    ppt: bool
    min_pt_eigenvalue: float
    conditions: ConditionSet | None = None


def ppt_verdict(rho: np.ndarray, tol: float = 1e-10) -> SeparabilityVerdict:
    """Two-qubit separability: min eigenvalue of the partial transpose >= -tol."""
    rho = check_density_matrix(rho)
    w = hermitian_eigenvalues(partial_transpose(rho, side="second"))
    lo = float(w[0])
    return SeparabilityVerdict(ppt=lo >= -tol, min_pt_eigenvalue=lo)


def _check_s(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    if np.any(s < -1e-15) or np.any(s > 0.5 + 1e-15):
        raise DomainError("alpha*beta must lie in [0, 1/2]")
    return np.clip(s, 0.0, 0.5)


def _check_eta(eta: float) -> float:
    if not 0.0 < eta <= 1.0:
        raise DomainError(f"eta must lie in (0, 1], got {eta}")
    return float(eta)


def _check_big_lambda(eta: float, Lam: float) -> float:
    if Lam * Lam > (1 - eta * eta) / 4 + 1e-12:
        raise DomainError(f"Lambda^2 = {Lam * Lam} exceeds (1 - eta^2)/4 for eta = {eta}")
    return float(Lam)


def _squares_from_product(s):
    """Recover (alpha^2, beta^2) from s = alpha*beta; swap-symmetric usage only."""
    root = np.sqrt(np.clip(1.0 - 4.0 * s * s, 0.0, None))
    return (1.0 + root) / 2.0, (1.0 - root) / 2.0


def ta_values(s, eta_y: float, Lambda_y: float):
    """One-sided machine: the three partial-transpose positivity polynomials."""
    s = np.asarray(s, dtype=float)
    e, L = eta_y, Lambda_y
    s2 = s * s
    v1 = 1 - e * e + 2 * s2 * (1 - e * e - 4 * L * L)
    v2 = s2 * ((1 + e) ** 2 * (1 - 2 * e) - 4 * L * L)
    v3 = s2 * s2 * ((1 - 3 * e) * (1 + e) ** 3 + 8 * L * L * (2 * L * L - 1 + e * e))
    return np.stack([v1, v2, v3])


def sym_values(s, eta: float, Lam: float):
    """Identical machines on both sides: three polynomials in (a1, a2, a3)."""
    s = np.asarray(s, dtype=float)
    e, L = eta, Lam
    al2, be2 = _squares_from_product(s)
    a1 = (1 - e) ** 2 / 4 + al2 * e - 2 * s * L * L
    a2 = (1 - e * e) / 4 + 2 * s * L * L
    a3 = (1 - e) ** 2 / 4 + be2 * e - 2 * s * L * L
    se = s * e
    se2 = se * se
    v1 = a1 * (2 * a2 + a3) + a2 * (a2 + 2 * a3) - se2 * (4 * L * L + e * e)
    v2 = (
        a1 * a2 * (a2 + 2 * a3)
        + a2 * a2 * a3
        - (a1 + a3) * se2 * (2 * L * L + e * e)
        - 4 * a2 * se2 * L * L
        - 4 * s**3 * e**4 * L * L
    )
    v3 = (
        a1 * a2 * a2 * a3
        - 2 * a2 * (a1 + a3) * se2 * L * L
        - a1 * a3 * s * s * e**4
        - 2 * (a1 + a3) * s**3 * e**4 * L * L
    )
    return np.stack([v1, v2, v3])


def sym_l0_values(s, eta: float):
    """The symmetric conditions specialized to Lambda = 0."""
    s = np.asarray(s, dtype=float)
    e2 = eta * eta
    se = s * eta
    v1 = (1 - e2) / 8 * (3 + e2 + 8 * se * se)
    v2 = (1 - e2) ** 2 + 8 * se * se * (1 - 2 * e2 - e2 * e2)
    v3 = ((1 - e2) ** 2 / 16 + se * se) * ((1 - e2) ** 2 / 16 - (s * e2) ** 2)
    return np.stack([v1, v2, v3])


def maxent_values(eta: float, Lam: float):
    """The symmetric conditions at the maximally entangled input (s = 1/2)."""
    e2 = eta * eta
    L2 = Lam * Lam
    v1 = 3.0 / 16.0 * (1 - e2 * e2) - L2 * L2
    v2 = (1 - 3 * e2 * e2 - 2 * e2**3) / 16 - L2 * L2
    v3 = (1 + e2 + 4 * L2) * (1 + e2 - 4 * L2) * (
        1 - 2 * e2 - 3 * e2 * e2 + 8 * L2 * e2 - 16 * L2 * L2
    )
    return np.stack([np.asarray(v1), np.asarray(v2), np.asarray(v3)])


def asym_f_values(s, eta_x: float, eta_y: float):
    """(F1, F2, F3): the symmetric functions of the diagonal blocks b1..b4."""
    s = np.asarray(s, dtype=float)
    ex, ey = eta_x, eta_y
    al2, be2 = _squares_from_product(s)
    q = (1 - ex) * (1 - ey) / 4
    r = (1 - ex) * (1 + ey) / 4
    b1 = q + al2 * (ex + ey) / 2
    b2 = r + al2 * (ex - ey) / 2
    b3 = r + be2 * (ex - ey) / 2
    b4 = q + be2 * (ex + ey) / 2
    k = s * s * ex * ex * ey * ey
    f1 = b1 * b2 + b1 * b3 + b1 * b4 + b2 * b3 + b2 * b4 + b3 * b4 - k
    f2 = b1 * b2 * b3 + b1 * b2 * b4 + b1 * b3 * b4 + b2 * b3 * b4 - k * (b1 + b4)
    f3 = b1 * b2 * b3 * b4 - b1 * b4 * k
    return np.stack([f1, f2, f3])


def asym_residual_terms(s, eta_x: float, Lx: float, eta_y: float, Ly: float):
    """The three Lambda-dependent correction terms added to (F1, F2, F3)."""
    s = np.asarray(s, dtype=float)
    ex2, ey2 = eta_x * eta_x, eta_y * eta_y
    Lx2, Ly2 = Lx * Lx, Ly * Ly
    cross = Lx * Ly * eta_x * eta_y
    p = Lx2 * ey2 + Ly2 * ex2
    d = Lx2 * ey2 - Ly2 * ex2
    r1 = 2 * s * (cross - s * (4 * Lx2 * Ly2 + p))
    r2 = s * s * (4 * s * cross - p)
    s2 = s * s
    s3 = s2 * s
    s4 = s2 * s2
    r3 = (
        s4 / 2 * (
            4 * Lx2 * Ly2 * (ex2 + ey2 + 8 * Lx2 * Ly2 + 2 * ex2 * ey2)
            + 16 * Lx2 * Ly2 * p
        )
        + s4 / 2 * d * (2 * d + ex2 - ey2)
        + s3 * cross / 2 * ((2 - ex2 - ey2 - 16 * Lx2 * Ly2) - 4 * p)
        - s2 / 8 * (
            4 * Lx2 * Ly2 * (1 + ex2 + ey2 - 3 * ex2 * ey2)
            + p * (1 - ex2 * ey2)
            + d * (ex2 - ey2)
        )
        - s * cross * (1 - ex2) * (1 - ey2) / 8
    )
    return np.stack([r1, r2, r3])


def asym_values(s, eta_x: float, Lx: float, eta_y: float, Ly: float):
    return asym_f_values(s, eta_x, eta_y) + asym_residual_terms(s, eta_x, Lx, eta_y, Ly)


# ---------------------------------------------------------------------------
# Public single-point evaluators with domain validation.


def conditions_ta(alpha_beta: float, eta_y: float, Lambda_y: float) -> ConditionSet:
    s = float(_check_s(alpha_beta))
    _check_eta(eta_y)
    _check_big_lambda(eta_y, Lambda_y)
    return ConditionSet("TA", tuple(float(v) for v in ta_values(s, eta_y, Lambda_y)))


def conditions_sym(alpha_beta: float, eta: float, Lam: float) -> ConditionSet:
    s = float(_check_s(alpha_beta))
    _check_eta(eta)
    _check_big_lambda(eta, Lam)
    return ConditionSet("SYM", tuple(float(v) for v in sym_values(s, eta, Lam)))


def conditions_sym_L0(alpha_beta: float, eta: float) -> ConditionSet:
    s = float(_check_s(alpha_beta))
    _check_eta(eta)
    return ConditionSet("SYM_L0", tuple(float(v) for v in sym_l0_values(s, eta)))


def conditions_maxent(eta: float, Lam: float) -> ConditionSet:
    _check_eta(eta)
    _check_big_lambda(eta, Lam)
    return ConditionSet("SYM_MAXENT", tuple(float(v) for v in maxent_values(eta, Lam)))


def conditions_asym(
    alpha_beta: float, cfg_x: MachineConfig, cfg_y: MachineConfig
) -> ConditionSet:
    s = float(_check_s(alpha_beta))
    vals = asym_values(s, cfg_x.eta, cfg_x.big_lambda, cfg_y.eta, cfg_y.big_lambda)
    return ConditionSet("ASYM", tuple(float(v) for v in vals))


def conditions_asym_L0(alpha_beta: float, eta_x: float, eta_y: float) -> ConditionSet:
    s = float(_check_s(alpha_beta))
    _check_eta(eta_x)
    _check_eta(eta_y)
    return ConditionSet("ASYM_L0", tuple(float(v) for v in asym_f_values(s, eta_x, eta_y)))


# ---------------------------------------------------------------------------
# Cross-validation between the condition sets and the PPT oracle.


@dataclass(frozen=True)
class CrossValidation:
    conditions: ConditionSet
    verdict: SeparabilityVerdict
    consistent: bool


def cross_validate(st, cfg_x=None, cfg_y=None, tol: float = 1e-8) -> CrossValidation:
    """Evaluate the matching condition set and the PPT oracle for one draw.

    Consistency means: conditions satisfied implies the partial transpose is
    not negative beyond `tol` (the closed forms claim sufficiency only).
    """
    from .channel import closed_form_asym, closed_form_ta

    if cfg_x is None and cfg_y is None:
        raise DomainError("at least one machine must be attached")
    if cfg_x is None:
        rho = closed_form_ta(st, cfg_y)
        conds = conditions_ta(st.schmidt_product, cfg_y.eta, cfg_y.big_lambda)
    else:
        if cfg_y is None:
            cfg_y = MachineConfig(eta=1.0, lam=0.0)
        rho = closed_form_asym(st, cfg_x, cfg_y)
        conds = conditions_asym(st.schmidt_product, cfg_x, cfg_y)
    verdict = ppt_verdict(rho)
    consistent = not (conds.satisfied() and verdict.min_pt_eigenvalue < -tol)
    return CrossValidation(conditions=conds, verdict=verdict, consistent=consistent)


def _batched_asym_rho(s, ex, Lx, ey, Ly):
    """Stack of general two-machine output matrices, one per parameter row."""
    al2, be2 = _squares_from_product(s)
    q = (1 - ex) * (1 - ey) / 4
    r = (1 - ex) * (1 + ey) / 4
    b1 = q + al2 * (ex + ey) / 2
    b2 = r + al2 * (ex - ey) / 2
    b3 = r + be2 * (ex - ey) / 2
    b4 = q + be2 * (ex + ey) / 2
    c = 2 * s * Lx * Ly
    ux = 1j * s * Lx * ey
    uy = 1j * s * Ly * ex
    corner = s * ex * ey
    n = len(s)
    rho = np.zeros((n, 4, 4), dtype=complex)
    rho[:, 0, 0] = b1 - c
    rho[:, 1, 1] = b2 + c
    rho[:, 2, 2] = b3 + c
    rho[:, 3, 3] = b4 - c
    rho[:, 0, 1], rho[:, 1, 0] = -ux, ux
    rho[:, 0, 2], rho[:, 2, 0] = -uy, uy
    rho[:, 0, 3], rho[:, 3, 0] = corner, corner
    rho[:, 1, 3], rho[:, 3, 1] = uy, -uy
    rho[:, 2, 3], rho[:, 3, 2] = ux, -ux
    return rho


@dataclass(frozen=True)
class SweepReport:
    draws: int
    evaluated: int
    infeasible_skipped: int
    hard_failures: int
    satisfied_count: int
    worst_pt_eig_when_satisfied: float


def consistency_sweep(
    draws: int = 100_000,
    seed: int = 0,
    tol: float = 1e-8,
    condition_tol: float = CONDITION_TOL,
) -> SweepReport:
    """Random-parameter sweep: conditions satisfied must imply PPT within tol.

    Draws (s, eta_x, eta_y, lambda_x, lambda_y) with signed lambdas; machine
    configs whose Gram is infeasible are skipped and counted (no machine
    exists there, so there is no channel output to test).
    """
    rng = np.random.default_rng(seed)
    s = rng.uniform(0.0, 0.5, draws)
    ex = rng.uniform(0.0, 1.0, draws)
    ey = rng.uniform(0.0, 1.0, draws)
    ex[ex == 0] = 1.0
    ey[ey == 0] = 1.0
    lx = rng.uniform(-1.0, 1.0, draws)
    ly = rng.uniform(-1.0, 1.0, draws)

    feasible = _feasible_mask(ex, lx) & _feasible_mask(ey, ly)
    s, ex, ey, lx, ly = (arr[feasible] for arr in (s, ex, ey, lx, ly))
    Lx = lx * np.sqrt((1 - ex * ex) / 4)
    Ly = ly * np.sqrt((1 - ey * ey) / 4)

    vals = asym_values(s, ex, Lx, ey, Ly)
    satisfied = np.all(vals >= -condition_tol, axis=0)

    rho = _batched_asym_rho(s, ex, Lx, ey, Ly)
    pt = rho.reshape(-1, 2, 2, 2, 2).transpose(0, 1, 4, 3, 2).reshape(-1, 4, 4)
    eigs = np.linalg.eigvalsh((pt + pt.conj().transpose(0, 2, 1)) / 2)
    min_eig = eigs[:, 0]

    bad = satisfied & (min_eig < -tol)
    worst = float(min_eig[satisfied].min()) if satisfied.any() else 0.0
    return SweepReport(
        draws=draws,
        evaluated=int(feasible.sum()),
        infeasible_skipped=int(draws - feasible.sum()),
        hard_failures=int(bad.sum()),
        satisfied_count=int(satisfied.sum()),
        worst_pt_eig_when_satisfied=worst,
    )


def _feasible_mask(eta: np.ndarray, lam: np.ndarray) -> np.ndarray:
    """Vectorized machine-Gram feasibility over (eta, lambda) arrays.

    The 4x4 Gram has a closed characteristic structure; rather than rederive
    it, evaluate the eigensolver batch-wise on the assembled Grams.
    """
    n = len(eta)
    g = np.zeros((n, 4, 4), dtype=complex)
    g[:, 0, 0] = g[:, 1, 1] = g[:, 2, 2] = g[:, 3, 3] = 1.0
    g[:, 0, 2] = 1j * lam
    g[:, 2, 0] = -1j * lam
    g[:, 1, 3] = -1j * lam
    g[:, 3, 1] = 1j * lam
    r = 2 * eta / (1 + eta)
    g[:, 0, 3] = r
    g[:, 3, 0] = r
    return np.linalg.eigvalsh(g)[:, 0] >= -1e-10
