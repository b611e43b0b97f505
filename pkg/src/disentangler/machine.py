"""Local disentangling machine: (eta, lambda) parameterization, Gram feasibility,
and realization as an explicit qubit -> qubit (x) machine isometry.

Machine-state order throughout: (|M0>, |M1>, |M0~>, |M1~>).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InfeasibleMachineError
from .linalg import hermitian_eigenvalues, partial_trace

GRAM_PIVOT_TOL = 1e-10


@dataclass(frozen=True)
class MachineConfig:
    """One local machine: reduction factor eta in (0, 1] and overlap lambda in [-1, 1]."""

    eta: float
    lam: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.eta <= 1.0:
            raise DomainError(f"eta must lie in (0, 1], got {self.eta}")
        if not -1.0 <= self.lam <= 1.0:
            raise DomainError(f"lambda must lie in [-1, 1], got {self.lam}")

    @property
    def m0(self) -> float:
        return float(np.sqrt((1 + self.eta) / 2))

    @property
    def m1(self) -> float:
        return float(np.sqrt((1 - self.eta) / 2))

    @property
    def m0_tilde(self) -> float:
        return float(np.sqrt((1 - self.eta) / 2))

    @property
    def m1_tilde(self) -> float:
        return float(np.sqrt((1 + self.eta) / 2))

    @property
    def big_lambda(self) -> float:
        """Lambda = lambda * sqrt((1 - eta^2)/4); the off-diagonal overlap weight."""
        return self.lam * float(np.sqrt((1 - self.eta**2) / 4))


def big_lambda(eta: float, lam: float) -> float:
    return lam * float(np.sqrt((1.0 - eta * eta) / 4.0))


def build_gram(cfg: MachineConfig) -> np.ndarray:
    """Gram matrix of the four machine states.

    The only nonzero off-diagonal overlaps are <M0|M0~> = i*lambda,
    <M1|M1~> = -i*lambda (forced by the orthogonality sum with real
    m-coefficients) and <M1~|M0> = 2*eta/(1+eta) (the reduction-factor
    equation solved for the overlap).
    """
    lam = cfg.lam
    r = 2 * cfg.eta / (1 + cfg.eta)
    g = np.eye(4, dtype=complex)
    g[0, 2] = 1j * lam
    g[2, 0] = -1j * lam
    g[1, 3] = -1j * lam
    g[3, 1] = 1j * lam
    g[0, 3] = r
    g[3, 0] = r
    return g


def gram_feasible(g: np.ndarray, tol: float = 1e-10) -> tuple[bool, float]:
    """A machine with these overlaps exists iff the Gram matrix is PSD."""
    w = hermitian_eigenvalues(g)
    lo = float(w[0])
    return lo >= -tol, lo


def config_feasible(cfg: MachineConfig, tol: float = 1e-10) -> bool:
    return gram_feasible(build_gram(cfg), tol)[0]


def pivoted_cholesky(g: np.ndarray, tol: float = GRAM_PIVOT_TOL) -> np.ndarray:
    """Rank-revealing Cholesky of a PSD matrix: returns W with W† W = g.

    Columns of W are vectors realizing the Gram; rank-deficient directions
    are padded with zeros so boundary cases stay well-defined.
    """
    g = np.asarray(g, dtype=complex)
    n = g.shape[0]
    a = g.copy()
    perm = list(range(n))
    L = np.zeros((n, n), dtype=complex)
    for k in range(n):
        diag = np.real(np.diag(a)).copy()
        j = k + int(np.argmax(diag[k:]))
        if diag[j] <= tol:
            break
        # swap rows/cols k <-> j of the working matrix and the factor
        a[[k, j], :] = a[[j, k], :]
        a[:, [k, j]] = a[:, [j, k]]
        L[[k, j], :] = L[[j, k], :]
        perm[k], perm[j] = perm[j], perm[k]
        piv = np.sqrt(np.real(a[k, k]))
        L[k, k] = piv
        L[k + 1:, k] = a[k + 1:, k] / piv
        a[k + 1:, k + 1:] -= np.outer(L[k + 1:, k], L[k + 1:, k].conj())
        a[k + 1:, k] = 0
        a[k, k + 1:] = 0
    w = np.zeros((n, n), dtype=complex)
    for row, orig in enumerate(perm):
        w[:, orig] = L[row, :].conj()
    return w


@dataclass(frozen=True)
class MachineRealization:
    """Explicit machine vectors (columns, Gram-compatible) and the induced isometry.

    The isometry maps the qubit (dim 2) into qubit (x) machine (dim 8); its
    two columns are the images of |0> and |1>.
    """

    cfg: MachineConfig
    vectors: np.ndarray
    isometry: np.ndarray = field(repr=False)

    def apply(self, rho2: np.ndarray) -> np.ndarray:
        """Single-qubit channel: embed via the isometry, trace out the machine."""
        v = self.isometry
        big = v @ np.asarray(rho2, dtype=complex) @ v.conj().T
        return partial_trace(big, [2, 4], keep=[0])


def realize(cfg: MachineConfig, tol: float = 1e-10) -> MachineRealization:
    """Build machine vectors from the Gram factorization and assemble the isometry."""
    g = build_gram(cfg)
    ok, lo = gram_feasible(g, tol)
    if not ok:
        raise InfeasibleMachineError(
            f"no machine states realize eta={cfg.eta}, lambda={cfg.lam} "
            f"(Gram min eigenvalue {lo:.3e})"
        )
    w = pivoted_cholesky(g)
    m0v, m1v, m0tv, m1tv = w.T
    iso = np.zeros((8, 2), dtype=complex)
    iso[:, 0] = np.kron([1, 0], cfg.m0 * m0v) + np.kron([0, 1], cfg.m1 * m1v)
    iso[:, 1] = np.kron([1, 0], cfg.m0_tilde * m0tv) + np.kron([0, 1], cfg.m1_tilde * m1tv)
    return MachineRealization(cfg=cfg, vectors=w, isometry=iso)


def verify_machine_constraints(r: MachineRealization, cfg: MachineConfig) -> dict:
    """Numerical residuals of every defining machine equation.

    Covers the two unitarity sums, the column-orthogonality sum, the three
    vanishing overlaps, the two vanishing real parts, the reduction-factor
    equation and the four coefficient magnitudes, plus the Lambda match.
    """
    m0, m1, m0t, m1t = cfg.m0, cfg.m1, cfg.m0_tilde, cfg.m1_tilde
    v = r.vectors
    ip = lambda i, j: complex(v[:, i].conj() @ v[:, j])  # noqa: E731
    res = {
        "unitarity_0": abs(m0**2 + m1**2 - 1),
        "unitarity_1": abs(m0t**2 + m1t**2 - 1),
        "column_orthogonality": abs(m0 * m0t * ip(0, 2) + m1 * m1t * ip(1, 3)),
        "overlap_M1_M0": abs(m0 * m1 * ip(1, 0)),
        "overlap_M1t_M0t": abs(m0t * m1t * ip(3, 2)),
        "overlap_M1_M0t": abs(m1 * m0t * ip(1, 2)),
        "re_M0_M0t": abs((m0 * m0t * ip(0, 2)).real),
        "re_M1_M1t": abs((m1 * m1t * ip(1, 3)).real),
        "reduction_factor": abs(cfg.eta - m0 * m1t * ip(3, 0)),
        "magnitude_m0": abs(m0 - np.sqrt((1 + cfg.eta) / 2)),
        "magnitude_m1": abs(m1 - np.sqrt((1 - cfg.eta) / 2)),
        "magnitude_m0_tilde": abs(m0t - np.sqrt((1 - cfg.eta) / 2)),
        "magnitude_m1_tilde": abs(m1t - np.sqrt((1 + cfg.eta) / 2)),
        "lambda_match": abs((m0 * m0t * ip(0, 2)).imag - cfg.big_lambda),
        "isometry": float(np.abs(r.isometry.conj().T @ r.isometry - np.eye(2)).max()),
        "gram_roundtrip": float(np.abs(v.conj().T @ v - build_gram(cfg)).max()),
    }
    res["max_residual"] = max(res.values())
    return res
