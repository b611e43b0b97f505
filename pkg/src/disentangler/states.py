"""Two-qubit pure/mixed state construction and sampling."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BlochNormError, NormalizationError, NotDensityMatrixError
from .linalg import check_hermitian, is_psd, partial_trace

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (PAULI_X, PAULI_Y, PAULI_Z)


@dataclass(frozen=True)
class TwoQubitPureState:
    """Schmidt pair (alpha, beta): the state alpha|00> + beta|11| with alpha, beta >= 0."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0 and 0.0 <= self.beta <= 1.0):
            raise NormalizationError("Schmidt coefficients must lie in [0, 1]")
        if abs(self.alpha**2 + self.beta**2 - 1.0) > 1e-12:
            raise NormalizationError(
                f"alpha^2 + beta^2 = {self.alpha**2 + self.beta**2!r}, expected 1"
            )

    @classmethod
    def from_alpha(cls, alpha: float) -> "TwoQubitPureState":
        if not 0.0 <= alpha <= 1.0:
            raise NormalizationError("alpha must lie in [0, 1]")
        return cls(alpha, float(np.sqrt(max(0.0, 1.0 - alpha * alpha))))

    @property
    def schmidt_product(self) -> float:
        """alpha*beta, in [0, 1/2]."""
        return self.alpha * self.beta

    def vector(self) -> np.ndarray:
        v = np.zeros(4)
        v[0], v[3] = self.alpha, self.beta
        return v

    def density(self) -> np.ndarray:
        """Rank-1 projector in the ordered basis |00>,|01>,|10>,|11>."""
        v = self.vector()
        return np.outer(v, v).astype(complex)


def pure_state_density(state: TwoQubitPureState) -> np.ndarray:
    return state.density()


def bloch_to_density(s, tol: float = 1e-12) -> np.ndarray:
    """rho = (I + s.sigma)/2 for a Bloch vector s with |s| <= 1."""
    s = np.asarray(s, dtype=float)
    if s.shape != (3,):
        raise BlochNormError(f"Bloch vector must have 3 components, got shape {s.shape}")
    norm = float(np.linalg.norm(s))
    if norm > 1.0 + tol:
        raise BlochNormError(f"|s| = {norm} exceeds 1")
    return (np.eye(2, dtype=complex) + s[0] * PAULI_X + s[1] * PAULI_Y + s[2] * PAULI_Z) / 2


def density_to_bloch(rho: np.ndarray) -> np.ndarray:
    """Inverse of bloch_to_density; exact round trip up to roundoff."""
    rho = check_hermitian(rho)
    return np.array([float(np.trace(rho @ p).real) for p in PAULIS])


def check_density_matrix(rho: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Validate Hermiticity, unit trace and positivity; return the symmetrized matrix."""
    try:
        rho = check_hermitian(rho)
    except ValueError as exc:
        raise NotDensityMatrixError(str(exc)) from exc
    tr = complex(np.trace(rho))
    if abs(tr - 1.0) > tol:
        raise NotDensityMatrixError(f"trace is {tr}, expected 1")
    ok, lo = is_psd(rho, tol=tol)
    if not ok:
        raise NotDensityMatrixError(f"matrix is not PSD (min eigenvalue {lo:.3e})")
    return rho


@dataclass(frozen=True)
class MixedStateEnsemble:
    """Spectral ensemble: weights (descending) and orthonormal component vectors (columns)."""

    weights: np.ndarray
    components: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.components * self.weights) @ self.components.conj().T


def spectral_decompose(rho: np.ndarray, weight_tol: float = 1e-12) -> MixedStateEnsemble:
    """Eigen-decompose a density matrix, dropping numerically zero weights."""
    rho = check_density_matrix(rho)
    w, v = np.linalg.eigh(rho)
    order = np.argsort(w)[::-1]
    w, v = w[order], v[:, order]
    keep = w > weight_tol
    w = np.clip(w[keep], 0.0, None)
    return MixedStateEnsemble(weights=w / w.sum(), components=v[:, keep])


def sample_pure_state(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Haar-uniform pure-state vector."""
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def sample_mixed_density(rng: np.random.Generator, dim: int = 4) -> np.ndarray:
    """Full-rank random density matrix via the normalized Wishart construction G G†/tr."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def sample_random_state(kind: str, seed: int, dim: int = 4) -> np.ndarray:
    """Deterministic random density matrix ('pure' or 'mixed') for a given seed."""
    rng = np.random.default_rng(seed)
    if kind == "pure":
        v = sample_pure_state(rng, dim)
        return np.outer(v, v.conj())
    if kind == "mixed":
        return sample_mixed_density(rng, dim)
    raise NotDensityMatrixError(f"kind must be 'pure' or 'mixed', got {kind!r}")


def reduced_density(rho4: np.ndarray, side: str) -> np.ndarray:
    """Single-qubit reduced state of a two-qubit density matrix."""
    keep = {"x": [0], "y": [1]}[side]
    return partial_trace(rho4, [2, 2], keep)
