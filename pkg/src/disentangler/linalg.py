"""Dense complex matrix kernel for small (dim <= 64) Hermitian problems.

Everything here is a pure function on immutable inputs; matrices are plain
complex ndarrays in row-major order.
"""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError

HERMITICITY_TOL = 1e-10


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product; dimensions multiply."""
    return np.kron(np.asarray(a), np.asarray(b))


def hermitize(m: np.ndarray) -> np.ndarray:
    """Return (M + M†)/2, suppressing floating-point drift off the Hermitian cone."""
    m = np.asarray(m, dtype=complex)
    return (m + m.conj().T) / 2


def check_hermitian(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """Validate Hermiticity within `tol` (max entry deviation) and symmetrize."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatchError(f"expected a square matrix, got shape {m.shape}")
    dev = np.abs(m - m.conj().T).max()
    if dev > tol:
        raise NotHermitianError(f"matrix deviates from Hermitian by {dev:.3e} (tol {tol:.1e})")
    return hermitize(m)


def hermitian_eigenvalues(m: np.ndarray, tol: float = HERMITICITY_TOL) -> np.ndarray:
    """All eigenvalues of a Hermitian matrix, sorted ascending."""
    return np.linalg.eigvalsh(check_hermitian(m, tol))


def partial_trace(m: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out every tensor factor not listed in `keep`.

    `dims` are the factor dimensions (their product must equal the matrix
    dimension); `keep` holds the factor indices to retain, in order.
    """
    m = np.asarray(m, dtype=complex)
    dims = list(dims)
    keep = sorted(set(keep))
    n = int(np.prod(dims))
    if m.shape != (n, n):
        raise DimensionMismatchError(f"dims {dims} do not match matrix shape {m.shape}")
    if any(k < 0 or k >= len(dims) for k in keep):
        raise DimensionMismatchError(f"keep indices {keep} out of range for {len(dims)} factors")
    t = m.reshape(dims + dims)
    # contract traced factors pairwise; descending order keeps axis bookkeeping trivial
    for ax in reversed(range(len(dims))):
        if ax not in keep:
            t = np.trace(t, axis1=ax, axis2=ax + t.ndim // 2)
    d = int(np.prod([dims[i] for i in keep])) if keep else 1
    return t.reshape(d, d)


def partial_transpose(m: np.ndarray, side: str = "second") -> np.ndarray:
    """Transpose one factor of a 4x4 two-qubit matrix (basis |00>,|01>,|10>,|11>)."""
    m = np.asarray(m, dtype=complex)
    if m.shape != (4, 4):
        raise DimensionMismatchError(f"partial transpose requires a 4x4 matrix, got {m.shape}")
    t = m.reshape(2, 2, 2, 2)
    if side == "first":
        t = t.transpose(2, 1, 0, 3)
    elif side == "second":
        t = t.transpose(0, 3, 2, 1)
    else:
        raise DimensionMismatchError(f"side must be 'first' or 'second', got {side!r}")
    return t.reshape(4, 4)


def is_psd(m: np.ndarray, tol: float = 1e-10) -> tuple[bool, float]:
    """PSD test: min eigenvalue >= -tol * max(1, spectral radius).

    Returns (verdict, min eigenvalue).
    """
    w = hermitian_eigenvalues(m)
    scale = max(1.0, float(np.abs(w).max())) if w.size else 1.0
    lo = float(w[0])
    return lo >= -tol * scale, lo
