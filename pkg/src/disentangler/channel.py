"""Two-qubit output states of the disentangling channel.

Each output is produced two independent ways: closed-form 4x4 matrices
(one-sided, symmetric and general two-sided machines) and brute-force
simulation through the machine isometries.  The simulation is ground truth;
the closed forms are the algebra under test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateInputError
from .linalg import partial_trace
from .machine import MachineConfig, MachineRealization, realize
from .states import TwoQubitPureState, check_density_matrix

DEGENERATE_TOL = 1e-12


def closed_form_ta(st: TwoQubitPureState, cfg_y: MachineConfig) -> np.ndarray:
    """Output density matrix for a machine acting on qubit y only."""
    a, b = st.alpha, st.beta
    e, L = cfg_y.eta, cfg_y.big_lambda
    ab = a * b
    return np.array(
        [
            [a * a * (1 + e) / 2, 0, -1j * ab * L, ab * e],
            [0, a * a * (1 - e) / 2, 0, 1j * ab * L],
            [1j * ab * L, 0, b * b * (1 - e) / 2, 0],
            [ab * e, -1j * ab * L, 0, b * b * (1 + e) / 2],
        ],
        dtype=complex,
    )


def closed_form_sym(st: TwoQubitPureState, cfg: MachineConfig) -> np.ndarray:
    """Output density matrix when the same machine acts on both qubits."""
    e, L = cfg.eta, cfg.big_lambda
    s = st.schmidt_product
    a1 = (1 - e) ** 2 / 4 + st.alpha**2 * e - 2 * s * L * L
    a2 = (1 - e * e) / 4 + 2 * s * L * L
    a3 = (1 - e) ** 2 / 4 + st.beta**2 * e - 2 * s * L * L
    u = 1j * s * L * e
    return np.array(
        [
            [a1, -u, -u, s * e * e],
            [u, a2, 0, u],
            [u, 0, a2, u],
            [s * e * e, -u, -u, a3],
        ],
        dtype=complex,
    )


@dataclass(frozen=True)
class AsymmetricEntries:
    """Diagonal building blocks of the general two-machine output."""

    b1: float
    b2: float
    b3: float
    b4: float
    c: float


def asymmetric_entries(
    st: TwoQubitPureState, cfg_x: MachineConfig, cfg_y: MachineConfig
) -> AsymmetricEntries:
    ex, ey = cfg_x.eta, cfg_y.eta
    a2, b2 = st.alpha**2, st.beta**2
    q = (1 - ex) * (1 - ey) / 4
    r = (1 - ex) * (1 + ey) / 4
    return AsymmetricEntries(
        b1=q + a2 * (ex + ey) / 2,
        b2=r + a2 * (ex - ey) / 2,
        b3=r + b2 * (ex - ey) / 2,
        b4=q + b2 * (ex + ey) / 2,
        c=2 * st.schmidt_product * cfg_x.big_lambda * cfg_y.big_lambda,
    )


def closed_form_asym(
    st: TwoQubitPureState, cfg_x: MachineConfig, cfg_y: MachineConfig
) -> np.ndarray:
    """Output density matrix for independent machines on qubits x and y."""
    ent = asymmetric_entries(st, cfg_x, cfg_y)
    s = st.schmidt_product
    ex, ey = cfg_x.eta, cfg_y.eta
    Lx, Ly = cfg_x.big_lambda, cfg_y.big_lambda
    ux = 1j * s * Lx * ey
    uy = 1j * s * Ly * ex
    corner = s * ex * ey
    return np.array(
        [
            [ent.b1 - ent.c, -ux, -uy, corner],
            [ux, ent.b2 + ent.c, 0, uy],
            [uy, 0, ent.b3 + ent.c, ux],
            [corner, -uy, -ux, ent.b4 - ent.c],
        ],
        dtype=complex,
    )


_IDENTITY_KRAUS = np.eye(2, dtype=complex).reshape(2, 1, 2)


def _kraus_tensor(machine: MachineRealization | None) -> np.ndarray:
    """Machine isometry as a (qubit_out, machine, qubit_in) tensor."""
    if machine is None:
        return _IDENTITY_KRAUS
    return machine.isometry.reshape(2, 4, 2)


def simulate_channel(
    rho_in: np.ndarray,
    machine_x: MachineRealization | None = None,
    machine_y: MachineRealization | None = None,
) -> np.ndarray:
    """Push a two-qubit state through the attached machines and trace them out."""
    rho_in = check_density_matrix(rho_in)
    vx = _kraus_tensor(machine_x)
    vy = _kraus_tensor(machine_y)
    t = rho_in.reshape(2, 2, 2, 2)
    # out[a,b,a',b'] = Vx[a,m,x] Vy[b,n,y] rho[x,y,x',y'] Vx*[a',m,x'] Vy*[b',n,y']
    out = np.einsum(
        "amx,bny,xyuv,pmu,qnv->abpq", vx, vy, t, vx.conj(), vy.conj(), optimize=True
    )
    return out.reshape(4, 4)


def apply_machines(
    rho_in: np.ndarray, cfg_x: MachineConfig | None, cfg_y: MachineConfig | None
) -> np.ndarray:
    """Convenience wrapper: realize the given configs and simulate."""
    mx = realize(cfg_x) if cfg_x is not None else None
    my = realize(cfg_y) if cfg_y is not None else None
    return simulate_channel(rho_in, mx, my)


@dataclass(frozen=True)
class ShrinkFit:
    """Per-side least-squares shrink factors with fit residuals (max entry)."""

    eta_x: float
    eta_y: float
    residual_x: float
    residual_y: float

    def __iter__(self):
        return iter((self.eta_x, self.eta_y))


def reduced_shrink_factors(rho_in: np.ndarray, rho_out: np.ndarray) -> ShrinkFit:
    """Fit Tr_other(rho_out) - I/2 = eta_eff * (Tr_other(rho_in) - I/2) per side.

    Raises DegenerateInputError naming every side whose input marginal is
    maximally mixed (the fit is then undefined, not zero).
    """
    rho_in = check_density_matrix(rho_in)
    rho_out = check_density_matrix(rho_out)
    half = np.eye(2, dtype=complex) / 2
    etas, residuals, degenerate = {}, {}, []
    for side, keep in (("x", [0]), ("y", [1])):
        r_in = partial_trace(rho_in, [2, 2], keep) - half
        r_out = partial_trace(rho_out, [2, 2], keep) - half
        denom = float(np.sum(np.abs(r_in) ** 2))
        if np.abs(r_in).max() <= DEGENERATE_TOL:
            degenerate.append(side)
            continue
        eta = float(np.vdot(r_in, r_out).real) / denom
        etas[side] = eta
        residuals[side] = float(np.abs(r_out - eta * r_in).max())
    if degenerate:
        raise DegenerateInputError(degenerate)
    return ShrinkFit(
        eta_x=etas["x"], eta_y=etas["y"], residual_x=residuals["x"], residual_y=residuals["y"]
    )
