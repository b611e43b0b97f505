"""Universal disentangling machines for two-qubit states.

Simulates local machines parameterized by a reduction factor eta and a
machine-state overlap lambda, certifies separability of the outputs via the
positive-partial-transpose criterion, and locates the optimal reduction
factors (1/3 one-sided, 1/sqrt(3) symmetric, the hyperbola eta_x*eta_y = 1/3
in general).
"""

__version__ = "0.1.0"

from .channel import (
    closed_form_asym,
    closed_form_sym,
    closed_form_ta,
    reduced_shrink_factors,
    simulate_channel,
)
from .errors import (
    BlochNormError,
    DegenerateInputError,
    DimensionMismatchError,
    DisentanglerError,
    DomainError,
    InfeasibleMachineError,
    NormalizationError,
    NotDensityMatrixError,
    NotHermitianError,
)
from .frontier import (
    FrontierPoint,
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
from .machine import MachineConfig, MachineRealization, build_gram, gram_feasible, realize
from .separability import (
    ConditionSet,
    SeparabilityVerdict,
    conditions_asym,
    conditions_asym_L0,
    conditions_maxent,
    conditions_sym,
    conditions_sym_L0,
    conditions_ta,
    cross_validate,
    ppt_verdict,
)
from .states import TwoQubitPureState
from .verification import run_verification

__all__ = [
    "__version__",
    "BlochNormError",
    "ConditionSet",
    "DegenerateInputError",
    "DimensionMismatchError",
    "DisentanglerError",
    "DomainError",
    "FrontierPoint",
    "InfeasibleMachineError",
    "MachineConfig",
    "MachineRealization",
    "NormalizationError",
    "NotDensityMatrixError",
    "NotHermitianError",
    "SeparabilityVerdict",
    "TwoQubitPureState",
    "UniversalityGrid",
    "build_gram",
    "closed_form_asym",
    "closed_form_sym",
    "closed_form_ta",
    "conditions_asym",
    "conditions_asym_L0",
    "conditions_maxent",
    "conditions_sym",
    "conditions_sym_L0",
    "conditions_ta",
    "cross_validate",
    "eta_max_sym",
    "eta_max_ta",
    "eta_y_frontier",
    "figure1_scan",
    "figure2_scan",
    "footnote7_probe",
    "gram_feasible",
    "mixed_state_experiment",
    "ppt_verdict",
    "realize",
    "reduced_shrink_factors",
    "run_verification",
    "simulate_channel",
    "universal_ok",
]
