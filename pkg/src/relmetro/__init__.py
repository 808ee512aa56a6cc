"""Quantum Fisher information of a two-qubit Dirac-field probe under weak
measurement, Unruh decoherence and measurement reversal, with local quantum
uncertainty and maximal steered coherence as lower and upper bounds."""
from .channels import (
    ModelParams,
    ModelState,
    acceleration_to_r,
    apply_unruh,
    model_state,
    reversal_op,
    weak_measurement_op,
)
from .correlations import (
    lqu_closed,
    lqu_numeric,
    msc_bruteforce,
    msc_model_closed,
    msc_xstate,
    skew_information,
)
from .errors import RelMetroError
from .linalg_core import EigenDecomposition, eig_hermitian, kron, partial_trace, sqrt_psd
from .qfi import (
    QfiResult,
    StateFamily,
    block_sld,
    model_family,
    optimal_p,
    optimal_p_q0,
    optimal_q,
    optimal_r,
    qfi_block,
    qfi_numeric,
    qfi_phase_closed,
    qfi_weight_closed,
)
from .states import (
    Ellipsoid,
    PauliDecomposition,
    XState,
    coherence,
    initial_state,
    pauli_decomposition,
    steered_state,
    steering_ellipsoid,
)

__version__ = "0.1.0"
