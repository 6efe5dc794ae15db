"""locklab: a desk-scale laboratory for quantum information locking.

Builds the bit-plus-basis-string key ensemble, searches and bounds the
adversary's accessible information, measures trace-distance key security,
and simulates one-time-pad attacks that exploit the locked basis string.
"""

from .pauli import (
    DENSE_QUBIT_CAP,
    BlochCoefficients,
    DimensionCapError,
    InvariantViolation,
    PauliPropertyReport,
    all_pauli_strings,
    apply_pauli_string,
    bloch_decompose,
    bloch_reconstruct,
    pauli_properties_check,
    pauli_string_matrix,
    single_pauli,
    validate_pauli_string,
)
from .states import (
    CqState,
    DensityReport,
    extend_with_y,
    locking_state,
    locking_state_alt,
    marginal_e,
    partial_trace,
    purify,
    random_density,
    validate_density,
)
from .measurement import (
    Povm,
    PovmReport,
    apply_povm,
    binary_entropy,
    binary_locking_povm,
    conditional_x_povm,
    measure_cq,
    mutual_information,
    perfect_joint_measurement,
    pretty_good_povm,
    random_rank_one_povm,
    sample_locking_outcome,
    shannon_entropy,
    validate_povm,
)
from .accinfo import (
    AccInfoEstimate,
    ChainReport,
    LockingGapReport,
    OptimizerConfig,
    epsilon_of_n,
    key_length_bits,
    locking_bound_chain_check,
    locking_gap,
    locking_upper_bound,
    measured_info,
    min_output_entropy,
    optimize_accessible_info,
)
from .security import (
    BellExperimentResult,
    FvdGReport,
    SecurityReport,
    bell_key_experiment,
    epsilon_secure_distance,
    fidelity,
    fuchs_van_de_graaf_check,
    maximally_entangled_vector,
    security_report,
    trace_distance,
)
from .attack import (
    FIXED_BASIS_PRESET,
    AttackStats,
    Ciphertext,
    KeySymbol,
    Message,
    blind_success_probability,
    otp_decrypt,
    otp_encrypt,
    run_blind_attack,
    run_header_attack,
)

__version__ = "0.1.0"
