"""Quantum discord and concurrence of perfect- and quasi-Werner states."""

from .matcore import (
    NumericalError,
    ValidationReport,
    hermitian_eigenvalues,
    mat_mul,
    partial_trace,
    tensor_product,
    validate_density,
)
from .measures import (
    CorrelationReport,
    MeasurementBasis,
    OptimizerOptions,
    analyze,
    classical_correlation_J,
    classical_mutual_information,
    concurrence,
    conditional_entropy_after_measurement,
    measurement_projectors,
    minimize_conditional_entropy,
    quantum_discord,
    quantum_mutual_information,
    shannon_entropy,
    spin_flip,
    von_neumann_entropy,
)
from .states import (
    SqueezedFamily,
    bell_corner_state,
    build_psi_minus,
    build_psi_plus,
    fock_overlap,
    overlap_M,
    perfect_werner,
    quasi_werner,
    squeezed_family,
    werner_mixture,
)
from .sweep import SweepConfig, SweepTable, emit_csv, read_csv, run_sweep

__version__ = "0.1.0"
