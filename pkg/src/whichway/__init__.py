"""Which-way detection in a Mach-Zehnder interferometer: duality and correlations."""
from .correlations import (
    CCResult,
    CorrelationReport,
    DegenerateMeasurementError,
    JointStateKind,
    ProjectorPair,
    StateKind,
    build_joint_state,
    canonical_angles,
    cc_dephased_analytic,
    cc_pure_analytic,
    classical_correlations,
    conditional_entropy,
    correlation_report,
    dephased_state,
    entangled_state,
    guessing_probability,
    helstrom_vectors,
    information_gain_closed_form,
    measurement_vectors,
    mi_analytic,
    mutual_information,
    optimal_gamma,
    pointer_states,
    qd_dephased_analytic,
    qd_pure_analytic,
    quantum_discord,
)
from .interferometer import (
    BlochVector,
    Configuration,
    DetectorModel,
    DualityReport,
    beam_splitter_map,
    detector_final_state,
    distinguishability,
    duality_check,
    evolve_joint,
    fringe_visibility,
    output_probability,
    photon_initial_state,
    reduced_photon_state,
    scanned_visibility,
)
from .qlinalg import (
    DETECTOR,
    PHOTON,
    DimensionError,
    DomainError,
    ValidationError,
    binary_entropy,
    density_matrix,
    hermitian_eigenvalues,
    partial_trace,
    tensor_product,
    trace_norm,
    von_neumann_entropy,
)

__version__ = "0.1.0"
