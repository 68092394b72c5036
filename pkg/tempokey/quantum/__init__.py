from tempokey.quantum.linalg import (
    ATOL_CONSTRUCTION,
    ATOL_SPECTRAL,
    basis,
    binary_entropy,
    density_matrix,
    eigvals_hermitian,
    entropy_of_spectrum,
    kron,
    partial_trace,
    pinch,
    projector,
    shannon_entropy,
    state_vector,
    von_neumann_entropy,
)
