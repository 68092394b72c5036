"""Small dense complex linear algebra for density matrices.

Matrices here never exceed 16x16 (two qubits times a four dimensional
ancilla), so everything is plain numpy on dense arrays and every
function is pure.
"""
from functools import reduce

import numpy as np

from tempokey import error

# Construction checks (hermiticity, trace, norm).
ATOL_CONSTRUCTION = 1e-12
# Anything spectral: eigenvalue sums, clamping of tiny negatives.
ATOL_SPECTRAL = 1e-10

MAX_DIM = 16


def _as_square(m):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise error.DimensionMismatch('Expected a square matrix, got shape {}'.format(m.shape))
    if not 1 <= m.shape[0] <= MAX_DIM:
        raise error.DimensionMismatch('Matrix dimension {} outside [1, {}]'.format(m.shape[0], MAX_DIM))
    return m


def _check_hermitian(m, atol=ATOL_CONSTRUCTION):
    asym = np.max(np.abs(m - m.conj().T))
    if asym > atol:
        raise error.NonHermitianMatrix('Matrix is not Hermitian (max |m - m^H| = {:.3g})'.format(asym))


def basis(dim, index):
    """Computational basis ket ``|index>`` in ``dim`` dimensions."""
    if not 0 <= index < dim:
        raise error.DimensionMismatch('Basis index {} outside dimension {}'.format(index, dim))
    ket = np.zeros(dim, dtype=complex)
    ket[index] = 1.0
    return ket


def kron(*factors):
    return reduce(np.kron, factors)


def state_vector(amplitudes):
    psi = np.asarray(amplitudes, dtype=complex).ravel()
    if psi.size == 0:
        raise error.DimensionMismatch('A state needs at least one amplitude')
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > ATOL_CONSTRUCTION:
        raise error.ValidationError('State is not normalised (norm = {!r})'.format(norm))
    return psi


def projector(psi):
    psi = np.asarray(psi, dtype=complex).ravel()
    return np.outer(psi, psi.conj())


def density_matrix(m):
    """Validate ``m`` as a density matrix and return it as a complex array.

    Hermitian and unit trace to 1e-12, no eigenvalue below -1e-10.
    """
    m = _as_square(m)
    _check_hermitian(m)
    tr = np.trace(m).real
    if abs(tr - 1.0) > ATOL_CONSTRUCTION:
        raise error.ValidationError('Density matrix trace is {!r}, expected 1'.format(tr))
    _clamp_spectrum(np.linalg.eigvalsh(m))
    return m


def eigvals_hermitian(m):
    """All eigenvalues of the Hermitian matrix ``m``, largest first."""
    m = _as_square(m)
    _check_hermitian(m)
    # LAPACK heevd; reads the lower triangle only, hence the check above
    return np.linalg.eigvalsh(m)[::-1]


def _clamp_spectrum(eigenvalues):
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    if np.any(eigenvalues < -ATOL_SPECTRAL):
        raise error.NegativeEigenvalue('Eigenvalue {!r} below -{}'.format(eigenvalues.min(), ATOL_SPECTRAL))
    return np.clip(eigenvalues, 0.0, None)


def shannon_entropy(probs, axis=-1):
    """Entropy in bits of the distributions along ``axis`` (0 log 0 = 0)."""
    p = np.asarray(probs, dtype=float)
    with np.errstate(divide='ignore', invalid='ignore'):
        terms = np.where(p > 0, -p * np.log2(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=axis)


def entropy_of_spectrum(eigenvalues):
    """Entropy of a spectrum, clamping rounding-level negatives to zero."""
    return float(shannon_entropy(_clamp_spectrum(eigenvalues)))


def von_neumann_entropy(rho):
    """S(rho) = -tr(rho log2 rho) in bits."""
    rho = _as_square(rho)
    _check_hermitian(rho)
    tr = np.trace(rho).real
    if abs(tr - 1.0) > ATOL_SPECTRAL:
        raise error.ValidationError('Density matrix trace is {!r}, expected 1'.format(tr))
    return entropy_of_spectrum(eigvals_hermitian(rho))


def binary_entropy(q):
    """h(q) = -q log2 q - (1-q) log2 (1-q); accepts scalars or arrays."""
    q_arr = np.asarray(q, dtype=float)
    if np.any(np.isnan(q_arr)) or np.any(q_arr < 0.0) or np.any(q_arr > 1.0):
        raise error.ValidationError('Binary entropy needs probabilities in [0, 1], got {}'.format(q))
    h = shannon_entropy(np.stack([q_arr, 1.0 - q_arr], axis=-1))
    if np.ndim(h) == 0:
        return float(h)
    return h


def partial_trace(rho, dims, keep):
    """Reduce ``rho`` on the tensor product ``dims`` to the subsystem(s)
    ``keep`` (an index or a sequence of indices, kept in ascending order).
    """
    rho = np.asarray(rho, dtype=complex)
    dims = [int(d) for d in dims]
    total = int(np.prod(dims)) if dims else 0
    if rho.ndim != 2 or rho.shape != (total, total):
        raise error.DimensionMismatch('Matrix of shape {} does not factor as {}'.format(rho.shape, dims))
    if np.ndim(keep) == 0:
        keep = [keep]
    keep = sorted(set(int(k) for k in keep))
    if not keep or keep[0] < 0 or keep[-1] >= len(dims):
        raise error.DimensionMismatch('Cannot keep subsystems {} of {}'.format(keep, dims))

    n = len(dims)
    reduced = rho.reshape(dims + dims)
    for axis in reversed(range(len(dims))):
        if axis in keep:
            continue
        reduced = np.trace(reduced, axis1=axis, axis2=axis + n)
        n -= 1
    d = int(np.prod([dims[k] for k in keep]))
    return reduced.reshape(d, d)


def pinch(rho, projectors):
    """Sum of P rho P over a complete family of orthogonal projectors, the
    post-measurement state when the outcome is forgotten.
    """
    rho = _as_square(rho)
    out = np.zeros_like(rho)
    for p in projectors:
        p = np.asarray(p, dtype=complex)
        out += p @ rho @ p.conj().T
    return out
