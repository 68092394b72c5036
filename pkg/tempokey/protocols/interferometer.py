import numpy as np

from tempokey import error

PORTS = ('+', '-')


def output_operators(n_slots, phase, delay=1):
    """Maps from ``n_slots`` input amplitudes to the ``n_slots + delay``
    output slots of ports + and -.

    The long arm shifts |i> to |i + delay> and picks up ``exp(i phase)``.
    """
    if delay < 1:
        raise error.ValidationError('Interferometer delay must be at least one slot, got {}'.format(delay))
    n_out = n_slots + delay
    short = np.zeros((n_out, n_slots), dtype=complex)
    short[np.arange(n_slots), np.arange(n_slots)] = 1.0
    long_arm = np.zeros((n_out, n_slots), dtype=complex)
    long_arm[np.arange(n_slots) + delay, np.arange(n_slots)] = np.exp(1j * phase)
    return (short + long_arm) / 2, (short - long_arm) / 2


class InterferometerOutput(object):
    """Amplitudes at the two output ports, one entry per time slot."""

    def __init__(self, plus, minus):
        self.plus = np.asarray(plus, dtype=complex)
        self.minus = np.asarray(minus, dtype=complex)

    @property
    def n_slots(self):
        return self.plus.shape[0]

    def amplitude(self, slot, port):
        return (self.plus if port == '+' else self.minus)[slot]

    def probabilities(self):
        """Array of shape (2, n_slots): row 0 is port +, row 1 port -."""
        return np.abs(np.vstack([self.plus, self.minus])) ** 2

    def total_probability(self):
        return float(self.probabilities().sum())

    def __repr__(self):
        return 'InterferometerOutput(plus={}, minus={})'.format(np.round(self.plus, 6), np.round(self.minus, 6))


def interferometer_output(state, phase, delay=1):
    """Output of the imbalanced Mach-Zehnder for a pure input pulse."""
    state = np.asarray(state, dtype=complex).ravel()
    plus_op, minus_op = output_operators(state.size, phase, delay)
    return InterferometerOutput(plus_op @ state, minus_op @ state)


def interferometer_probabilities(rho, phase, delay=1):
    """Outcome probabilities, shape (2, n_slots + delay), for a possibly
    mixed input pulse ``rho``.
    """
    rho = np.asarray(rho, dtype=complex)
    out = []
    for op in output_operators(rho.shape[0], phase, delay):
        out.append(np.real(np.einsum('ij,jk,ik->i', op, rho, op.conj())))
    return np.clip(np.array(out), 0.0, None)


def fringe_visibility(state, slot, delay=1, port=0):
    """Two-point fringe contrast at ``slot`` for a pure state or a density
    matrix, comparing phases 0 and pi.
    """
    rho = np.asarray(state, dtype=complex)
    if rho.ndim == 1:
        rho = np.outer(rho, rho.conj())
    i0 = interferometer_probabilities(rho, 0.0, delay)[port, slot]
    ipi = interferometer_probabilities(rho, np.pi, delay)[port, slot]
    if i0 + ipi <= 0:
        return 0.0
    return float(abs(i0 - ipi) / (i0 + ipi))


def visibility_from_counts(counts_at_phase_0, counts_at_phase_pi):
    """Fringe contrast |n0 - n_pi| / (n0 + n_pi) at the monitored slot."""
    n0, npi = counts_at_phase_0, counts_at_phase_pi
    if n0 < 0 or npi < 0:
        raise error.ValidationError('Counts must be non-negative, got ({}, {})'.format(n0, npi))
    total = n0 + npi
    if total == 0:
        raise error.EstimationError('No counts at the monitored slot, visibility undefined')
    return abs(n0 - npi) / float(total)


def visibility_standard_error(counts_at_phase_0, counts_at_phase_pi):
    """Binomial standard error of the two-point contrast."""
    total = counts_at_phase_0 + counts_at_phase_pi
    if total == 0:
        raise error.EstimationError('No counts at the monitored slot, visibility undefined')
    p = counts_at_phase_0 / float(total)
    return 2.0 * np.sqrt(p * (1.0 - p) / total)
