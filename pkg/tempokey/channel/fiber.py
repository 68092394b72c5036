"""Fiber link and detector model.

A photon reaches Bob's detector with probability eta = eta_d 10^(-alpha L/10).
Errors on sifted events come from Alice's intrinsic error Q_A on detected
photons and from dark counts in the two key slots.
"""
from collections import namedtuple

import numpy as np

from tempokey import error
from tempokey.quantum import linalg

_FIELDS = ('alpha_db_per_km', 'length_km', 'eta_detector', 'p_dark', 'v_a', 'q_a')


class ChannelParams(namedtuple('ChannelParams', _FIELDS)):
    """Immutable description of fiber, detectors and source imperfections.

    Defaults are a standard telecom fiber (0.2 dB/km) read out by
    superconducting detectors with 10% efficiency and 1e-7 dark counts per
    slot, with a 2% intrinsic error and a perfect source visibility.
    """
    __slots__ = ()

    def __new__(cls, alpha_db_per_km=0.2, length_km=0.0, eta_detector=0.1, p_dark=1e-7, v_a=1.0, q_a=0.02):
        self = super(ChannelParams, cls).__new__(
            cls, float(alpha_db_per_km), float(length_km), float(eta_detector),
            float(p_dark), float(v_a), float(q_a))
        self._validate()
        return self

    def _validate(self):
        if not self.alpha_db_per_km >= 0:
            raise error.ValidationError('alpha_db_per_km must be >= 0, got {}'.format(self.alpha_db_per_km))
        if not self.length_km >= 0:
            raise error.ValidationError('length_km must be >= 0, got {}'.format(self.length_km))
        if not 0 < self.eta_detector <= 1:
            raise error.ValidationError('eta_detector must lie in (0, 1], got {}'.format(self.eta_detector))
        for name in ('p_dark', 'v_a', 'q_a'):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise error.ValidationError('{} must lie in [0, 1], got {}'.format(name, value))
        if self.q_a > 0.5:
            raise error.ValidationError('q_a above 1/2 is not an error rate, got {}'.format(self.q_a))

    @property
    def eta(self):
        return transmission(self)

    def at_length(self, length_km):
        return self.replace(length_km=length_km)

    def replace(self, **kwargs):
        params = self._asdict()
        unknown = set(kwargs) - set(params)
        if unknown:
            raise error.ValidationError('Unknown channel parameters: {}'.format(sorted(unknown)))
        params.update(kwargs)
        return ChannelParams(**params)

    def to_dict(self):
        return dict(self._asdict())


def transmission(c):
    """eta = eta_d * 10^(-alpha L / 10)."""
    return c.eta_detector * 10.0 ** (-c.alpha_db_per_km * c.length_km / 10.0)


def qber_from_transmission(eta, q_a, p_dark):
    """(eta Q_A + p_d) / (eta + 2 p_d); 1/2 when nothing can click."""
    denominator = eta + 2.0 * p_dark
    if denominator <= 0:
        return 0.5
    return (eta * q_a + p_dark) / denominator


def qber(c):
    return qber_from_transmission(transmission(c), c.q_a, c.p_dark)


def bob_visibility(c):
    """Visibility Bob sees without an eavesdropper, V_B = eta V_A.

    Secure-distance calculations use V_A instead: an eavesdropper can
    swap the lossy fiber for a perfect one and keep the loss budget.
    """
    return transmission(c) * c.v_a


def depolarize(rho_a, eta):
    """rho_B = eta rho_A + (1 - eta) I / 2 for a qubit."""
    rho_a = np.asarray(rho_a, dtype=complex)
    if rho_a.shape != (2, 2):
        raise error.DimensionMismatch('depolarize acts on qubits, got shape {}'.format(rho_a.shape))
    if not 0 <= eta <= 1:
        raise error.ValidationError('eta must lie in [0, 1], got {}'.format(eta))
    linalg.density_matrix(rho_a)
    return eta * rho_a + (1.0 - eta) / 2.0 * np.eye(2)


def depolarized_fidelity(eta):
    return (1.0 + eta) / 2.0


def depolarized_error(eta):
    return (1.0 - eta) / 2.0
