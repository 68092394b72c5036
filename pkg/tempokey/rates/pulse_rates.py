"""Key rates per emitted pulse for single-photon and faint-pulse sources.

Faint pulses are coherent states with mean photon number mu. Without
decoy states every multiphoton pulse is assumed split by Eve (the GLLP
bound, with the multiphoton share Delta); with decoy states the
single-photon gain and error rate are known and only those pulses are
credited.
"""
from collections import namedtuple
from enum import Enum

import numpy as np
from scipy import optimize

from tempokey import error
from tempokey.channel import fiber
from tempokey.quantum.linalg import binary_entropy
from tempokey.security import attack

DEFAULT_DECOY_MU = 0.5

# Coarse scan over Delta before the bounded scalar search.
_MU_SCAN_POINTS = 64


class SourceMode(Enum):
    SINGLE_PHOTON = 'SinglePhoton'
    FAINT_NO_DECOY = 'FaintNoDecoy'
    FAINT_DECOY = 'FaintDecoy'

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        for mode in cls:
            if str(value).replace('_', '').replace('-', '').lower() == mode.value.lower():
                return mode
        raise error.ValidationError('Unknown source mode {!r}, expected one of {}'.format(
            value, [m.value for m in cls]))

    @property
    def model_id(self):
        return '{}-v0'.format(self.value)


GainErrorPoint = namedtuple('GainErrorPoint', ['g_mu', 'q_mu', 'delta', 'g_1', 'q_1'])


def _check_mu(mu):
    if not (np.isfinite(mu) and mu >= 0):
        raise error.ValidationError('mu must be a finite non-negative photon number, got {}'.format(mu))


def coherent_detection_probs(a1_sq, a2_sq, mu, eta, p_d):
    """Single-slot click probabilities for a coherent pulse split with
    weights ``a1_sq`` / ``a2_sq`` over two time slots.
    """
    if abs(a1_sq + a2_sq - 1) > 1e-12 or min(a1_sq, a2_sq) < 0:
        raise error.ValidationError('Slot weights must be non-negative and sum to 1, got ({}, {})'.format(a1_sq, a2_sq))
    _check_mu(mu)
    m1, m2 = a1_sq * eta * mu, a2_sq * eta * mu
    p1 = -np.expm1(-m1) * np.exp(-m2) + p_d
    p2 = -np.expm1(-m2) * np.exp(-m1) + p_d
    return p1, p2


def multiphoton_probability(mu):
    """P(n >= 2) = 1 - e^-mu (1 + mu)."""
    _check_mu(mu)
    return -np.expm1(-mu) - mu * np.exp(-mu)


def _delta(mu, eta, exact=False, g_mu=None):
    if exact:
        return multiphoton_probability(mu) / g_mu
    return mu / (2.0 * eta)


def multiphoton_fraction(mu, eta, exact=False, p_d=0.0):
    """Share Delta of detected pulses that may come from multiphoton
    emission: mu / (2 eta) to first order in mu, or P(n >= 2) / G_mu with
    ``exact``.
    """
    _check_mu(mu)
    if not 0 < eta <= 1:
        raise error.ValidationError('eta must lie in (0, 1], got {}'.format(eta))
    g_mu = -np.expm1(-eta * mu) + 2 * p_d if exact else None
    delta = _delta(mu, eta, exact, g_mu)
    if delta > 1:
        raise error.ValidationError('Multiphoton fraction {} exceeds 1 (mu={}, eta={})'.format(delta, mu, eta))
    return delta


def single_photon_gain(c, mu):
    return np.exp(-mu) * mu * fiber.transmission(c)


def gain_and_qber_mu(c, mu, exact=False):
    """Sifted gain G_mu and error rate Q_mu of signal pulses.

    ``delta`` is capped at 1, where no single-photon pulse is credited.
    """
    _check_mu(mu)
    eta = fiber.transmission(c)
    click = -np.expm1(-eta * mu)
    g_mu = click + 2 * c.p_dark
    q_mu = (c.q_a * click + c.p_dark) / g_mu if g_mu > 0 else 0.5
    delta = min(1.0, _delta(mu, eta, exact, g_mu)) if g_mu > 0 else 1.0
    return GainErrorPoint(g_mu=g_mu, q_mu=q_mu, delta=delta, g_1=single_photon_gain(c, mu), q_1=fiber.qber(c))


def signed_rate_faint(c, mu, exact=False):
    """GLLP rate without decoys, negative where no key survives."""
    point = gain_and_qber_mu(c, mu, exact)
    h_mu = binary_entropy(min(point.q_mu, 0.5))
    if point.delta >= 1:
        return -point.g_mu * h_mu
    corrected = min(point.q_mu / (1.0 - point.delta), 0.5)
    return point.g_mu * ((1.0 - point.delta) * (1.0 - binary_entropy(corrected)) - h_mu)


def rate_faint(c, mu, exact=False):
    return max(0.0, signed_rate_faint(c, mu, exact))


def optimal_faint_mu(c, exact=False):
    """mu in (0, 2 eta] maximising the rate without decoys."""
    eta = fiber.transmission(c)
    upper = 2.0 * eta
    grid = upper * np.linspace(1.0 / _MU_SCAN_POINTS, 1.0, _MU_SCAN_POINTS)
    values = [signed_rate_faint(c, mu, exact) for mu in grid]
    best = int(np.argmax(values))
    lo = grid[best - 1] if best > 0 else upper * 1e-6
    hi = grid[min(best + 1, len(grid) - 1)]
    result = optimize.minimize_scalar(lambda mu: -signed_rate_faint(c, mu, exact), bounds=(lo, hi),
                                      method='bounded', options={'xatol': upper * 1e-6})
    if result.success and -result.fun >= values[best]:
        return float(result.x)
    return float(grid[best])


def signed_rate_decoy(c, mu=DEFAULT_DECOY_MU):
    """Decoy-state rate -G_mu h(Q_mu) + G_1 (1 - h(Q_1)), error correction
    at the Shannon limit.
    """
    point = gain_and_qber_mu(c, mu)
    return -point.g_mu * binary_entropy(point.q_mu) + point.g_1 * (1.0 - binary_entropy(point.q_1))


def rate_decoy(c, mu=DEFAULT_DECOY_MU):
    return max(0.0, signed_rate_decoy(c, mu))


def signed_rate_single_photon(c, protocol):
    """Sifted detection probability times the secret fraction Delta I."""
    eta = fiber.transmission(c)
    return (eta + 2 * c.p_dark) * attack.delta_i(protocol, fiber.qber(c), c.v_a)


def rate_single_photon(c, protocol):
    return max(0.0, signed_rate_single_photon(c, protocol))
