"""Compare the counters of a simulation run with the closed-form channel
model: QBER, the observed visibility and the time-slot fractions.
"""
from collections import namedtuple

import numpy as np

from tempokey.channel import fiber
from tempokey.protocols import encoding
from tempokey.protocols.kinds import ProtocolKind

Z_FLAG = 4.0
INSUFFICIENT = 'insufficient data'


class ComparisonRow(namedtuple('ComparisonRow', ['quantity', 'simulated', 'analytic', 'stderr', 'z', 'flagged', 'note'])):
    __slots__ = ()

    def to_dict(self):
        return dict(self._asdict())


class ComparisonReport(object):
    """Rows of (quantity, simulated, analytic, sigma distance)."""

    def __init__(self, rows):
        self.rows = list(rows)

    @property
    def flagged(self):
        return [row.quantity for row in self.rows if row.flagged]

    @property
    def consistent(self):
        return not self.flagged

    def row(self, quantity):
        for row in self.rows:
            if row.quantity == quantity:
                return row
        raise KeyError(quantity)

    def to_dict(self):
        return {'rows': [row.to_dict() for row in self.rows], 'flagged': self.flagged, 'z_threshold': Z_FLAG}

    def __repr__(self):
        return 'ComparisonReport(flagged={})'.format(self.flagged)


def _binomial_row(quantity, successes, trials, analytic):
    if trials == 0:
        return ComparisonRow(quantity, None, float(analytic), None, None, False, INSUFFICIENT)
    simulated = successes / float(trials)
    # half a count keeps z finite when the model predicts a certain outcome
    stderr = max(np.sqrt(analytic * (1.0 - analytic) / trials), 0.5 / trials)
    z = (simulated - analytic) / stderr
    return ComparisonRow(quantity, simulated, float(analytic), float(stderr), float(z), bool(abs(z) > Z_FLAG), None)


def key_slot_probability(protocol):
    """Chance a surviving bit photon reaches one of the two key slots."""
    return 1.0 if ProtocolKind.parse(protocol) is ProtocolKind.TS2 else 0.5


def expected_qber(cfg):
    c = cfg.channel
    eta = fiber.transmission(c) * key_slot_probability(cfg.protocol)
    return fiber.qber_from_transmission(eta, c.q_a, c.p_dark)


def expected_visibility(cfg):
    """eta V_A when the fiber depolarizes the pulse, V_A when it only loses photons."""
    if cfg.coherence_channel == 'depolarizing':
        return fiber.bob_visibility(cfg.channel)
    return cfg.channel.v_a


def expected_slot_fractions(cfg):
    eta = fiber.transmission(cfg.channel)
    pi = encoding.bob_slot_probabilities(cfg.protocol, cfg.coherence_fraction)
    weights = eta * pi + (1.0 - eta) * cfg.channel.p_dark
    return weights / weights.sum()


def compare_to_analytic(result, cfg):
    rows = [_binomial_row('qber', result.errors, result.sifted, expected_qber(cfg))]

    n0 = result.fringe_counts[cfg.phase_index(0.0)]
    npi = result.fringe_counts[cfg.phase_index(np.pi)]
    v = expected_visibility(cfg)
    row = _binomial_row('visibility', n0, n0 + npi, (1.0 + v) / 2.0)
    if row.simulated is None:
        rows.append(row._replace(analytic=float(v)))
    else:
        rows.append(row._replace(simulated=abs(2 * row.simulated - 1), analytic=float(v),
                                 stderr=2 * row.stderr))

    for slot, p in enumerate(expected_slot_fractions(cfg)):
        rows.append(_binomial_row('slot_fraction[{}]'.format(slot), result.slot_histogram[slot],
                                  result.detected_time_basis, p))
    return ComparisonReport(rows)
