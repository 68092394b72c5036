"""Secure distances and rate-versus-distance curves.

A cut-off is the fiber length where the (signed) secret rate changes
sign. The bracket starts at [0, 100] km and doubles until the rate turns
non-positive; a link still secure at 10,000 km is reported as unbounded.
"""
from collections import namedtuple

import numpy as np
from scipy import optimize

from tempokey import error, logger
from tempokey.channel import fiber
from tempokey.protocols.kinds import ProtocolKind
from tempokey.rates import model_for
from tempokey.rates.pulse_rates import SourceMode
from tempokey.security import attack

INITIAL_BRACKET_KM = 100.0
MAX_LENGTH_KM = 10000.0
LENGTH_XTOL_KM = 0.05


class CutoffResult(namedtuple('CutoffResult', ['length_km', 'bracket_width_km'])):
    """``length_km`` is ``inf`` when the link never becomes insecure."""
    __slots__ = ()

    @property
    def bounded(self):
        return np.isfinite(self.length_km)

    def to_dict(self):
        return {'length_km': self.length_km if self.bounded else 'unbounded',
                'bracket_width_km': self.bracket_width_km}


RatePoint = namedtuple('RatePoint', ['length_km', 'rate', 'rate_db'])
RateCurve = namedtuple('RateCurve', ['protocol', 'source', 'points', 'parameters'])
QberRow = namedtuple('QberRow', ['protocol', 'v_a', 'q', 'i_ab', 'chi_ae', 'delta_i'])


def find_cutoff(signed_rate, xtol=LENGTH_XTOL_KM):
    """Largest length with ``signed_rate(L) > 0``, to ``xtol`` km."""
    if signed_rate(0.0) <= 0:
        return CutoffResult(0.0, xtol)
    lo, hi = 0.0, INITIAL_BRACKET_KM
    while signed_rate(hi) > 0:
        if hi >= MAX_LENGTH_KM:
            return CutoffResult(float('inf'), xtol)
        lo, hi = hi, min(2 * hi, MAX_LENGTH_KM)
    root = optimize.bisect(signed_rate, lo, hi, xtol=xtol)
    return CutoffResult(float(root), xtol)


def _at_origin(c):
    if c.length_km != 0:
        logger.debug('Ignoring length_km=%s, distances are measured from the source', c.length_km)
        c = c.at_length(0.0)
    return c


def secure_distance(protocol, c):
    """Length at which the channel QBER reaches the protocol's threshold."""
    protocol = ProtocolKind.parse(protocol)
    c = _at_origin(c)
    threshold = attack.max_qber(protocol, c.v_a)
    result = find_cutoff(lambda length: threshold - fiber.qber(c.at_length(length)))
    logger.info('%s, V_A=%s: max QBER %.6f, secure up to %s km', protocol.value, c.v_a, threshold, result.length_km)
    return result


def rate_cutoff(source, protocol, c, **model_kwargs):
    """Last length with a positive key rate for the given source."""
    model = model_for(source, **model_kwargs)
    c = _at_origin(c)
    protocol = model.check(c, protocol)
    result = find_cutoff(lambda length: model.signed_rate(c.at_length(length), protocol))
    logger.info('%s over %s: cut-off %s km', model, protocol.value, result.length_km)
    return result


def sweep(source, protocol, c, l_min, l_max, step, **model_kwargs):
    """Rate at each grid length; dB relative to the first positive point."""
    if not (step > 0 and l_min < l_max and l_min >= 0):
        raise error.ValidationError('Empty length grid: l_min={}, l_max={}, step={}'.format(l_min, l_max, step))
    source = SourceMode.parse(source)
    model = model_for(source, **model_kwargs)
    c = _at_origin(c)
    protocol = model.check(c, protocol)

    lengths = l_min + step * np.arange(int(np.floor((l_max - l_min) / step + 1e-9)) + 1)
    rates = [model.rate(c.at_length(float(length)), protocol) for length in lengths]
    positive = [r for r in rates if r > 0]
    reference = positive[0] if positive else None
    points = []
    for length, rate in zip(lengths, rates):
        rate_db = 10 * np.log10(rate / reference) if rate > 0 else None
        points.append(RatePoint(float(length), float(rate), rate_db))
    return RateCurve(protocol, source, points, model.describe())


def slope_db_per_km(curve, l_lo, l_hi):
    """Least-squares slope (dB/km, negative for a decaying rate) of the
    positive part of ``curve`` between ``l_lo`` and ``l_hi``.
    """
    selected = [(p.length_km, p.rate_db) for p in curve.points
                if l_lo <= p.length_km <= l_hi and p.rate_db is not None]
    if len(selected) < 2:
        raise error.EstimationError('Need two positive points in [{}, {}] km to fit a slope'.format(l_lo, l_hi))
    lengths, db = zip(*selected)
    return float(np.polyfit(lengths, db, 1)[0])


def qber_sweep(protocol, v_a_list, q_grid):
    """Information balance over a (V_A, Q) grid, rows in grid order."""
    protocol = ProtocolKind.parse(protocol)
    if len(v_a_list) == 0 or len(q_grid) == 0:
        raise error.ValidationError('qber_sweep needs non-empty V_A and Q grids')
    rows = []
    for v_a in v_a_list:
        for q in q_grid:
            point = attack.secret_rate(protocol, q, v_a)
            rows.append(QberRow(protocol, point.visibility_va, point.qber, point.i_ab, point.chi_ae, point.delta_i))
    return rows
