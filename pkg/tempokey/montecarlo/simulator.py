"""Pulse-by-pulse simulation of a time-coding link.

Every pulse carries at most one photon. Alice draws a symbol, an optional
eavesdropper intercepts it, the photon survives the fiber with probability
eta and Bob's beamsplitter sends it either to the time-of-arrival detector
or to the imbalanced interferometer. Dark counts fire independently in
every detection window and double clicks are discarded.

Pulses are processed in fixed-size blocks. Block ``b`` draws from its own
Philox stream (see ``tempokey.utils.seeding.block_random``) in a fixed
order, so a run is reproducible bit-for-bit whatever the worker count.
"""
import multiprocessing as mp
from collections import namedtuple

import numpy as np
from six import integer_types

from tempokey import error, logger
from tempokey.channel import fiber
from tempokey.channel.fiber import ChannelParams
from tempokey.montecarlo import parallel
from tempokey.montecarlo.eavesdroppers import UNTOUCHED, categorical_rows, make_eavesdropper
from tempokey.protocols import encoding, interferometer
from tempokey.protocols.kinds import ProtocolKind
from tempokey.utils import seeding

DEFAULT_BLOCK_SIZE = 1 << 16
MAX_PULSES = 2 ** 62
COHERENCE_CHANNELS = ('depolarizing', 'lossy')
PHASE_ATOL = 1e-9


def _wrap(phase):
    return (phase + np.pi) % (2 * np.pi) - np.pi


class SimConfig(object):
    """Description of one simulation run.

    Args:
        protocol (ProtocolKind): coding protocol
        channel (ChannelParams): link at its simulated length
        n_pulses (int): pulses Alice sends
        seed (int): unsigned 64-bit run seed
        attack (Optional[str]): eavesdropper name, None for none
        measure_coherence_prob (float): share of Bob's photons sent to the interferometer
        interferometer_phases (sequence): phases drawn uniformly per pulse; must contain 0 and pi
        coherence_fraction (float): coherence pulse share of the completed protocol
        coherence_channel (str): 'depolarizing' shrinks the coherence to eta V_A, 'lossy' keeps V_A
        block_size (int): pulses per random stream
        num_workers (int): worker processes
        mp_context (Optional[str]): multiprocessing start method for the workers
            ('fork', 'spawn', 'forkserver'); None uses the platform default
    """

    def __init__(self, protocol, channel=None, n_pulses=10 ** 6, seed=0, attack=None,
                 measure_coherence_prob=0.5, interferometer_phases=(0.0, np.pi),
                 coherence_fraction=encoding.DEFAULT_COHERENCE_FRACTION,
                 coherence_channel='depolarizing', block_size=DEFAULT_BLOCK_SIZE, num_workers=1,
                 mp_context=None):
        self.protocol = ProtocolKind.parse(protocol)
        self.channel = ChannelParams() if channel is None else channel
        self.n_pulses = n_pulses
        self.seed = seeding.create_seed() if seed is None else seed
        self.attack = None if attack in (None, 'none') else attack
        self.measure_coherence_prob = float(measure_coherence_prob)
        self.interferometer_phases = tuple(float(p) for p in interferometer_phases)
        self.coherence_fraction = float(coherence_fraction)
        self.coherence_channel = coherence_channel
        self.block_size = block_size
        self.num_workers = num_workers
        self.mp_context = mp_context
        self._validate()

    def _validate(self):
        if not isinstance(self.n_pulses, integer_types) or isinstance(self.n_pulses, bool) or self.n_pulses < 1:
            raise error.ValidationError('n_pulses must be a positive integer, got {!r}'.format(self.n_pulses))
        if self.n_pulses > MAX_PULSES:
            raise error.CounterOverflow('n_pulses {} exceeds the counter range ({})'.format(self.n_pulses, MAX_PULSES))
        seeding.validate_seed(self.seed)
        make_eavesdropper(self.attack)
        if not 0 <= self.measure_coherence_prob <= 1:
            raise error.ValidationError('measure_coherence_prob must lie in [0, 1], got {}'.format(self.measure_coherence_prob))
        if self.coherence_channel not in COHERENCE_CHANNELS:
            raise error.ValidationError('coherence_channel must be one of {}, got {!r}'.format(COHERENCE_CHANNELS, self.coherence_channel))
        if not isinstance(self.block_size, integer_types) or self.block_size < 1:
            raise error.ValidationError('block_size must be a positive integer, got {!r}'.format(self.block_size))
        if not isinstance(self.num_workers, integer_types) or self.num_workers < 1:
            raise error.ValidationError('num_workers must be a positive integer, got {!r}'.format(self.num_workers))
        if self.mp_context is not None and self.mp_context not in mp.get_all_start_methods():
            raise error.ValidationError('mp_context must be one of {}, got {!r}'.format(mp.get_all_start_methods(), self.mp_context))
        encoding.sending_probabilities(self.protocol, self.coherence_fraction)
        self.phase_index(0.0)
        self.phase_index(np.pi)

    def phase_index(self, phase):
        for i, p in enumerate(self.interferometer_phases):
            if abs(_wrap(p - phase)) <= PHASE_ATOL:
                return i
        raise error.ValidationError('interferometer_phases {} must include {}'.format(self.interferometer_phases, phase))

    @property
    def n_blocks(self):
        return -(-self.n_pulses // self.block_size)

    def to_dict(self):
        return {
            'protocol': self.protocol.value,
            'channel': self.channel.to_dict(),
            'n_pulses': self.n_pulses,
            'seed': self.seed,
            'attack': self.attack,
            'measure_coherence_prob': self.measure_coherence_prob,
            'interferometer_phases': list(self.interferometer_phases),
            'coherence_fraction': self.coherence_fraction,
            'coherence_channel': self.coherence_channel,
            'block_size': self.block_size,
            'bit_generator': seeding.BIT_GENERATOR,
        }


_RESULT_FIELDS = (
    'protocol', 'sent', 'detected_time_basis', 'sifted', 'errors', 'qber_estimate', 'qber_stderr',
    'slot_histogram', 'visibility_estimate', 'visibility_stderr', 'flagged_coherence_detections',
    'fringe_counts', 'seed',
)


class SimResult(namedtuple('SimResult', _RESULT_FIELDS)):
    """Counters of a run and the estimates derived from them. Estimates
    are None where their counter is empty.
    """
    __slots__ = ()

    def to_dict(self):
        out = self._asdict()
        out['protocol'] = self.protocol.value
        out['slot_histogram'] = list(self.slot_histogram)
        out['fringe_counts'] = list(self.fringe_counts)
        return dict(out)


class PulseModel(object):
    """Per-run lookup tables. States are indexed by (symbol, resent slot + 1),
    column 0 meaning the pulse was not intercepted.
    """

    def __init__(self, cfg):
        self.cfg = cfg
        protocol = cfg.protocol
        c = cfg.channel
        self.eta = fiber.transmission(c)
        self.n_slots = protocol.n_slots
        self.delay = encoding.interferometer_delay(protocol)
        self.n_out = self.n_slots + self.delay

        probs = encoding.sending_probabilities(protocol, cfg.coherence_fraction)
        self.symbols = list(probs)
        self.symbol_cdf = np.cumsum(list(probs.values()))
        self.symbol_bits = np.array([-1 if s.bit is None else s.bit for s in self.symbols])
        self.monitored = np.array([
            -1 if encoding.monitored_slot(protocol, s) is None else encoding.monitored_slot(protocol, s)
            for s in self.symbols])

        key = encoding.key_slots(protocol)
        self.key_slots = np.array(key)
        self.slot_to_key = np.full(self.n_slots, -1)
        self.slot_to_key[list(key)] = [0, 1]
        self.swap = np.arange(self.n_slots)
        self.swap[key[0]], self.swap[key[1]] = key[1], key[0]

        n_sym, n_states, n_phases = len(self.symbols), self.n_slots + 1, len(cfg.interferometer_phases)
        self.pulse_probs = np.zeros((n_sym, self.n_slots))
        self.time_probs = np.zeros((n_sym, n_states, self.n_slots))
        self.interf_probs = np.zeros((n_sym, n_states, n_phases, 2 * self.n_out))
        for i, symbol in enumerate(self.symbols):
            psi = encoding.encode_pulse(protocol, symbol)
            self.pulse_probs[i] = np.abs(psi) ** 2
            pair = encoding.occupied_slots(protocol, symbol)
            for state in range(n_states):
                if state == 0:
                    rho = self._transmitted(self._source_state(psi, c.v_a), pair)
                else:
                    rho = np.zeros((self.n_slots, self.n_slots), dtype=complex)
                    rho[state - 1, state - 1] = 1.0
                self.time_probs[i, state] = np.real(np.diag(rho))
                for k, phase in enumerate(cfg.interferometer_phases):
                    self.interf_probs[i, state, k] = interferometer.interferometer_probabilities(
                        rho, phase, self.delay).ravel()

    @staticmethod
    def _source_state(psi, v_a):
        rho = np.outer(psi, psi.conj())
        off = ~np.eye(rho.shape[0], dtype=bool)
        rho[off] *= v_a
        return rho

    def _transmitted(self, rho, pair):
        if self.cfg.coherence_channel != 'depolarizing' or len(pair) != 2:
            return rho
        idx = np.ix_(pair, pair)
        rho = rho.copy()
        block = rho[idx]
        rho[idx] = fiber.depolarize(block / np.trace(block).real, self.eta) * np.trace(block).real
        return rho

    def block_counts(self, block):
        cfg = self.cfg
        start = block * cfg.block_size
        n = min(cfg.block_size, cfg.n_pulses - start)
        rng = seeding.block_random(cfg.seed, block)
        idx = np.arange(n)
        n_slots, n_out = self.n_slots, self.n_out
        n_phases = len(cfg.interferometer_phases)

        # draw order is part of the reproducibility contract
        u_symbol = rng.random(n)
        u_survive = rng.random(n)
        u_route = rng.random(n)
        u_eve = rng.random(n)
        u_slot = rng.random(n)
        u_error = rng.random(n)
        u_dark = rng.random((n, n_slots))
        u_phase = rng.random(n)
        u_outcome = rng.random(n)
        u_dark_interf = rng.random((n, 2 * n_out))

        symbol = np.searchsorted(self.symbol_cdf, u_symbol, side='right')
        symbol = np.minimum(symbol, len(self.symbols) - 1)
        resent = make_eavesdropper(cfg.attack).act(self.pulse_probs[symbol], u_eve)
        state = np.where(resent == UNTOUCHED, 0, resent + 1)
        survive = u_survive < self.eta
        interf = u_route < cfg.measure_coherence_prob

        # time-of-arrival detector
        photon = categorical_rows(self.time_probs[symbol, state], u_slot)
        flip = (u_error < cfg.channel.q_a) & (self.slot_to_key[photon] >= 0)
        photon = np.where(flip, self.swap[photon], photon)
        clicks = u_dark < cfg.channel.p_dark
        clicks[idx, photon] |= survive & ~interf
        single = ~interf & (clicks.sum(axis=1) == 1)
        slot = clicks.argmax(axis=1)
        histogram = np.bincount(slot[single], minlength=n_slots)
        bit = self.symbol_bits[symbol]
        bob_bit = self.slot_to_key[slot]
        sifted = single & (bit >= 0) & (bob_bit >= 0)
        errors = sifted & (bob_bit != bit)

        # interferometer
        phase = np.minimum((u_phase * n_phases).astype(np.int64), n_phases - 1)
        outcome = categorical_rows(self.interf_probs[symbol, state, phase], u_outcome)
        clicks_i = u_dark_interf < cfg.channel.p_dark
        clicks_i[idx, outcome] |= survive & interf
        single_i = interf & (clicks_i.sum(axis=1) == 1)
        where = clicks_i.argmax(axis=1)
        port, out_slot = where // n_out, where % n_out
        at_monitor = single_i & (out_slot == self.monitored[symbol])
        fringe = np.bincount(phase[at_monitor & (port == 0)], minlength=n_phases)

        return {
            'sent': n,
            'detected_time_basis': int(single.sum()),
            'sifted': int(sifted.sum()),
            'errors': int(errors.sum()),
            'slot_histogram': histogram.astype(np.int64),
            'flagged_coherence_detections': int(at_monitor.sum()),
            'fringe_counts': fringe.astype(np.int64),
        }


def _merge(parts):
    total = dict(parts[0])
    for part in parts[1:]:
        for key, value in part.items():
            total[key] = total[key] + value
    return total


def _estimates(counts, cfg):
    qber = qber_se = vis = vis_se = None
    if counts['sifted'] > 0:
        qber = counts['errors'] / float(counts['sifted'])
        qber_se = float(np.sqrt(qber * (1 - qber) / counts['sifted']))
    n0 = int(counts['fringe_counts'][cfg.phase_index(0.0)])
    npi = int(counts['fringe_counts'][cfg.phase_index(np.pi)])
    if n0 + npi > 0:
        vis = interferometer.visibility_from_counts(n0, npi)
        vis_se = float(interferometer.visibility_standard_error(n0, npi))
    return qber, qber_se, vis, vis_se


def run_simulation(cfg):
    """Simulate ``cfg.n_pulses`` pulses; deterministic in (seed, config)."""
    model = PulseModel(cfg)
    logger.info('Simulating %d %s pulses in %d blocks (seed %d, attack %s)',
                cfg.n_pulses, cfg.protocol.value, cfg.n_blocks, cfg.seed, cfg.attack)
    parts = parallel.run_blocks(model.block_counts, cfg.n_blocks, cfg.num_workers, cfg.mp_context)
    counts = _merge(parts)
    qber, qber_se, vis, vis_se = _estimates(counts, cfg)
    result = SimResult(
        protocol=cfg.protocol,
        sent=counts['sent'],
        detected_time_basis=counts['detected_time_basis'],
        sifted=counts['sifted'],
        errors=counts['errors'],
        qber_estimate=qber,
        qber_stderr=qber_se,
        slot_histogram=[int(x) for x in counts['slot_histogram']],
        visibility_estimate=vis,
        visibility_stderr=vis_se,
        flagged_coherence_detections=counts['flagged_coherence_detections'],
        fringe_counts=[int(x) for x in counts['fringe_counts']],
        seed=cfg.seed,
    )
    assert result.errors <= result.sifted <= result.detected_time_basis <= result.sent
    assert sum(result.slot_histogram) == result.detected_time_basis
    return result
