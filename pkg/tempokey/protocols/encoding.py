"""Pulse encodings and the Alice-Bob joint states of the time-coding
protocols.

Time slots are indexed from 0 in code (slot ``i`` here is slot ``i+1``
on a timing diagram).
"""
from collections import OrderedDict

import numpy as np

from tempokey import error
from tempokey.protocols.kinds import AliceSymbol, ProtocolKind, SYMBOLS
from tempokey.quantum import linalg

SQRT_HALF = np.sqrt(0.5)

# Time-slot pair each symbol occupies (one slot for basis states).
_OCCUPANCY = {
    ProtocolKind.TS3: {AliceSymbol.BIT0: (0, 1), AliceSymbol.BIT1: (1, 2)},
    ProtocolKind.TS2: {AliceSymbol.BIT0: (0,), AliceSymbol.BIT1: (1,), AliceSymbol.COHERENCE: (0, 1)},
    ProtocolKind.C3TS: {AliceSymbol.BIT0: (0, 1), AliceSymbol.BIT1: (1, 2), AliceSymbol.COHERENCE: (0, 2)},
}

DEFAULT_COHERENCE_FRACTION = 0.5


def occupied_slots(protocol, symbol):
    protocol = ProtocolKind.parse(protocol)
    try:
        return _OCCUPANCY[protocol][symbol]
    except KeyError:
        raise error.InvalidSymbol('{} never sends {}'.format(protocol.value, symbol))


def encode_pulse(protocol, symbol):
    """Single-photon state Alice prepares for ``symbol``: a basis state or
    the equal superposition of the two slots the pulse spans.
    """
    slots = occupied_slots(protocol, symbol)
    n = ProtocolKind.parse(protocol).n_slots
    amplitudes = np.zeros(n, dtype=complex)
    amplitudes[list(slots)] = 1.0 / np.sqrt(len(slots))
    return amplitudes


def sending_probabilities(protocol, coherence_fraction=DEFAULT_COHERENCE_FRACTION):
    """Probability Alice sends each symbol.

    The two time-slots protocol always uses (1/4, 1/4, 1/2). The three
    time-slots protocol only sends bits. The completed variant sends
    coherence pulses with probability ``coherence_fraction``.
    """
    protocol = ProtocolKind.parse(protocol)
    if protocol is ProtocolKind.TS3:
        return OrderedDict([(AliceSymbol.BIT0, 0.5), (AliceSymbol.BIT1, 0.5)])
    if protocol is ProtocolKind.TS2:
        f = 0.5
    else:
        f = float(coherence_fraction)
        if not 0.0 < f < 1.0:
            raise error.ValidationError('Coherence fraction must lie in (0, 1), got {}'.format(coherence_fraction))
    bit = (1.0 - f) / 2
    return OrderedDict([(AliceSymbol.BIT0, bit), (AliceSymbol.BIT1, bit), (AliceSymbol.COHERENCE, f)])


def key_slots(protocol):
    """Bob's unambiguous slots, in bit order (bit 0 first)."""
    protocol = ProtocolKind.parse(protocol)
    return (0, 1) if protocol is ProtocolKind.TS2 else (0, 2)


def joint_state(protocol, coherence_fraction=DEFAULT_COHERENCE_FRACTION):
    """Purification on A (x) B of the ensemble Alice sends.

    Alice's register holds one basis state per symbol (bit 0, bit 1 and,
    where sent, coherence) so that tracing her out leaves Bob with the
    sending mixture.
    """
    protocol = ProtocolKind.parse(protocol)
    probs = sending_probabilities(protocol, coherence_fraction)
    n_a = len(probs)
    psi = np.zeros(n_a * protocol.n_slots, dtype=complex)
    for a, (symbol, p) in enumerate(probs.items()):
        psi += np.sqrt(p) * np.kron(linalg.basis(n_a, a), encode_pulse(protocol, symbol))
    return linalg.state_vector(psi)


def dims(protocol, coherence_fraction=DEFAULT_COHERENCE_FRACTION):
    protocol = ProtocolKind.parse(protocol)
    return [len(sending_probabilities(protocol, coherence_fraction)), protocol.n_slots]


def bob_slot_probabilities(protocol, coherence_fraction=DEFAULT_COHERENCE_FRACTION):
    rho = linalg.projector(joint_state(protocol, coherence_fraction))
    rho_b = linalg.partial_trace(rho, dims(protocol, coherence_fraction), 1)
    return np.real(np.diag(rho_b))


def project_bob(psi, a_dim, b_dim, slots):
    """Project ``psi`` on A (x) B onto Bob's ``slots`` and renormalise.

    Returns a state on A (x) span(slots), the slots in the given order.
    """
    psi = np.asarray(psi, dtype=complex).reshape(a_dim, b_dim)
    kept = psi[:, list(slots)]
    norm = np.linalg.norm(kept)
    if norm == 0:
        raise error.ValidationError('State has no weight on slots {}'.format(list(slots)))
    return (kept / norm).ravel()


def interferometer_delay(protocol):
    """Arm imbalance in slots: T/2 for adjacent-slot coherences, T for the
    slot 1 / slot 3 coherence of the completed protocol.
    """
    return 2 if ProtocolKind.parse(protocol) is ProtocolKind.C3TS else 1


def monitored_slot(protocol, symbol):
    """Interferometer output slot where ``symbol`` shows its fringe, or
    None when the pulse cannot interfere with this arm delay.
    """
    protocol = ProtocolKind.parse(protocol)
    slots = occupied_slots(protocol, symbol)
    delay = interferometer_delay(protocol)
    if len(slots) == 2 and slots[1] - slots[0] == delay:
        return slots[1]
    return None


def coherence_symbols(protocol):
    return tuple(s for s in SYMBOLS
                 if s in _OCCUPANCY[ProtocolKind.parse(protocol)] and monitored_slot(protocol, s) is not None)
