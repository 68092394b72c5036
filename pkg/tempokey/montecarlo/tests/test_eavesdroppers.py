import numpy as np
import pytest

from tempokey import error
from tempokey.montecarlo import eavesdroppers
from tempokey.protocols import encoding
from tempokey.protocols.kinds import AliceSymbol, ProtocolKind
from tempokey.quantum import linalg
from tempokey.utils import seeding


def test_eigenstate_is_resent_unchanged():
    rng, _ = seeding.np_random(0)
    for _ in range(100):
        out = eavesdroppers.intercept_resend(linalg.basis(2, 1), rng)
        assert np.array_equal(out, linalg.basis(2, 1))

def test_superposition_collapses_with_born_weights():
    rng, _ = seeding.np_random(1)
    pulse = np.array([1.0, 1.0]) / np.sqrt(2)
    n = 20000
    ones = sum(int(eavesdroppers.intercept_resend(pulse, rng)[1].real) for _ in range(n))
    assert abs(ones / float(n) - 0.5) <= 3 * np.sqrt(0.25 / n)

def test_resent_first_bit_never_reaches_last_slot():
    pulse = encoding.encode_pulse(ProtocolKind.TS3, AliceSymbol.BIT0)
    u = seeding.block_random(3, 0).random(10 ** 5)
    slots = eavesdroppers.InterceptResend().act(np.tile(np.abs(pulse) ** 2, (u.size, 1)), u)
    assert set(np.unique(slots)) == {0, 1}

def test_uniform_draw_is_accepted():
    pulse = np.array([1.0, 1.0]) / np.sqrt(2)
    assert eavesdroppers.intercept_resend(pulse, 0.1)[0] == 1
    assert eavesdroppers.intercept_resend(pulse, 0.9)[1] == 1

def test_non_unit_pulse_rejected():
    with pytest.raises(error.ValidationError):
        eavesdroppers.intercept_resend([1.0, 1.0], 0.5)

def test_registry():
    assert isinstance(eavesdroppers.make_eavesdropper(None), eavesdroppers.NoEavesdropper)
    assert isinstance(eavesdroppers.make_eavesdropper('intercept-resend'), eavesdroppers.InterceptResend)
    with pytest.raises(error.UnregisteredEavesdropper):
        eavesdroppers.make_eavesdropper('beamsplitting')

def test_no_eavesdropper_leaves_pulses_alone():
    out = eavesdroppers.NoEavesdropper().act(np.ones((5, 2)) / 2, np.zeros(5))
    assert (out == eavesdroppers.UNTOUCHED).all()
