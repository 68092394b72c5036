import numpy as np
import pytest

from tempokey import error
from tempokey.protocols import interferometer
from tempokey.protocols.encoding import encode_pulse
from tempokey.protocols.kinds import AliceSymbol, ProtocolKind
from tempokey.channel.fiber import depolarize


def beta(symbol):
    return encode_pulse(ProtocolKind.TS3, symbol)


def test_first_bit_state_matches_closed_form():
    phi = 0.7
    out = interferometer.interferometer_output(beta(AliceSymbol.BIT0), phi)
    e = np.exp(1j * phi)
    k = np.sqrt(2) / 4
    np.testing.assert_allclose(out.plus, k * np.array([1, 1 + e, e, 0]), atol=1e-15)
    np.testing.assert_allclose(out.minus, k * np.array([1, 1 - e, -e, 0]), atol=1e-15)

def test_bit_states_fringe_fully():
    out = interferometer.interferometer_output(beta(AliceSymbol.BIT0), 0.0)
    assert abs(out.amplitude(1, '-')) < 1e-15
    assert interferometer.fringe_visibility(beta(AliceSymbol.BIT0), 1) == pytest.approx(1.0)

def test_second_bit_state_is_shifted_copy():
    out = interferometer.interferometer_output(beta(AliceSymbol.BIT1), 0.0)
    assert abs(out.amplitude(2, '-')) < 1e-15
    assert interferometer.fringe_visibility(beta(AliceSymbol.BIT1), 2) == pytest.approx(1.0)

@pytest.mark.parametrize('phase', [0.0, 0.4, np.pi / 2, np.pi])
def test_collapsed_state_shows_no_fringe(phase):
    out = interferometer.interferometer_output([1.0, 0.0, 0.0], phase)
    probs = out.probabilities()
    assert probs[0, 1] == pytest.approx(0.25)
    assert probs[1, 1] == pytest.approx(0.25)
    assert interferometer.fringe_visibility([1.0, 0.0, 0.0], 1) == 0.0

def test_probability_conserved_for_random_inputs():
    rng = np.random.RandomState(0)
    for _ in range(50):
        n = rng.randint(1, 6)
        psi = rng.normal(size=n) + 1j * rng.normal(size=n)
        psi /= np.linalg.norm(psi)
        delay = rng.randint(1, 3)
        out = interferometer.interferometer_output(psi, rng.uniform(0, 2 * np.pi), delay)
        assert out.n_slots == n + delay
        assert abs(out.total_probability() - 1) < 1e-12

def test_mixed_input_matches_pure_input():
    psi = beta(AliceSymbol.BIT0)
    pure = interferometer.interferometer_output(psi, 0.3).probabilities()
    mixed = interferometer.interferometer_probabilities(np.outer(psi, psi.conj()), 0.3)
    np.testing.assert_allclose(pure, mixed, atol=1e-15)

def test_reduced_coherence_reduces_visibility():
    psi = encode_pulse(ProtocolKind.TS2, AliceSymbol.COHERENCE)
    rho = np.outer(psi, psi.conj())
    rho[0, 1] *= 0.9
    rho[1, 0] *= 0.9
    assert interferometer.fringe_visibility(rho, 1) == pytest.approx(0.9)
    assert interferometer.fringe_visibility(depolarize(rho, 0.5), 1) == pytest.approx(0.45)

def test_long_delay_reads_slot_one_three_coherence():
    psi = encode_pulse(ProtocolKind.C3TS, AliceSymbol.COHERENCE)
    assert interferometer.fringe_visibility(psi, 2, delay=2) == pytest.approx(1.0)
    assert interferometer.fringe_visibility(psi, 1, delay=1) == 0.0

def test_visibility_from_counts():
    assert interferometer.visibility_from_counts(1000, 0) == 1.0
    assert interferometer.visibility_from_counts(500, 500) == 0.0
    with pytest.raises(error.EstimationError):
        interferometer.visibility_from_counts(0, 0)
    with pytest.raises(error.ValidationError):
        interferometer.visibility_from_counts(-1, 3)

def test_sampled_counts_recover_source_visibility():
    rng = np.random.RandomState(1)
    v_a, n = 0.9, 200000
    # port + intensities at the monitored slot for phases 0 and pi
    p0, ppi = (1 + v_a) / 4, (1 - v_a) / 4
    n0 = rng.binomial(n, p0)
    npi = rng.binomial(n, ppi)
    v = interferometer.visibility_from_counts(n0, npi)
    se = interferometer.visibility_standard_error(n0, npi)
    assert abs(v - v_a) < 3 * se
