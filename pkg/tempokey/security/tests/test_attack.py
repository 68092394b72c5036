import numpy as np
import pytest

from tempokey import error
from tempokey.protocols.kinds import ProtocolKind
from tempokey.quantum import linalg
from tempokey.security import attack
from tempokey.security.attack import AttackParams

TS2, TS3, C3TS = ProtocolKind.TS2, ProtocolKind.TS3, ProtocolKind.C3TS
SATURATION_QBER = (1 - 1 / np.sqrt(2)) / 2


def random_attack(rng):
    q = rng.uniform(0, 0.5)
    dq = rng.uniform(-min(q, 0.5 - q), min(q, 0.5 - q))
    return AttackParams.from_mean(q, dq, rng.uniform(-1, 1), rng.uniform(-1, 1))


def test_params_validation():
    with pytest.raises(error.ValidationError):
        AttackParams(0.9, 0.2, 1.0, 0.0, 1.0, 1.0)
    with pytest.raises(error.ValidationError):
        AttackParams(0.9, 0.1, 0.9, 0.1, 1.5, 1.0)
    p = AttackParams(0.9, 0.1, 1.0, 0.0, 1.0, 1.0)
    assert p.Q == pytest.approx(0.05)
    assert p.dQ == pytest.approx(0.05)
    assert not p.symmetric

def test_projected_state_without_attack_is_pure():
    rho = attack.rho_ab_projected(AttackParams(1, 0, 1, 0, 1, 1))
    assert abs(np.trace(rho) - 1) < 1e-12
    assert abs(linalg.von_neumann_entropy(rho)) < 1e-12

def test_projected_state_matches_symmetric_closed_form():
    rho = attack.rho_ab_projected(AttackParams(0.95, 0.05, 0.95, 0.05, 0.9, 0.9))
    expected = np.sort(attack.lambda_eigenvalues(0.05, 0.9))[::-1]
    np.testing.assert_allclose(linalg.eigvals_hermitian(rho), expected, atol=1e-12)

def test_projected_state_matches_asymmetric_closed_form():
    p = AttackParams(0.9, 0.1, 1.0, 0.0, 1.0, 1.0)
    assert p.dQ == pytest.approx(0.05)
    gammas = np.sort(attack.gamma_eigenvalues(p.F, p.Q, p.dQ, 1.0, 1.0))[::-1]
    np.testing.assert_allclose(linalg.eigvals_hermitian(attack.rho_ab_projected(p)), gammas, atol=1e-12)

def test_gamma_reduces_to_lambda():
    q, v = 0.07, 0.8
    np.testing.assert_allclose(attack.gamma_eigenvalues(1 - q, q, 0.0, v, v), attack.lambda_eigenvalues(q, v), atol=1e-15)
    np.testing.assert_allclose(attack.gamma_eigenvalues(1, 0, 0, 1, 1), [1, 0, 0, 0], atol=1e-15)

def test_gamma_matches_numeric_spectrum():
    rng = np.random.RandomState(0)
    for _ in range(100):
        p = random_attack(rng)
        gammas = attack.gamma_eigenvalues(p.F, p.Q, p.dQ, p.s_1122, p.s_1221)
        assert abs(gammas.sum() - 1) < 1e-12
        assert np.all(gammas >= 0)
        np.testing.assert_allclose(np.sort(gammas)[::-1], linalg.eigvals_hermitian(attack.rho_ab_projected(p)), atol=1e-10)

def test_gamma_range_errors():
    with pytest.raises(error.ValidationError):
        attack.gamma_eigenvalues(0.9, 0.1, 0.2, 1, 1)
    with pytest.raises(error.ValidationError):
        attack.gamma_eigenvalues(0.8, 0.1, 0.0, 1, 1)

def test_symmetric_attack_is_optimal():
    q, s = 0.1, 0.7
    dqs = np.linspace(-q, q, 1000)
    ent = linalg.shannon_entropy(attack.gamma_eigenvalues(1 - q, q, dqs, s, s))
    ent_flip = linalg.shannon_entropy(attack.gamma_eigenvalues(1 - q, q, -dqs, s, s))
    np.testing.assert_allclose(ent, ent_flip, atol=1e-14)
    centre = linalg.shannon_entropy(attack.gamma_eigenvalues(1 - q, q, 0.0, s, s))
    assert np.all(ent <= centre + 1e-14)

def test_s_rho_e_max_values():
    assert attack.s_rho_e_max(0.0, 1.0) == pytest.approx(0.0, abs=1e-15)
    q = 0.05
    s = attack.s_rho_e_max(q, 0.855)
    numeric = linalg.von_neumann_entropy(attack.rho_ab_projected(AttackParams.from_mean(q, 0.0, 0.855)))
    assert abs(s - numeric) < 1e-10

def test_perfect_visibility_gives_twice_binary_entropy():
    for q in (0.01, 0.05, 0.11, 0.3):
        s = attack.s_rho_e_max(q, 1 - 2 * q)
        assert attack.mutual_info_ab(q, q) - attack.holevo_chi_ae(q, q, s) == pytest.approx(1 - 2 * linalg.binary_entropy(q), abs=1e-12)

def test_chi_collapses_to_binary_entropy():
    rng = np.random.RandomState(1)
    for q in rng.uniform(0, 0.5, 200):
        point = attack.secret_rate(TS2, q, 1.0)
        assert abs(point.chi_ae - linalg.binary_entropy(q)) <= 1e-12

def test_chi_and_mutual_information():
    assert attack.holevo_chi_ae(0, 0, 0.0) == 0
    assert attack.mutual_info_ab(0, 0) == 1
    assert attack.mutual_info_ab(0.5, 0.5) == 0
    assert abs(attack.mutual_info_ab(0.11, 0.11) - 0.5) <= 1e-3
    point = attack.secret_rate(TS2, 0.11, 1.0)
    assert abs(point.chi_ae - 0.5) <= 1e-3

@pytest.mark.parametrize('protocol,q,v_a,expected,tol', [
    (TS2, 0.0, 1.0, 1.0, 1e-12),
    (TS2, 0.11, 1.0, 0.0, 1e-3),
    (C3TS, 0.11, 1.0, 0.0, 1e-3),
])
def test_secret_rate_values(protocol, q, v_a, expected, tol):
    assert abs(attack.secret_rate(protocol, q, v_a).delta_i - expected) <= tol

def test_secret_rate_identities():
    rng = np.random.RandomState(2)
    for _ in range(100):
        protocol = [TS2, TS3, C3TS][rng.randint(3)]
        point = attack.secret_rate(protocol, rng.uniform(0, 0.5), rng.uniform(0, 1))
        assert abs(point.delta_i - (point.i_ab - point.chi_ae)) < 1e-10
        assert abs(point.delta_i - (1 - point.s_rho_e)) < 1e-10
        assert abs(point.delta_i - attack.delta_i(protocol, point.qber, point.visibility_va)) < 1e-12

def test_three_slot_saturation():
    point = attack.secret_rate(TS3, SATURATION_QBER, 1.0)
    assert point.chi_ae / point.i_ab >= 1 - 1e-3
    assert abs(SATURATION_QBER - 0.15) < 0.005
    beyond = attack.secret_rate(TS3, SATURATION_QBER + 1e-6, 1.0)
    assert beyond.full_information
    assert beyond.chi_ae == pytest.approx(1.0)
    assert beyond.delta_i == pytest.approx(-linalg.binary_entropy(beyond.qber))

def test_three_slot_rate_continuous_at_saturation():
    below = attack.delta_i(TS3, SATURATION_QBER - 1e-9, 1.0)
    above = attack.delta_i(TS3, SATURATION_QBER + 1e-9, 1.0)
    assert abs(below - above) < 1e-6

def test_full_information_qber():
    assert attack.full_information_qber(TS3, 1.0) == pytest.approx(SATURATION_QBER)
    assert attack.full_information_qber(TS2, 0.9) == 0.5
    assert attack.full_information_qber(TS3, 0.5) == 0.0

def test_secret_rate_range_errors():
    with pytest.raises(error.ValidationError):
        attack.secret_rate(TS2, 0.6, 1.0)
    with pytest.raises(error.ValidationError):
        attack.secret_rate(TS2, 0.1, 1.2)

def test_three_slot_never_beats_two_slot():
    q, v = np.meshgrid(np.linspace(0, 0.5, 100), np.linspace(0, 1, 100))
    assert np.all(attack.delta_i(TS3, q, v) <= attack.delta_i(TS2, q, v) + 1e-12)

def test_max_qber_two_slot():
    assert abs(attack.max_qber(TS2, 1.0) - 0.110) <= 1e-3
    assert attack.max_qber(C3TS, 1.0) == pytest.approx(attack.max_qber(TS2, 1.0))

def test_max_qber_three_slot():
    q = attack.max_qber(TS3, 1.0)
    assert 0.048 <= q <= 0.055

def test_max_qber_decohered_source():
    assert attack.max_qber(TS2, 0.0) == 0.0
    assert attack.max_qber(TS2, 1e-3) < 1e-5
    assert attack.max_qber(TS3, 0.5) == 0.0

def test_max_qber_monotone_in_visibility():
    values = [attack.max_qber(TS2, v) for v in np.linspace(0.02, 1.0, 50)]
    assert np.all(np.diff(values) >= -2e-6)

def test_max_qber_is_a_root():
    for protocol, v in [(TS2, 1.0), (TS2, 0.9), (TS3, 0.95)]:
        q = attack.max_qber(protocol, v)
        assert attack.delta_i(protocol, q - 1e-5, v) > 0
        assert attack.delta_i(protocol, q + 1e-5, v) < 0

def test_three_state_geometry():
    g = attack.three_state_geometry(0.05, 1.0)
    assert np.cos(g.phi) == pytest.approx(0.9, abs=1e-12)
    assert g.v13 == pytest.approx(0.62, abs=1e-12)
    assert attack.three_state_geometry(0.2, 1.0).v13 == 0.0

def test_unitarity_holds_by_construction():
    rng = np.random.RandomState(3)
    for _ in range(50):
        one, two = attack.eve_output_states(random_attack(rng))
        assert abs(np.linalg.norm(one) - 1) < 1e-12
        assert abs(np.linalg.norm(two) - 1) < 1e-12
        assert abs(np.vdot(one, two)) < 1e-12

def test_purification_symmetry():
    rng = np.random.RandomState(4)
    for _ in range(100):
        p = random_attack(rng)
        rho = linalg.projector(attack.sifted_joint_state(p))
        s_ab = linalg.von_neumann_entropy(linalg.partial_trace(rho, [2, 2, 4], [0, 1]))
        s_e = linalg.von_neumann_entropy(linalg.partial_trace(rho, [2, 2, 4], 2))
        assert abs(s_ab - s_e) < 1e-10
        assert abs(s_e - attack.attack_point(p).s_rho_e) < 1e-10

def test_reduced_state_is_projected_state():
    p = AttackParams.from_mean(0.08, 0.02, 0.7, 0.4)
    rho = linalg.projector(attack.sifted_joint_state(p))
    rho_ab = linalg.partial_trace(rho, [2, 2, 4], [0, 1])
    # A (x) B ordering is |11>, |12>, |21>, |22>
    order = [0, 3, 1, 2]
    np.testing.assert_allclose(rho_ab[np.ix_(order, order)], attack.rho_ab_projected(p), atol=1e-12)

def test_holevo_from_conditional_states():
    p = AttackParams.from_mean(0.06, 0.01, 0.8, 0.5)
    rho_e1, rho_e2 = attack.eve_conditional_states(p)
    rho = linalg.projector(attack.sifted_joint_state(p))
    s_e = linalg.von_neumann_entropy(linalg.partial_trace(rho, [2, 2, 4], 2))
    chi = s_e - 0.5 * linalg.von_neumann_entropy(rho_e1) - 0.5 * linalg.von_neumann_entropy(rho_e2)
    assert abs(chi - attack.attack_point(p).chi_ae) < 1e-10

def test_asymmetric_attack_point_below_symmetric():
    sym = attack.attack_point(AttackParams.from_mean(0.05, 0.0, 0.9))
    asym = attack.attack_point(AttackParams.from_mean(0.05, 0.03, 0.9))
    assert asym.s_rho_e < sym.s_rho_e
