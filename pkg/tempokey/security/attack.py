"""Collective attacks on the sifted time-coding key.

Eve entangles each key-slot photon with an ancilla:

    |1>_B|0>_E -> sqrt(F1) |11>|1>_B + sqrt(Q1) |12>|2>_B
    |2>_B|0>_E -> sqrt(F2) |22>|2>_B + sqrt(Q2) |21>|1>_B

with the cross products <11|12>, <11|21>, <22|12>, <22|21> equal to zero,
leaving dQ = (Q1 - Q2)/2 and the real overlaps s_1122 = <11|22>,
s_1221 = <12|21> as her free parameters. Her information is bounded by
the Holevo quantity chi_AE = S(rho_E) - (h(Q1) + h(Q2))/2, and
S(rho_E) = S(rho_AB) because the joint A-B-E state is pure.

For the three time-slots protocol the key slots are 1 and 3 and the
coherence Bob can check sits between adjacent slots, so the overlap Eve
must respect is <11|33> = cos(2 phi) with cos(phi) = (F - Q) V_A.
"""
from collections import namedtuple

import numpy as np
from scipy import optimize

from tempokey import error, logger
from tempokey.protocols.kinds import ProtocolKind
from tempokey.quantum import linalg

ATOL = 1e-12

# Coarse step used to bracket the first zero of the key rate.
QBER_SCAN_STEP = 0.005
QBER_XTOL = 1e-6


_ATTACK_FIELDS = ('F1', 'Q1', 'F2', 'Q2', 's_1122', 's_1221')


class AttackParams(namedtuple('AttackParams', _ATTACK_FIELDS)):
    """Parameters of Eve's ancilla unitary (all overlaps real)."""
    __slots__ = ()

    def __new__(cls, F1, Q1, F2, Q2, s_1122, s_1221):
        self = super(AttackParams, cls).__new__(
            cls, float(F1), float(Q1), float(F2), float(Q2), float(s_1122), float(s_1221))
        self._validate()
        return self

    @classmethod
    def from_mean(cls, Q, dQ=0.0, s_1122=1.0, s_1221=None):
        """Build from the mean error Q and the asymmetry dQ. ``s_1221``
        defaults to ``s_1122``.
        """
        s_1221 = s_1122 if s_1221 is None else s_1221
        q1, q2 = Q + dQ, Q - dQ
        return cls(1.0 - q1, q1, 1.0 - q2, q2, s_1122, s_1221)

    def _validate(self):
        for name in ('F1', 'Q1', 'F2', 'Q2'):
            value = getattr(self, name)
            if not -ATOL <= value <= 1 + ATOL:
                raise error.ValidationError('{} must lie in [0, 1], got {}'.format(name, value))
        if abs(self.F1 + self.Q1 - 1) > ATOL or abs(self.F2 + self.Q2 - 1) > ATOL:
            raise error.ValidationError('Unnormalised attack: F1+Q1={}, F2+Q2={}'.format(
                self.F1 + self.Q1, self.F2 + self.Q2))
        for name in ('s_1122', 's_1221'):
            if abs(getattr(self, name)) > 1 + ATOL:
                raise error.ValidationError('|{}| must be <= 1, got {}'.format(name, getattr(self, name)))
        dq = abs(self.dQ)
        if dq > 0.5 + ATOL or not dq - ATOL <= self.Q <= 1 - dq + ATOL:
            raise error.ValidationError('Inconsistent error rates: Q={}, dQ={}'.format(self.Q, self.dQ))

    @property
    def F(self):
        return (self.F1 + self.F2) / 2

    @property
    def Q(self):
        return (self.Q1 + self.Q2) / 2

    @property
    def dQ(self):
        return (self.Q1 - self.Q2) / 2

    @property
    def symmetric(self):
        return abs(self.dQ) <= ATOL and abs(self.s_1122 - self.s_1221) <= ATOL

    @property
    def visibility(self):
        """Coherence between the key slots this attack leaves Bob."""
        return self.F * self.s_1122 + self.Q * self.s_1221


ThreeStateAttackGeometry = namedtuple('ThreeStateAttackGeometry', ['phi', 'v13'])
ThreeStateAttackGeometry.__doc__ = """Eve's ancilla states |11>, |22>, |33> for the three time-slots protocol.

phi is the angle both |11> and |33> make with |22>; v13 = <11|33> is the
smallest overlap that geometry allows (cos 2 phi), or 0 once phi passes
pi/4 and the two ancillas can be made orthogonal.
"""

SecurityPoint = namedtuple('SecurityPoint', [
    'qber', 'visibility_va', 's_rho_e', 'chi_ae', 'i_ab', 'delta_i', 'full_information'])
SecurityPoint.__doc__ = """Information balance per sifted bit, all in bits.

full_information is set when Eve's ancillas for the two key values are
orthogonal in the coherent subspace, i.e. she learns the whole key.
"""


def _check_probability(name, value, upper=1.0):
    arr = np.asarray(value, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0) or np.any(arr > upper):
        raise error.ValidationError('{} must lie in [0, {}], got {}'.format(name, upper, value))


def equivalent_transmission(Q):
    """Transmission of the depolarizing channel that produces error rate Q,
    the perfect channel Eve substitutes for the fiber.
    """
    return 1.0 - 2.0 * np.asarray(Q, dtype=float)


def rho_ab_projected(p):
    """Alice-Bob state on the sifted key slots, in the basis
    (|1_A 1_B>, |2_A 2_B>, |1_A 2_B>, |2_A 1_B>): a correct block and
    an error block.
    """
    if not isinstance(p, AttackParams):
        p = AttackParams(*p)
    rho = np.zeros((4, 4))
    c = np.sqrt(p.F1 * p.F2) * p.s_1122
    e = np.sqrt(p.Q1 * p.Q2) * p.s_1221
    rho[:2, :2] = [[p.F1, c], [c, p.F2]]
    rho[2:, 2:] = [[p.Q1, e], [e, p.Q2]]
    return rho / 2.0


def gamma_eigenvalues(F, Q, dQ, s_1122, s_1221):
    """Closed-form spectrum of ``rho_ab_projected``; broadcasts over arrays.

    Returns an array whose last axis holds the four eigenvalues, the
    correct-block pair first.
    """
    F, Q, dQ, s_1122, s_1221 = np.broadcast_arrays(*[np.asarray(x, dtype=float) for x in (F, Q, dQ, s_1122, s_1221)])
    if np.any(np.abs(F + Q - 1) > ATOL):
        raise error.ValidationError('F + Q must equal 1')
    if np.any(np.abs(dQ) > 0.5 + ATOL) or np.any(np.abs(dQ) > Q + ATOL) or np.any(Q > 1 - np.abs(dQ) + ATOL):
        raise error.ValidationError('Inconsistent error rates: Q={}, dQ={}'.format(Q, dQ))
    if np.any(np.abs(s_1122) > 1 + ATOL) or np.any(np.abs(s_1221) > 1 + ATOL):
        raise error.ValidationError('Scalar products must lie in [-1, 1]')
    d2 = dQ ** 2
    root_f = np.sqrt(np.clip((1 - s_1122 ** 2) * d2 + s_1122 ** 2 * F ** 2, 0, None))
    root_q = np.sqrt(np.clip((1 - s_1221 ** 2) * d2 + s_1221 ** 2 * Q ** 2, 0, None))
    gammas = np.stack([(F + root_f) / 2, (F - root_f) / 2, (Q + root_q) / 2, (Q - root_q) / 2], axis=-1)
    return np.clip(gammas, 0.0, None)


def lambda_eigenvalues(Q, v12):
    """Spectrum for a symmetric attack with s_1122 = s_1221 = v12."""
    Q = np.asarray(Q, dtype=float)
    v12 = np.asarray(v12, dtype=float)
    F = 1.0 - Q
    return np.stack([F * (1 + v12) / 2, F * (1 - v12) / 2, Q * (1 + v12) / 2, Q * (1 - v12) / 2], axis=-1)


def s_rho_e_max(Q, v12):
    """Largest entropy Eve's ancilla can reach at error rate Q when the
    key-slot coherence must stay v12.
    """
    _check_probability('Q', Q, upper=0.5)
    _check_probability('v12', v12)
    s = linalg.shannon_entropy(lambda_eigenvalues(Q, v12))
    return float(s) if np.ndim(s) == 0 else s


def holevo_chi_ae(Q1, Q2, s_rho_e):
    """chi_AE = S(rho_E) - (h(Q1) + h(Q2)) / 2."""
    return s_rho_e - 0.5 * (linalg.binary_entropy(Q1) + linalg.binary_entropy(Q2))


def mutual_info_ab(Q1, Q2):
    """I_AB = 1 - (h(Q1) + h(Q2)) / 2."""
    return 1.0 - 0.5 * (linalg.binary_entropy(Q1) + linalg.binary_entropy(Q2))


def three_state_geometry(Q, v_a):
    _check_probability('Q', Q, upper=0.5)
    _check_probability('V_A', v_a)
    cos_phi = (1.0 - 2.0 * Q) * v_a
    phi = float(np.arccos(np.clip(cos_phi, -1.0, 1.0)))
    v13 = 2.0 * cos_phi ** 2 - 1.0
    if v13 <= 0:
        v13 = 0.0
    return ThreeStateAttackGeometry(phi=phi, v13=v13)


def key_coherence(protocol, Q, v_a):
    """Coherence between the key slots Eve has to preserve, and whether the
    three-slot geometry already lets her separate the key values.
    Broadcasts over arrays.
    """
    protocol = ProtocolKind.parse(protocol)
    c = equivalent_transmission(Q) * np.asarray(v_a, dtype=float)
    if protocol is not ProtocolKind.TS3:
        return c, np.zeros(np.shape(c), dtype=bool)
    v13 = 2.0 * c ** 2 - 1.0
    full = v13 <= 0
    return np.where(full, 0.0, v13), full


def delta_i(protocol, Q, v_a):
    """Secret bits per sifted pulse, I_AB - chi_AE; may be negative.
    Broadcasts over arrays of Q and V_A.
    """
    _check_probability('Q', Q, upper=0.5)
    _check_probability('V_A', v_a)
    v, _ = key_coherence(protocol, Q, v_a)
    result = 1.0 - linalg.shannon_entropy(lambda_eigenvalues(Q, v))
    return float(result) if np.ndim(result) == 0 else result


def secret_rate(protocol, Q, v_a):
    """Full information balance for a symmetric optimal attack.

    Past the three-slot saturation point (``full_information`` set) Eve's
    states for the two key values are orthogonal and chi_AE is reported as
    1 bit, the whole key value, not capped at I_AB. delta_i is then
    -h(Q) and the rate stays clamped at zero downstream.
    """
    _check_probability('Q', Q, upper=0.5)
    _check_probability('V_A', v_a)
    Q, v_a = float(Q), float(v_a)
    v, full = key_coherence(protocol, Q, v_a)
    s = float(linalg.shannon_entropy(lambda_eigenvalues(Q, v)))
    chi = holevo_chi_ae(Q, Q, s)
    i_ab = mutual_info_ab(Q, Q)
    return SecurityPoint(qber=Q, visibility_va=v_a, s_rho_e=s, chi_ae=chi, i_ab=i_ab,
                         delta_i=i_ab - chi, full_information=bool(full))


def attack_point(params, v_a=None):
    """Information balance for an arbitrary, possibly asymmetric, attack."""
    if not isinstance(params, AttackParams):
        params = AttackParams(*params)
    s = linalg.entropy_of_spectrum(gamma_eigenvalues(params.F, params.Q, params.dQ, params.s_1122, params.s_1221))
    chi = holevo_chi_ae(params.Q1, params.Q2, s)
    i_ab = mutual_info_ab(params.Q1, params.Q2)
    return SecurityPoint(qber=params.Q, visibility_va=v_a, s_rho_e=s, chi_ae=chi, i_ab=i_ab,
                         delta_i=i_ab - chi, full_information=chi >= 1 - ATOL)


def max_qber(protocol, v_a):
    """Smallest error rate at which the secret rate reaches zero.

    Returns 0 when no key can be made even on an error-free channel.
    """
    protocol = ProtocolKind.parse(protocol)
    _check_probability('V_A', v_a)
    f = lambda q: delta_i(protocol, q, v_a)
    if f(0.0) <= 0:
        return 0.0
    grid = np.arange(QBER_SCAN_STEP, 0.5 + QBER_SCAN_STEP / 2, QBER_SCAN_STEP)
    lo = 0.0
    for hi in grid:
        if f(hi) <= 0:
            root = optimize.bisect(f, lo, float(hi), xtol=QBER_XTOL)
            logger.debug('max QBER for %s at V_A=%s: %.6f', protocol.value, v_a, root)
            return float(root)
        lo = float(hi)
    # unreachable: I_AB = 0 at Q = 1/2 while chi_AE >= 0
    raise error.Error('No zero of the secret rate found for {} at V_A={}'.format(protocol.value, v_a))


def full_information_qber(protocol, v_a):
    """Error rate from which Eve knows the key completely."""
    protocol = ProtocolKind.parse(protocol)
    _check_probability('V_A', v_a)
    if protocol is not ProtocolKind.TS3:
        return 0.5
    if v_a <= np.sqrt(0.5):
        return 0.0
    return (1.0 - np.sqrt(0.5) / v_a) / 2.0


# Explicit ancilla construction. Eve's space is spanned by e1..e4 with
# |11> = e1, |22> = s e1 + sqrt(1-s^2) e2, |12> = e3, |21> = t e3 + sqrt(1-t^2) e4.

def _ancilla_vectors(p):
    s, t = p.s_1122, p.s_1221
    e = np.eye(4)
    return {
        '11': e[0],
        '22': s * e[0] + np.sqrt(max(1 - s * s, 0.0)) * e[1],
        '12': e[2],
        '21': t * e[2] + np.sqrt(max(1 - t * t, 0.0)) * e[3],
    }


def eve_output_states(params):
    """The two attacked key states |1>_E and |2>_E on B (x) E."""
    if not isinstance(params, AttackParams):
        params = AttackParams(*params)
    v = _ancilla_vectors(params)
    b1, b2 = linalg.basis(2, 0), linalg.basis(2, 1)
    one = np.sqrt(params.F1) * np.kron(b1, v['11']) + np.sqrt(params.Q1) * np.kron(b2, v['12'])
    two = np.sqrt(params.F2) * np.kron(b2, v['22']) + np.sqrt(params.Q2) * np.kron(b1, v['21'])
    return one, two


def sifted_joint_state(params):
    """Pure state of Alice, Bob and Eve after the attack, on A (x) B (x) E
    with dimensions (2, 2, 4).
    """
    one, two = eve_output_states(params)
    return linalg.state_vector(np.sqrt(0.5) * (np.kron(linalg.basis(2, 0), one) + np.kron(linalg.basis(2, 1), two)))


def eve_conditional_states(params):
    """rho_E given each value of Alice's bit."""
    one, two = eve_output_states(params)
    return tuple(linalg.partial_trace(linalg.projector(ket), [2, 4], 1) for ket in (one, two))
