"""Grid search over Eve's attack parameters.

Checks the closed forms in ``attack`` without assuming them: the
entropy Eve's ancilla can carry is maximised over the asymmetry dQ and the
split of the required key-slot coherence between the two overlaps,
V = F s_1122 + Q s_1221.
"""
from collections import namedtuple

import numpy as np

from tempokey import error, logger
from tempokey.protocols.kinds import ProtocolKind
from tempokey.quantum import linalg
from tempokey.security.attack import ATOL, AttackParams, ThreeStateAttackGeometry, gamma_eigenvalues

MIN_RESOLUTION = 50

AttackOptimum = namedtuple('AttackOptimum', ['params', 's_max', 'dq_step', 's_step', 'geometry'])


def _odd(n):
    return n if n % 2 else n + 1


def _coherence_grid(Q, v_target, n):
    F = 1.0 - Q
    if Q == 0:
        return np.linspace(-1.0, 1.0, n)
    lo = max(-1.0, (v_target - F) / Q)
    hi = min(1.0, (v_target + F) / Q)
    if lo > hi + ATOL / Q:
        raise error.InfeasibleConstraint('No overlaps reach visibility {} at Q={}'.format(v_target, Q))
    # rounding can push lo just past hi when the overlaps are pinned at 1
    return np.linspace(min(lo, hi), hi, n)


def _search(Q, v_target, n):
    """Best (S, dQ, s_1122, s_1221, dq_step, s_step) at fixed visibility."""
    F = 1.0 - Q
    m = min(Q, 1.0 - Q)
    dq = np.linspace(-m, m, _odd(n)) if m > 0 else np.zeros(1)
    s1221 = _coherence_grid(Q, v_target, n)
    s1122 = np.clip((v_target - Q * s1221) / F, -1.0, 1.0)

    dq_grid, s_idx = np.meshgrid(dq, np.arange(s1221.size), indexing='ij')
    entropies = linalg.shannon_entropy(
        gamma_eigenvalues(F, Q, dq_grid, s1122[s_idx], s1221[s_idx]))
    # first occurrence wins ties, so the result does not depend on scheduling
    best = int(np.argmax(entropies))
    i, j = np.unravel_index(best, entropies.shape)
    dq_step = dq[1] - dq[0] if dq.size > 1 else 0.0
    s_step = s1221[1] - s1221[0] if s1221.size > 1 else 0.0
    return float(entropies[i, j]), float(dq[i]), float(s1122[j]), float(s1221[j]), dq_step, s_step


def optimize_attack_bruteforce(protocol, Q, v_target, grid_resolution=200):
    """Maximise S(rho_E) on a grid.

    ``v_target`` is the key-slot coherence V_12 for the two time-slots and
    completed protocols, and the source visibility V_A for the three
    time-slots protocol, where the ancilla angle between |11> and |33> is
    searched as well (both at angle phi from |22>, cos phi = (F - Q) V_A).
    """
    protocol = ProtocolKind.parse(protocol)
    if grid_resolution < MIN_RESOLUTION:
        raise error.ValidationError('grid_resolution must be >= {}, got {}'.format(MIN_RESOLUTION, grid_resolution))
    if not 0 <= Q <= 0.5:
        raise error.ValidationError('Q must lie in [0, 1/2], got {}'.format(Q))
    if v_target > 1:
        raise error.InfeasibleConstraint('Visibility {} cannot be reached by any attack'.format(v_target))
    if v_target < 0:
        raise error.ValidationError('Visibility must be >= 0, got {}'.format(v_target))

    if protocol is not ProtocolKind.TS3:
        s, dq, s1122, s1221, dq_step, s_step = _search(Q, v_target, grid_resolution)
        return AttackOptimum(AttackParams.from_mean(Q, dq, s1122, s1221), s, dq_step, s_step, None)

    cos_phi = (1.0 - 2.0 * Q) * v_target
    sin2_phi = 1.0 - cos_phi ** 2
    phi = float(np.arccos(cos_phi))
    best = None
    for theta in np.linspace(0.0, np.pi, grid_resolution + 1):
        # |11> and |33> on a cone of half-angle phi around |22>
        v13 = cos_phi ** 2 + sin2_phi * np.cos(theta)
        found = _search(Q, abs(v13), grid_resolution)
        if best is None or found[0] > best[0][0]:
            best = (found, v13)
    (s, dq, s1122, s1221, dq_step, s_step), v13 = best
    logger.debug('3TS optimum at Q=%s: <11|33>=%.6f, S=%.6f', Q, v13, s)
    return AttackOptimum(AttackParams.from_mean(Q, dq, s1122, s1221), s, dq_step, s_step,
                         ThreeStateAttackGeometry(phi=phi, v13=float(v13)))
