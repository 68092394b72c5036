from tempokey.security.attack import (
    AttackParams,
    SecurityPoint,
    ThreeStateAttackGeometry,
    attack_point,
    delta_i,
    equivalent_transmission,
    eve_conditional_states,
    eve_output_states,
    full_information_qber,
    gamma_eigenvalues,
    holevo_chi_ae,
    key_coherence,
    lambda_eigenvalues,
    max_qber,
    mutual_info_ab,
    rho_ab_projected,
    s_rho_e_max,
    secret_rate,
    sifted_joint_state,
    three_state_geometry,
)
from tempokey.security.optimizer import AttackOptimum, optimize_attack_bruteforce
