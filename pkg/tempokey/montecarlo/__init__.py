from tempokey.montecarlo.eavesdroppers import (
    Eavesdropper,
    InterceptResend,
    NoEavesdropper,
    intercept_resend,
    make_eavesdropper,
)
from tempokey.montecarlo.parallel import CloudpickleWrapper, run_blocks
from tempokey.montecarlo.report import ComparisonReport, ComparisonRow, compare_to_analytic
from tempokey.montecarlo.simulator import SimConfig, SimResult, run_simulation
