from tempokey.rates.registration import registry, register, make, spec
from tempokey.rates.core import RateModel
from tempokey.rates.pulse_rates import (
    DEFAULT_DECOY_MU,
    GainErrorPoint,
    SourceMode,
    coherent_detection_probs,
    gain_and_qber_mu,
    multiphoton_fraction,
    multiphoton_probability,
    optimal_faint_mu,
    rate_decoy,
    rate_faint,
    rate_single_photon,
    signed_rate_decoy,
    signed_rate_faint,
    signed_rate_single_photon,
    single_photon_gain,
)

register(
    id='SinglePhoton-v0',
    entry_point='tempokey.rates.models:SinglePhotonRate',
)

register(
    id='FaintNoDecoy-v0',
    entry_point='tempokey.rates.models:FaintPulseRate',
    kwargs={'mu': None},
)

register(
    id='FaintDecoy-v0',
    entry_point='tempokey.rates.models:DecoyStateRate',
    kwargs={'mu': DEFAULT_DECOY_MU},
)


def model_for(source, **kwargs):
    """Rate model registered for a SourceMode (or its name)."""
    return make(SourceMode.parse(source).model_id, **kwargs)
