from tempokey.protocols.kinds import ProtocolKind
from tempokey.rates import pulse_rates
from tempokey.rates.core import RateModel, warn_imperfect_visibility
from tempokey.rates.pulse_rates import SourceMode

_TWO_SLOT_SECURITY = (ProtocolKind.TS2, ProtocolKind.C3TS)


class SinglePhotonRate(RateModel):
    """Ideal single-photon source."""
    source = SourceMode.SINGLE_PHOTON

    def signed_rate(self, channel, protocol):
        return pulse_rates.signed_rate_single_photon(channel, protocol)


class FaintPulseRate(RateModel):
    """Attenuated laser without decoy states.

    With ``mu=None`` the mean photon number is re-optimised at every
    length; a fixed ``mu`` reproduces a source set once at the factory.
    """
    source = SourceMode.FAINT_NO_DECOY
    protocols = _TWO_SLOT_SECURITY

    def __init__(self, mu=None, exact_multiphoton=False):
        self.mu = mu
        self.exact_multiphoton = exact_multiphoton

    def mu_at(self, channel):
        if self.mu is not None:
            return self.mu
        return pulse_rates.optimal_faint_mu(channel, self.exact_multiphoton)

    def signed_rate(self, channel, protocol):
        return pulse_rates.signed_rate_faint(channel, self.mu_at(channel), self.exact_multiphoton)

    def check(self, channel, protocol):
        protocol = super(FaintPulseRate, self).check(channel, protocol)
        warn_imperfect_visibility(self, channel)
        return protocol

    def describe(self):
        return {'source': self.source.value, 'mu': 'optimized' if self.mu is None else self.mu,
                'exact_multiphoton': self.exact_multiphoton}


class DecoyStateRate(RateModel):
    """Attenuated laser with asymptotic decoy-state estimation."""
    source = SourceMode.FAINT_DECOY
    protocols = _TWO_SLOT_SECURITY

    def __init__(self, mu=pulse_rates.DEFAULT_DECOY_MU):
        self.mu = mu

    def signed_rate(self, channel, protocol):
        return pulse_rates.signed_rate_decoy(channel, self.mu)

    def check(self, channel, protocol):
        protocol = super(DecoyStateRate, self).check(channel, protocol)
        warn_imperfect_visibility(self, channel)
        return protocol

    def describe(self):
        return {'source': self.source.value, 'mu': self.mu}
