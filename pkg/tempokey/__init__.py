from tempokey import error
from tempokey.version import VERSION as __version__

from tempokey.protocols.kinds import AliceSymbol, ProtocolKind
from tempokey.channel import ChannelParams
from tempokey.rates import make, spec, register, model_for
from tempokey.rates.pulse_rates import SourceMode
from tempokey import logger

__all__ = ["ProtocolKind", "AliceSymbol", "ChannelParams", "SourceMode", "make", "spec", "register", "model_for"]
