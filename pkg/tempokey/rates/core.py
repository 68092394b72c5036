from tempokey import error, logger
from tempokey.protocols.kinds import ProtocolKind


class RateModel(object):
    r"""A source of pulses whose secret-key rate can be evaluated on a
    channel.

    The main API methods that users of this class need to know are:

        signed_rate
        rate
        check

    ``signed_rate`` may go negative beyond the secure distance, which is
    what threshold searches need; ``rate`` clamps it for reporting.
    """
    # Set this in ALL subclasses
    source = None
    protocols = tuple(ProtocolKind)

    spec = None

    def signed_rate(self, channel, protocol):
        """Secret bits per emitted pulse, negative when insecure.

        Args:
            channel (ChannelParams): the link, at its own length
            protocol (ProtocolKind): the coding protocol

        Returns:
            rate (float)
        """
        raise NotImplementedError

    def rate(self, channel, protocol):
        return max(0.0, self.signed_rate(channel, protocol))

    def check(self, channel, protocol):
        """Validate once before a sweep or a threshold search."""
        protocol = ProtocolKind.parse(protocol)
        if protocol not in self.protocols:
            raise error.ValidationError('{} does not support {} (supported: {})'.format(
                self, protocol.value, [p.value for p in self.protocols]))
        return protocol

    def describe(self):
        """Parameters echoed into reports."""
        return {'source': self.source.value}

    def __str__(self):
        if self.spec is None:
            return '<{} instance>'.format(type(self).__name__)
        return '<{}<{}>>'.format(type(self).__name__, self.spec.id)


def warn_imperfect_visibility(model, channel):
    if channel.v_a < 1:
        logger.warn('%s assumes a perfect source visibility; V_A=%s is ignored', model, channel.v_a)
