from enum import Enum

from tempokey import error


class ProtocolKind(Enum):
    TS3 = 'TS3'
    TS2 = 'TS2'
    C3TS = 'C3TS'

    @classmethod
    def parse(cls, value):
        """Accept a member, its name, or the '3TS'/'2TS' spellings."""
        if isinstance(value, cls):
            return value
        aliases = {'3TS': cls.TS3, '2TS': cls.TS2}
        key = str(value).strip().upper()
        if key in aliases:
            return aliases[key]
        try:
            return cls[key]
        except KeyError:
            raise error.ValidationError('Unknown protocol {!r}, expected one of {}'.format(
                value, [p.value for p in cls]))

    @property
    def n_slots(self):
        return 2 if self is ProtocolKind.TS2 else 3

    @property
    def has_coherence_pulses(self):
        return self is not ProtocolKind.TS3


class AliceSymbol(Enum):
    BIT0 = 'bit0'
    BIT1 = 'bit1'
    COHERENCE = 'coherence'

    @property
    def is_bit(self):
        return self is not AliceSymbol.COHERENCE

    @property
    def bit(self):
        return {AliceSymbol.BIT0: 0, AliceSymbol.BIT1: 1}.get(self)


SYMBOLS = (AliceSymbol.BIT0, AliceSymbol.BIT1, AliceSymbol.COHERENCE)
