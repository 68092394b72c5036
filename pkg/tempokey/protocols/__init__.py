from tempokey.protocols.kinds import AliceSymbol, ProtocolKind, SYMBOLS
from tempokey.protocols.encoding import (
    bob_slot_probabilities,
    coherence_symbols,
    encode_pulse,
    interferometer_delay,
    joint_state,
    key_slots,
    monitored_slot,
    occupied_slots,
    project_bob,
    sending_probabilities,
)
from tempokey.protocols.interferometer import (
    InterferometerOutput,
    fringe_visibility,
    interferometer_output,
    interferometer_probabilities,
    visibility_from_counts,
    visibility_standard_error,
)
