from tempokey.channel.fiber import (
    ChannelParams,
    bob_visibility,
    depolarize,
    depolarized_error,
    depolarized_fidelity,
    qber,
    qber_from_transmission,
    transmission,
)
