import numpy as np

from tempokey import error
from tempokey.quantum import linalg

UNTOUCHED = -1


def categorical_rows(prob, u):
    """One categorical draw per row of ``prob``, driven by uniforms ``u``."""
    cs = np.cumsum(prob, axis=-1)
    cs[..., -1] = np.inf
    return (cs > u[..., None]).argmax(axis=-1)


class Eavesdropper(object):
    """Acts on each pulse before it enters the fiber.

    ``act`` receives the time-slot probabilities of every pulse in a block
    and one uniform draw per pulse, and returns the slot of the basis
    state resent in its place, or ``UNTOUCHED``.
    """
    name = None

    def act(self, slot_probs, u):
        raise NotImplementedError

    def __str__(self):
        return '<{}>'.format(type(self).__name__)


class NoEavesdropper(Eavesdropper):
    name = 'none'

    def act(self, slot_probs, u):
        return np.full(u.shape, UNTOUCHED, dtype=np.int64)


class InterceptResend(Eavesdropper):
    """Measures every pulse in the time basis and resends the outcome."""
    name = 'intercept-resend'

    def act(self, slot_probs, u):
        return categorical_rows(slot_probs, u)


def intercept_resend(pulse, rng_draw):
    """Collapse ``pulse`` onto a time slot with the Born probabilities.

    ``rng_draw`` is a uniform number in [0, 1) or a numpy Generator.
    """
    pulse = linalg.state_vector(pulse)
    u = rng_draw.random() if hasattr(rng_draw, 'random') else float(rng_draw)
    slot = int(categorical_rows(np.abs(pulse) ** 2, np.asarray(u)))
    return linalg.basis(pulse.size, slot)


eavesdroppers = {
    NoEavesdropper.name: NoEavesdropper,
    InterceptResend.name: InterceptResend,
}


def make_eavesdropper(name):
    if name is None:
        name = NoEavesdropper.name
    try:
        return eavesdroppers[name]()
    except KeyError:
        raise error.UnregisteredEavesdropper('No eavesdropper named {!r} (known: {})'.format(name, sorted(eavesdroppers)))
