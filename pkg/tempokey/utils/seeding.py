"""Seed handling for every random stream in the package.

Streams are numpy ``Generator`` objects over the Philox counter-based bit
generator. A run seed is hashed before use, and work split into blocks
gets one independent stream per block index, so a block's draws do not
depend on which process (or in which order) it is evaluated.
"""
import hashlib
import os

import numpy as np
from six import integer_types

from tempokey import error

BIT_GENERATOR = 'Philox-4x64-10'


def validate_seed(seed):
    if seed is not None and not (isinstance(seed, integer_types) and not isinstance(seed, bool) and 0 <= seed < 2**64):
        raise error.ValidationError('Seed must be an unsigned 64-bit integer or omitted, not {}'.format(seed))
    return seed


def np_random(seed=None):
    """Returns ``(generator, seed)``; ``seed`` is the one actually used."""
    validate_seed(seed)
    seed = create_seed(seed)
    rng = np.random.Generator(np.random.Philox(key=hash_seed(seed, max_bytes=16)))
    return rng, seed


def block_random(seed, block):
    """Stream for pulse block ``block`` of the run seeded with ``seed``."""
    validate_seed(seed)
    if not (isinstance(block, integer_types) and block >= 0):
        raise error.ValidationError('Block index must be a non-negative integer, not {}'.format(block))
    key = hash_seed('{}/{}'.format(seed, block), max_bytes=16)
    return np.random.Generator(np.random.Philox(key=key))


def hash_seed(seed=None, max_bytes=8):
    """Hash a seed with SHA-512 before it reaches a bit generator.

    Neighbouring seeds (0, 1, 2, ...) and neighbouring block indices
    would otherwise give keys that differ in a handful of bits; hashing
    removes any simple correlation between them.

    Args:
        seed (Optional[int, str]): None seeds from an operating system specific randomness source.
        max_bytes: Maximum number of bytes to use in the hashed seed.
    """
    if seed is None:
        seed = create_seed(max_bytes=max_bytes)
    digest = hashlib.sha512(str(seed).encode('utf8')).digest()
    return _bigint_from_bytes(digest[:max_bytes])


def create_seed(a=None, max_bytes=8):
    """Create a strong random seed, or normalise a given one.

    Args:
        a (Optional[int, str]): None seeds from an operating system specific randomness source.
        max_bytes: Maximum number of bytes to use in the seed.
    """
    if a is None:
        a = _bigint_from_bytes(os.urandom(max_bytes))
    elif isinstance(a, str):
        a = a.encode('utf8')
        a += hashlib.sha512(a).digest()
        a = _bigint_from_bytes(a[:max_bytes])
    elif isinstance(a, integer_types):
        a = a % 2**(8 * max_bytes)
    else:
        raise error.ValidationError('Invalid type for seed: {} ({})'.format(type(a), a))
    return a


def _bigint_from_bytes(data):
    return int.from_bytes(data, byteorder='little')
