import math

import numpy as np


def json_encode_np(obj):
    """
    JSON can't serialize numpy types, so convert to pure python
    """
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    elif isinstance(obj, np.bool_):
        return bool(obj)
    elif isinstance(obj, np.integer):
        return int(obj)
    elif isinstance(obj, np.floating):
        return float(obj)
    elif isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError('Object of type {} is not JSON serializable'.format(type(obj).__name__))


def finite_or_label(value, label='unbounded'):
    """Infinite lengths are written as a string, JSON has no infinity."""
    if value is None:
        return None
    if isinstance(value, (float, np.floating)) and math.isinf(value):
        return label
    return value
