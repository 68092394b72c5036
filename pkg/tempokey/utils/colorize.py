"""ANSI colour for log lines. Setting ``NO_COLOR`` (https://no-color.org)
to any non-empty value turns it off.
"""
import os

COLORS = ('gray', 'red', 'green', 'yellow', 'blue', 'magenta', 'cyan', 'white', 'crimson')


def color_enabled():
    return not os.environ.get('NO_COLOR')


def colorize(string, color, bold=False, highlight=False):
    """``string`` wrapped in the escape codes for ``color``, or unchanged
    when colour is disabled.
    """
    # six is only needed once something is actually logged
    import six

    if color not in COLORS:
        raise KeyError('Unknown color {}, expected one of {}'.format(color, list(COLORS)))
    if not color_enabled():
        return string
    codes = [str(30 + COLORS.index(color) + (10 if highlight else 0))]
    if bold:
        codes.append('1')
    return six.u('\x1b[{}m{}\x1b[0m').format(';'.join(codes), string)
