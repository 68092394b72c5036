import os
from contextlib import contextmanager


@contextmanager
def atomic_write(filepath, binary=False, fsync=False, newline=None):
    """ Writeable file object that atomically replaces `filepath` once the
    block exits without an exception. A reader never sees a half-written
    report.

    :param filepath: the file path to be opened
    :param binary: whether to open the file in a binary mode instead of textual
    :param fsync: whether to force write the file to disk
    :param newline: passed to open() in text mode ('' for csv writers)
    """

    tmppath = filepath + '~'
    while os.path.isfile(tmppath):
        tmppath += '~'
    try:
        if binary:
            handle = open(tmppath, 'wb')
        else:
            handle = open(tmppath, 'w', encoding='utf-8', newline=newline)
        with handle as file:
            yield file
            if fsync:
                file.flush()
                os.fsync(file.fileno())
        os.replace(tmppath, filepath)
    finally:
        try:
            os.remove(tmppath)
        except (IOError, OSError):
            pass
