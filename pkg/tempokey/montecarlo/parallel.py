"""Fan pulse blocks out to worker processes.

Blocks carry their own random streams, so the result of a run does not
depend on how many workers evaluate it or in which order they finish.
"""
import multiprocessing as mp

from tempokey import logger

__all__ = ['CloudpickleWrapper', 'run_blocks']


class CloudpickleWrapper(object):
    """Ships closures (which plain pickle refuses) to worker processes."""

    def __init__(self, fn):
        self.fn = fn

    def __getstate__(self):
        import cloudpickle
        return cloudpickle.dumps(self.fn)

    def __setstate__(self, ob):
        import pickle
        self.fn = pickle.loads(ob)

    def __call__(self, *args, **kwargs):
        return self.fn(*args, **kwargs)


_worker_fn = None


def _init_worker(wrapped):
    global _worker_fn
    _worker_fn = wrapped


def _run_block(block):
    return _worker_fn(block)


def run_blocks(block_fn, n_blocks, num_workers=1, context=None):
    """``[block_fn(0), ..., block_fn(n_blocks - 1)]``, in block order.

    Args:
        block_fn (callable): evaluates one block index; may be a closure
        n_blocks (int): number of blocks
        num_workers (int): worker processes; 1 evaluates in this process
        context (Optional[str]): multiprocessing start method
    """
    if num_workers <= 1 or n_blocks <= 1:
        return [block_fn(block) for block in range(n_blocks)]
    ctx = mp.get_context(context)
    workers = min(num_workers, n_blocks)
    logger.info('Evaluating %d blocks on %d workers', n_blocks, workers)
    pool = ctx.Pool(workers, initializer=_init_worker, initargs=(CloudpickleWrapper(block_fn),))
    try:
        return pool.map(_run_block, range(n_blocks), chunksize=1)
    finally:
        pool.close()
        pool.join()
