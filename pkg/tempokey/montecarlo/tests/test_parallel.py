from tempokey.montecarlo.parallel import CloudpickleWrapper, run_blocks


def test_blocks_come_back_in_order():
    offset = 10
    assert run_blocks(lambda b: b + offset, 6, num_workers=2) == list(range(10, 16))

def test_closure_survives_spawn():
    # spawned workers share no memory with this process
    offset = 7
    assert run_blocks(lambda b: b + offset, 4, num_workers=2, context='spawn') == [7, 8, 9, 10]

def test_serial_path():
    assert run_blocks(lambda b: b * b, 4) == [0, 1, 4, 9]

def test_wrapper_calls_through():
    assert CloudpickleWrapper(lambda x, y: x - y)(5, 3) == 2
