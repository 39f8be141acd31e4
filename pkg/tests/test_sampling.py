import numpy as np
import pytest

from plugins.common import InputError, Stream, TrialRunner, config, get_trial_runner, stream_generator


def count_zeros(rng: np.random.Generator, count: int) -> int:
    return int((rng.integers(0, 4, size=count) == 0).sum())


def test_stream_generator_is_deterministic():
    a = stream_generator(7, Stream.BLR, 3).integers(0, 2 ** 32, size=8)
    b = stream_generator(7, Stream.BLR, 3).integers(0, 2 ** 32, size=8)
    assert np.array_equal(a, b)


def test_streams_do_not_overlap():
    draws = {
        key: tuple(stream_generator(7, *key).integers(0, 2 ** 32, size=4).tolist())
        for key in [(Stream.BLR, 0), (Stream.BLR, 1), (Stream.GOWERS, 0), (Stream.BLR,)]
    }
    assert len(set(draws.values())) == len(draws)
    assert stream_generator(8, Stream.BLR, 0).integers(0, 2 ** 32) != draws[(Stream.BLR, 0)][0]


def test_negative_seed_rejected():
    with pytest.raises(InputError, match="seed must be non-negative"):
        stream_generator(-1)
    with pytest.raises(InputError, match="seed must be non-negative"):
        get_trial_runner().run_trials(-1, 10, count_zeros)
    with pytest.raises(InputError, match="trials must be >= 1"):
        get_trial_runner().run_trials(0, 0, count_zeros)


@pytest.mark.parametrize("trials", [1, 999, 1000, 1001, 12_345])
def test_run_trials_is_thread_independent(trials):
    config.block_size = 1000
    results = []
    for threads in (1, 2, 8):
        config.threads = threads
        results.append(get_trial_runner().run_trials(11, trials, count_zeros, stream=Stream.GENAVG))
    assert len(set(results)) == 1
    assert 0 <= results[0] <= trials


def test_run_trials_splits_into_blocks():
    config.block_size = 100
    sizes = []

    def record(rng, count):
        sizes.append(count)
        return count

    config.threads = 1
    assert get_trial_runner().run_trials(0, 350, record) == 350
    assert sizes == [100, 100, 100, 50]


def test_map_preserves_order(threads):
    assert get_trial_runner().map(lambda x: x * x, range(50)) == [x * x for x in range(50)]


def test_workers_follow_config():
    runner = TrialRunner.get_instance()
    config.threads = 3
    assert runner.workers == 3
    config.threads = None
    assert runner.workers >= 1
