# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np

from blockavg.data import StreamPurpose
from blockavg.harness.rng import RandomStreams, stream


def test_stream_reproducible():
    a = stream(3, 1, StreamPurpose.SUBSETS).random(10)
    b = stream(3, 1, StreamPurpose.SUBSETS).random(10)

    assert np.array_equal(a, b)


def test_streams_differ():
    draws = {
        (seed, replica, purpose): stream(seed, replica, purpose).random()
        for seed in (0, 1)
        for replica in (0, 1)
        for purpose in StreamPurpose
    }

    assert len(set(draws.values())) == len(draws)


def test_replica_order_irrelevant():
    forward = [RandomStreams(5, r).sizes.random() for r in range(4)]
    backward = [RandomStreams(5, r).sizes.random() for r in reversed(range(4))]

    assert forward == backward[::-1]


def test_streams_are_cached():
    streams = RandomStreams(0, 2)

    assert streams.chunks is streams[StreamPurpose.CHUNKS]
    assert streams.ledger is not streams.direct
    assert streams.sizes is not streams.subsets
