# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import numpy as np

from typing import Dict

from blockavg.data import StreamPurpose


def stream(seed: int, replica: int, purpose: StreamPurpose) -> np.random.Generator:
    """A counter-based generator keyed by ``(seed, replica, purpose)``.

    Distinct keys give statistically independent streams whatever the order
    in which the replicas are executed

    >>> a = stream(1, 0, StreamPurpose.SIZES).random()
    >>> b = stream(1, 0, StreamPurpose.SIZES).random()
    >>> a == b
    True
    """
    sequence = np.random.SeedSequence(seed, spawn_key=(replica, int(purpose)))

    return np.random.Generator(np.random.Philox(sequence))


class RandomStreams:
    """The generators of one replica, one per :class:`~.StreamPurpose`

    Attributes
    ----------
    seed
        The master seed of the experiment
    replica
        The replica id
    """

    def __init__(self, seed: int, replica: int = 0):
        self.seed = seed
        self.replica = replica
        self._streams: Dict[StreamPurpose, np.random.Generator] = {}

    def __getitem__(self, purpose: StreamPurpose) -> np.random.Generator:
        if purpose not in self._streams:
            self._streams[purpose] = stream(self.seed, self.replica, purpose)

        return self._streams[purpose]

    @property
    def sizes(self) -> np.random.Generator:
        return self[StreamPurpose.SIZES]

    @property
    def subsets(self) -> np.random.Generator:
        return self[StreamPurpose.SUBSETS]

    @property
    def chunks(self) -> np.random.Generator:
        return self[StreamPurpose.CHUNKS]

    @property
    def direct(self) -> np.random.Generator:
        return self[StreamPurpose.DIRECT]

    @property
    def ledger(self) -> np.random.Generator:
        return self[StreamPurpose.LEDGER]
