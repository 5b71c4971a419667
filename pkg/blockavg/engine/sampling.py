# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import numpy as np

from dataclasses import dataclass
from typing import Optional, Set

from blockavg.size import BlockSizeSpec

#: Subsets of size at most ``n // FLOYD_RATIO`` are drawn with Floyd's
#: algorithm, larger ones by a partial shuffle of a persistent index pool
FLOYD_RATIO = 64


@dataclass(frozen=True)
class BlockSample:
    """A block of distinct sites, sorted increasingly

    Attributes
    ----------
    sites
        The sorted indices of the sites in the block
    """

    sites: np.ndarray

    @property
    def size(self) -> int:
        return len(self.sites)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.sites, x)
        return bool(i < len(self.sites) and self.sites[i] == x)

    @classmethod
    def of(cls, *sites: int) -> BlockSample:
        return cls(np.array(sorted(set(sites)), dtype=np.int64))


class _Buffer:
    """Hands out the draws of a vectorized sampler one at a time"""

    def __init__(self, draw, size: int):
        self._draw = draw
        self._size = size
        self._values = draw(size)
        self._i = 0

    def next(self):
        if self._i == self._size:
            self._values = self._draw(self._size)
            self._i = 0

        value = self._values[self._i]
        self._i += 1

        return value

    def take(self, m: int) -> np.ndarray:
        if self._i + m > self._size:
            head = self._values[self._i :]
            self._values = self._draw(max(self._size, m))
            self._size = len(self._values)
            self._i = m - len(head)
            return np.concatenate((head, self._values[: self._i]))

        values = self._values[self._i : self._i + m]
        self._i += m

        return values


class BlockSampler:
    r"""Draws the blocks :math:`A_t`: first the size from the block size law,
    then a uniformly random subset of that size.

    Sizes and subsets are drawn from two distinct generators, so that a run
    can be reproduced exactly from its streams. Draws are buffered

    Parameters
    ----------
    spec
        The block size law
    size_rng
        The generator of the block sizes
    subset_rng
        The generator of the subsets. Defaults to ``size_rng``
    buffer
        How many draws to vectorize at once
    """

    def __init__(
        self,
        spec: BlockSizeSpec,
        size_rng: np.random.Generator,
        subset_rng: Optional[np.random.Generator] = None,
        buffer: int = 8192,
    ):
        self.spec = spec
        self.n = spec.n
        self.size_rng = size_rng
        self.subset_rng = subset_rng if subset_rng is not None else size_rng

        self._k = spec.k
        self._support = spec.support
        self._probs = spec.probs

        # Draws go through methods so that copies draw from their own streams
        if self._k is None:
            self._sizes = _Buffer(self._draw_sizes, buffer)
        self._uniforms = _Buffer(self._draw_uniforms, buffer)

        self._pool: Optional[np.ndarray] = None

    def _draw_sizes(self, m: int) -> np.ndarray:
        return self.size_rng.choice(self._support, size=m, p=self._probs)

    def _draw_uniforms(self, m: int) -> np.ndarray:
        return self.subset_rng.random(m)

    def sample_size(self) -> int:
        if self._k is not None:
            return self._k

        return int(self._sizes.next())

    def sample_subset(self, k: int) -> np.ndarray:
        """A uniformly random sorted subset of size ``k`` of ``range(n)``"""
        n = self.n
        if k == n:
            return np.arange(n, dtype=np.int64)

        if k <= n // FLOYD_RATIO:
            return self._floyd(k)

        return self._partial_shuffle(k)

    def _floyd(self, k: int) -> np.ndarray:
        n = self.n
        u = self._uniforms.take(k)
        chosen: Set[int] = set()
        for i, j in enumerate(range(n - k, n)):
            t = int(u[i] * (j + 1))
            if t in chosen:
                chosen.add(j)
            else:
                chosen.add(t)

        return np.array(sorted(chosen), dtype=np.int64)

    def _partial_shuffle(self, k: int) -> np.ndarray:
        n = self.n
        if self._pool is None:
            self._pool = np.arange(n, dtype=np.int64)

        pool = self._pool
        u = self._uniforms.take(k)
        for i in range(k):
            j = i + int(u[i] * (n - i))
            pool[i], pool[j] = pool[j], pool[i]

        # The pool stays permuted: a uniform subset is drawn from any order
        return np.sort(pool[:k])

    def sample(self) -> BlockSample:
        return BlockSample(self.sample_subset(self.sample_size()))
