# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import abc
import logging
import math

import numpy as np

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Tuple

from blockavg.engine import BlockSample
from blockavg.exceptions import ResourceCapError, UnsupportedModeError

logger = logging.getLogger(__name__)

#: Log-sizes are bucketed on a grid of this spacing (in nats)
LOG_QUANTUM = 1e-12

#: Largest population the literal ledger accepts
LITERAL_MAX_N = 64


def default_floor(n: int) -> float:
    """The default dust floor :math:`1/(n 2^{20})`"""
    return 1 / (n * 2**20)


def _quantize(log_size: float) -> int:
    return int(round(log_size / LOG_QUANTUM))


class PileLedger(abc.ABC):
    r"""The piles :math:`\zeta_t` carried by the sites.

    Every averaging event on a block of size :math:`k` splits each pile on the
    block into :math:`k` piles of a :math:`k`-th of its size, one for each
    site of the block. Piles smaller than :attr:`floor_threshold` are merged
    into the per-site :attr:`dust`

    Attributes
    ----------
    n
        The population size
    floor_threshold
        The pile size below which the mass is only tracked as dust
    dust
        The mass of the discarded piles, per site
    """

    def __init__(self, n: int, floor_threshold: float):
        self.n = n
        self.floor_threshold = floor_threshold
        self.dust = np.zeros(n)

    @abc.abstractmethod
    def step(self, block: BlockSample):
        """Split the piles on ``block``"""
        pass

    @abc.abstractmethod
    def iter_piles(self) -> Iterator[Tuple[int, float, int]]:
        """Yield ``(site, log_size, count)`` for the live piles"""
        pass

    def masses(self) -> np.ndarray:
        """The per-site total mass, piles and dust"""
        masses = [[] for _ in range(self.n)]  # type: List[List[float]]
        for site, log_size, count in self.iter_piles():
            masses[site].append(count * math.exp(log_size))

        return np.array(
            [math.fsum(m) + d for m, d in zip(masses, self.dust)], dtype=float
        )

    def pile_mass(self) -> float:
        """The total mass held in live piles"""
        return math.fsum(
            count * math.exp(log_size) for _, log_size, count in self.iter_piles()
        )

    def dust_mass(self) -> float:
        return math.fsum(self.dust)

    @abc.abstractmethod
    def bucket_count(self) -> int:
        pass


class AggregateLedger(PileLedger):
    """A :class:`PileLedger` keeping, for every site, how many piles of each
    size it holds.

    The fragments of a split are exchangeable, so which fragment lands on
    which site does not change the aggregate: the piles of the block are
    pooled and every site of the block receives one fragment of each pooled
    pile. Sizes are kept in the log domain on a grid of spacing
    :data:`LOG_QUANTUM`, which merges equal sizes exactly whatever the
    order in which the divisions occurred

    >>> ledger = AggregateLedger.dirac(4)
    >>> ledger.step(BlockSample.of(0, 1))
    >>> [round(m, 12) for m in ledger.masses()]
    [0.5, 0.5, 0.0, 0.0]
    """

    def __init__(self, n: int, floor_threshold: Optional[float] = None):
        super().__init__(
            n, floor_threshold if floor_threshold else default_floor(n)
        )

        # site -> {quantized log size: [log size, count]}
        self._buckets: List[Dict[int, List]] = [{} for _ in range(n)]
        self._floor_key = _quantize(math.log(self.floor_threshold))

    @classmethod
    def dirac(
        cls, n: int, x0: int = 0, floor_threshold: Optional[float] = None
    ) -> AggregateLedger:
        ledger = cls(n, floor_threshold)
        ledger.add(x0, 0.0)

        return ledger

    @classmethod
    def from_masses(
        cls, masses: np.ndarray, floor_threshold: Optional[float] = None
    ) -> AggregateLedger:
        """One pile per site carrying positive mass"""
        ledger = cls(len(masses), floor_threshold)
        for x in np.flatnonzero(masses):
            ledger.add(int(x), math.log(masses[x]))

        return ledger

    def add(self, site: int, log_size: float, count: int = 1):
        key = _quantize(log_size)
        if key < self._floor_key:
            self.dust[site] += count * math.exp(log_size)
            return

        bucket = self._buckets[site].setdefault(key, [log_size, 0])
        bucket[1] += count

    def step(self, block: BlockSample):
        sites = block.sites
        k = len(sites)
        log_k = math.log(k)
        key_k = _quantize(log_k)

        pooled: Dict[int, List] = {}
        for x in sites:
            for key, (log_size, count) in self._buckets[x].items():
                bucket = pooled.setdefault(key, [log_size, 0])
                bucket[1] += count

        dust = math.fsum(self.dust[sites])
        for key, (log_size, count) in list(pooled.items()):
            if key - key_k < self._floor_key:
                dust += count * math.exp(log_size)
                del pooled[key]

        split = {
            key - key_k: [log_size - log_k, count]
            for key, (log_size, count) in pooled.items()
        }
        for x in sites:
            self._buckets[x] = {key: list(value) for key, value in split.items()}
        self.dust[sites] = dust / k

    def iter_piles(self) -> Iterator[Tuple[int, float, int]]:
        for site, buckets in enumerate(self._buckets):
            for log_size, count in buckets.values():
                yield site, log_size, count

    def bucket_count(self) -> int:
        return sum(len(b) for b in self._buckets)


@dataclass
class Pile:
    """A pile with an identity, used by the :class:`LiteralLedger`"""

    id: int
    site: int
    log_size: float


class LiteralLedger(PileLedger):
    """A :class:`PileLedger` where every pile is an object with an identity.

    On a block of size :math:`k` every pile is split into :math:`k` labeled
    fragments that are dealt to the sites of the block by an independent
    uniform permutation. It is meant for oracle tests at small :math:`n`

    Parameters
    ----------
    n
        The population size, at most :data:`LITERAL_MAX_N`
    rng
        The generator of the permutations
    max_piles
        Refuse to hold more live piles than this
    """

    def __init__(self, n: int, rng: np.random.Generator, max_piles: int = 2**20):
        if n > LITERAL_MAX_N:
            raise UnsupportedModeError(
                f"The literal ledger supports n <= {LITERAL_MAX_N}, got {n}"
            )

        super().__init__(n, 0.0)
        self.rng = rng
        self.max_piles = max_piles
        self.piles: Dict[int, Pile] = {}
        self._by_site: List[List[int]] = [[] for _ in range(n)]
        self._next_id = 0

    @classmethod
    def from_masses(cls, masses: np.ndarray, rng: np.random.Generator) -> LiteralLedger:
        ledger = cls(len(masses), rng)
        for x in np.flatnonzero(masses):
            ledger._new_pile(int(x), math.log(masses[x]))

        return ledger

    def _new_pile(self, site: int, log_size: float) -> Pile:
        pile = Pile(self._next_id, site, log_size)
        self._next_id += 1
        self.piles[pile.id] = pile
        self._by_site[site].append(pile.id)

        return pile

    def step(self, block: BlockSample) -> Dict[int, List[Pile]]:
        """Split the piles on ``block``.

        Returns
        -------
        splits
            Maps the id of every split pile to its fragments, in label order
        """
        sites = block.sites
        k = len(sites)
        log_k = math.log(k)

        old = [pid for x in sites for pid in self._by_site[x]]
        if len(self.piles) + (k - 1) * len(old) > self.max_piles:
            raise ResourceCapError(
                f"The literal ledger would exceed {self.max_piles} piles"
            )

        for x in sites:
            self._by_site[x] = []

        splits: Dict[int, List[Pile]] = {}
        for pid in old:
            pile = self.piles.pop(pid)
            targets = sites[self.rng.permutation(k)]
            splits[pid] = [
                self._new_pile(int(x), pile.log_size - log_k) for x in targets
            ]

        return splits

    def iter_piles(self) -> Iterator[Tuple[int, float, int]]:
        for pile in self.piles.values():
            yield pile.site, pile.log_size, 1

    def pile_at(self, pid: int) -> Pile:
        return self.piles[pid]

    def bucket_count(self) -> int:
        return len(self.piles)


def ledger_step(ledger: PileLedger, block: BlockSample) -> PileLedger:
    ledger.step(block)

    return ledger
