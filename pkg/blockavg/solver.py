# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import copy
import logging

from typing import Callable, List, Optional

from blockavg.data import StartKind
from blockavg.engine import BlockSample, BlockSampler, step
from blockavg.exceptions import DomainError, InvariantError, UnsupportedModeError
from blockavg.piles import PileLedger
from blockavg.size import BlockSizeSpec
from blockavg.state import MassDistribution

logger = logging.getLogger(__name__)

#: Masses are rescaled to unit total every this many steps
RENORMALIZE_EVERY = 2**16

#: Drift above which a renormalization is reported
DRIFT_TOL = 1e-12

#: Tolerance of the unit total mass asserted by :meth:`Simulation.check`
MASS_TOL = 1e-9

LedgerFactory = Callable[[MassDistribution], PileLedger]
BlockObserver = Callable[[BlockSample], None]


class Simulation:
    r"""This class runs one realization of the block average process.

    Parameters
    ----------
    sampler
        A :class:`~.BlockSampler` providing the blocks. It carries the block
        size law and the random state
    x0
        The site initially carrying the mass
    start
        :attr:`~.StartKind.DIRAC` puts all the mass on ``x0``.
        :attr:`~.StartKind.ETA_START` spreads it evenly on ``k`` sites,
        ``x0`` included, the state right after ``x0`` is hit for the first
        time by a block of deterministic size ``k``
    ledger_factory
        If given, builds a :class:`~.PileLedger` from the initial masses,
        which is then driven by the same blocks as the masses

    Attributes
    ----------
    t
        The number of averaging events so far
    eta
        The current :class:`~.MassDistribution`
    tau_start
        The first time the block contains ``x0``, ``None`` until it happens.
        It is 0 when the run starts from the spread configuration
    block
        The last block drawn
    """

    eta: MassDistribution
    t: int
    tau_start: Optional[int]
    block: Optional[BlockSample]
    ledger: Optional[PileLedger]

    def __init__(
        self,
        sampler: BlockSampler,
        x0: int = 0,
        start: StartKind = StartKind.DIRAC,
        ledger_factory: Optional[LedgerFactory] = None,
    ):
        self.sampler = sampler
        self.x0 = x0
        self.start = start
        self.ledger_factory = ledger_factory
        self.observers: List[BlockObserver] = []

    @property
    def spec(self) -> BlockSizeSpec:
        return self.sampler.spec

    @property
    def n(self) -> int:
        return self.sampler.n

    def init(self):
        """Set the initial configuration and reset the clock"""
        n = self.n

        self.t = 0
        self.block = None

        if self.start is StartKind.DIRAC:
            self.eta = MassDistribution.dirac(n, self.x0)
            self.tau_start = None
        else:
            k = self.spec.k
            if k is None:
                raise UnsupportedModeError(
                    "The spread start needs a deterministic block size"
                )
            self.eta = MassDistribution.start(n, k, self.x0)
            self.tau_start = 0

        self.ledger = None
        if self.ledger_factory is not None:
            self.ledger = self.ledger_factory(self.eta)

    def copy(self) -> Simulation:
        """This methods copies the :class:`Simulation` object into another,
        random state included"""

        return copy.deepcopy(self)

    def check(self):
        """Re-assert that the masses are nonnegative and sum to one within
        :data:`MASS_TOL`. Costs a pass over the masses"""
        try:
            self.eta.check(MASS_TOL)
        except DomainError as e:
            raise InvariantError(f"At t={self.t}: {e}") from e

    def step(self):
        """Draw a block and average the masses on it. The ledger and the
        observers see the same block"""
        self.eta, block = step(self.eta, self.sampler, inplace=True)
        self.t += 1
        self.block = block

        if self.tau_start is None and self.x0 in block:
            self.tau_start = self.t
            logger.debug(f"Initial site hit at t={self.t}")

        if self.ledger is not None:
            self.ledger.step(block)

        for observer in self.observers:
            observer(block)

        if self.t % RENORMALIZE_EVERY == 0:
            drift = self.eta.renormalize()
            if abs(drift) > DRIFT_TOL:
                logger.warning(f"Mass drift {drift:.3e} removed at t={self.t}")
