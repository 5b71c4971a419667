# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import abc
import logging
import time

from typing import Callable, Dict, List, Optional

from blockavg.io.record import TrajectoryEntry
from blockavg.solver import Simulation

from .strategy import Strategy

logger = logging.getLogger(__name__)

Probe = Callable[[Simulation], float]
Listener = Callable[[Simulation, List[int]], None]

#: How often (in steps) the wall clock is looked at
CLOCK_EVERY = 1024


class Writer(abc.ABC):
    """Runs a simulation applying a record strategy

    Child classes decide what a record keeps. The simulation re-asserts its
    invariants, see :meth:`~.Simulation.check`, before every record

    Attributes
    ----------
    strategy
        An instance of :class:`~.Strategy` that implements a record schedule
    simulation
        An instance of the simulation to manage the execution of
    t_max
        The number of steps after which the simulation must end
    probes
        Extra functionals of the simulation to record, by name
    wall_seconds
        Wall time budget of the run, 0 for unlimited
    listeners
        Callables notified with the simulation and the points after every
        record
    truncated
        True if the run ended before the schedule was exhausted
    dropped
        The schedule points that were never recorded
    """

    def __init__(
        self,
        strategy: Strategy,
        simulation: Simulation,
        t_max: int,
        probes: Optional[Dict[str, Probe]] = None,
        wall_seconds: float = 0,
    ):
        self.strategy = strategy
        self.simulation = simulation
        self.t_max = t_max
        self.probes = probes or {}
        self.wall_seconds = wall_seconds
        self.listeners: List[Listener] = []

        self.truncated = False
        self.dropped: List[int] = []

    @abc.abstractmethod
    def write(self, points: List[int]):
        """This methods records the simulation state for the given schedule
        points"""

        pass

    def _truncate(self, reason: str, always: bool = False):
        self.dropped = self.strategy.pending()
        self.truncated = always or bool(self.dropped)
        if self.truncated:
            logger.warning(
                f"Run stopped at t={self.simulation.t} ({reason}), "
                f"{len(self.dropped)} schedule points not recorded"
            )

    def solve(self):
        """This method steps the :class:`Simulation` until the schedule is
        exhausted or ``t_max`` is reached, recording the state when needed
        """
        logger.info("Solving...")

        simulation = self.simulation
        strategy = self.strategy
        deadline = time.monotonic() + self.wall_seconds if self.wall_seconds else 0

        while True:
            points = strategy.check_write(simulation)
            if strategy.should_write:
                simulation.check()
                self.write(points)
                for listener in self.listeners:
                    listener(simulation, points)

            if strategy.done(simulation):
                break

            if simulation.t >= self.t_max:
                self._truncate("t_max reached")
                break

            if (
                deadline
                and simulation.t % CLOCK_EVERY == 0
                and time.monotonic() > deadline
            ):
                self._truncate("wall time budget exhausted", always=True)
                break

            simulation.step()

        logger.debug(f"Done at t={simulation.t}")


class MemoryWriter(Writer):
    """This class records the functionals of the simulation state into a list
    of :class:`~.TrajectoryEntry`

    Attributes
    ----------
    entries
        The recorded entries
    """

    def __init__(
        self,
        strategy: Strategy,
        simulation: Simulation,
        t_max: int,
        probes: Optional[Dict[str, Probe]] = None,
        wall_seconds: float = 0,
    ):
        super().__init__(strategy, simulation, t_max, probes, wall_seconds)

        self.entries: List[TrajectoryEntry] = []

    def write(self, points: List[int]):
        self.entries.append(
            TrajectoryEntry.snapshot(self.simulation, points, self.probes)
        )

