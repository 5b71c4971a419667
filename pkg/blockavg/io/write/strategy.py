# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Record schedules: when the state of a :class:`~.Simulation` is recorded.
A schedule is a list of *points*; every point resolves to a time, possibly
only once the run has started (see :class:`StartRelativeStrategy`) """

from __future__ import annotations

import abc

from collections import defaultdict
from typing import Dict, List, Sequence, TYPE_CHECKING

if TYPE_CHECKING:
    from blockavg.solver import Simulation


class Strategy(abc.ABC):
    """The record strategy to use during a simulation.

    Attributes
    ----------
    should_write
        If True, the simulation state must be recorded at the current time
    """

    def __init__(self):
        self.should_write = False

    @abc.abstractmethod
    def check_write(self, simulation: Simulation) -> List[int]:
        """Updates :attr:`should_write` for the current time of
        ``simulation``.

        Returns
        -------
        points
            The indices of the schedule points due now
        """

        pass

    def done(self, simulation: Simulation) -> bool:
        """True when no point is left to record"""
        return False

    def pending(self) -> List[int]:
        """The points not recorded yet"""
        return []


class TimeStrategy(Strategy):
    """A :class:`Strategy` that records at an explicit list of times.

    Several points may resolve to the same time; they are recorded together

    Attributes
    ----------
    times
        The time of each point
    """

    def __init__(self, times: Sequence[int]):
        super().__init__()

        self.times = [int(t) for t in times]

        self._due: Dict[int, List[int]] = defaultdict(list)
        for point, t in enumerate(self.times):
            self._due[t].append(point)

    def check_write(self, simulation: Simulation) -> List[int]:
        points = self._due.pop(simulation.t, [])
        self.should_write = bool(points)

        return points

    def done(self, simulation: Simulation) -> bool:
        return not self._due

    def pending(self) -> List[int]:
        return sorted(p for points in self._due.values() for p in points)


class StartRelativeStrategy(TimeStrategy):
    """A :class:`TimeStrategy` whose times are offsets from the first time the
    initial site is hit by a block (``tau_start``). Nothing is recorded
    before that time is known

    Attributes
    ----------
    offsets
        The offset of each point
    """

    def __init__(self, offsets: Sequence[int]):
        super().__init__([])

        self.offsets = [int(s) for s in offsets]
        self._resolved = False

    def _resolve(self, tau_start: int):
        self.times = [tau_start + s for s in self.offsets]
        for point, t in enumerate(self.times):
            self._due[t].append(point)
        self._resolved = True

    def check_write(self, simulation: Simulation) -> List[int]:
        if not self._resolved:
            if simulation.tau_start is None:
                self.should_write = False
                return []
            self._resolve(simulation.tau_start)

        return super().check_write(simulation)

    def done(self, simulation: Simulation) -> bool:
        return self._resolved and super().done(simulation)

    def pending(self) -> List[int]:
        if not self._resolved:
            return list(range(len(self.offsets)))

        return super().pending()

