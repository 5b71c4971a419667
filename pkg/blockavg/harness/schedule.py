# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Schedules map the configured points to times. Rounding to a step is
half-up: the point ``t_*(beta) = t_ent + beta t_w`` is recorded at
``floor(t_*(beta) + 1/2)`` """

from __future__ import annotations

import math

from dataclasses import dataclass
from typing import Optional, Tuple

from blockavg.exceptions import ConfigurationError
from blockavg.io.write.strategy import StartRelativeStrategy, Strategy, TimeStrategy
from blockavg.math import round_half_up
from blockavg.size import BlockSizeSpec, timescales

from .config import ScheduleConfig


@dataclass(frozen=True)
class Schedule:
    """The resolved schedule of an experiment

    Attributes
    ----------
    labels
        The abscissa of every point (a time, a beta or a multiplier)
    times
        The absolute time of every point, ``None`` for start-relative
        schedules
    offsets
        The offset of every point from the first hit of the initial site,
        ``None`` for absolute schedules
    """

    labels: Tuple[float, ...]
    times: Optional[Tuple[int, ...]] = None
    offsets: Optional[Tuple[int, ...]] = None

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def relative(self) -> bool:
        return self.offsets is not None

    def strategy(self) -> Strategy:
        """A fresh record strategy for one replica"""
        if self.offsets is not None:
            return StartRelativeStrategy(self.offsets)

        return TimeStrategy(self.times)  # type: ignore

    def is_monotone(self) -> bool:
        steps = self.offsets if self.offsets is not None else self.times
        return all(a < b for a, b in zip(steps, steps[1:]))  # type: ignore


def build_schedule(config: ScheduleConfig, spec: BlockSizeSpec) -> Schedule:
    """Resolve ``config`` against the timescales of ``spec``"""
    kind = config.kind

    if kind == "times":
        times = tuple(int(t) for t in config.values)
        if min(times) < 0:
            raise ConfigurationError(
                f"[schedule].times has a negative time {min(times)}"
            )
        return Schedule(tuple(float(t) for t in times), times=times)
    elif kind == "grid":
        start, stop, step = config.grid
        times = tuple(range(start, stop + 1, step))
        if not times:
            raise ConfigurationError("[schedule] grid is empty")
        return Schedule(tuple(float(t) for t in times), times=times)

    ts = timescales(spec)
    if kind == "window":
        times = tuple(round_half_up(ts.t_star(beta)) for beta in config.values)
    elif kind == "scaled":
        scale = getattr(ts, config.scale)
        times = tuple(round_half_up(s * scale) for s in config.values)
    else:
        # t_bar(beta) = beta n / k, with k the mean block size if random
        offsets = tuple(math.floor(ts.t_bar(beta)) for beta in config.values)
        if min(offsets) < 0:
            raise ConfigurationError("[schedule].betas must be nonnegative")
        return Schedule(config.values, offsets=offsets)

    if min(times) < 0:
        raise ConfigurationError(
            f"[schedule] resolves to negative times {min(times)} for {spec!r}"
        )

    return Schedule(config.values, times=times)
