# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import math

import pytest

from blockavg.exceptions import ConfigurationError
from blockavg.harness.config import ScheduleConfig
from blockavg.harness.schedule import build_schedule
from blockavg.io.write.strategy import StartRelativeStrategy, TimeStrategy
from blockavg.size import BlockSizeSpec, timescales


@pytest.fixture
def spec():
    yield BlockSizeSpec.deterministic(101, 2)


def test_times(spec):
    schedule = build_schedule(ScheduleConfig("times", values=(0, 5, 5)), spec)

    assert schedule.times == (0, 5, 5)
    assert schedule.labels == (0.0, 5.0, 5.0)
    assert len(schedule) == 3
    assert not schedule.relative
    assert not schedule.is_monotone()
    assert isinstance(schedule.strategy(), TimeStrategy)


def test_grid(spec):
    schedule = build_schedule(ScheduleConfig("grid", grid=(0, 10, 5)), spec)

    assert schedule.times == (0, 5, 10)
    assert schedule.is_monotone()


def test_empty_grid(spec):
    with pytest.raises(ConfigurationError):
        build_schedule(ScheduleConfig("grid", grid=(10, 5, 1)), spec)


def test_window(spec):
    betas = (-1.0, 0.0, 1.0)
    schedule = build_schedule(ScheduleConfig("window", values=betas), spec)
    ts = timescales(spec)

    assert schedule.labels == betas
    assert schedule.times == tuple(
        math.floor(ts.t_ent + beta * ts.t_w + 0.5) for beta in betas
    )


def test_scaled(spec):
    config = ScheduleConfig("scaled", values=(1.0, 2.0), scale="t_rel")
    schedule = build_schedule(config, spec)

    assert schedule.times == (100, 200)


def test_start_relative():
    spec = BlockSizeSpec.deterministic(50, 5)
    config = ScheduleConfig("start_relative", values=(0.0, 1.0, 2.5))
    schedule = build_schedule(config, spec)

    assert schedule.relative
    assert schedule.times is None
    assert schedule.offsets == (0, 10, 25)
    assert isinstance(schedule.strategy(), StartRelativeStrategy)


def test_fresh_strategies(spec):
    schedule = build_schedule(ScheduleConfig("times", values=(1, 2)), spec)

    assert schedule.strategy() is not schedule.strategy()


@pytest.mark.parametrize("kind", ["times", "window", "start_relative"])
def test_negative(spec, kind):
    with pytest.raises(ConfigurationError):
        build_schedule(ScheduleConfig(kind, values=(-100.0,)), spec)
