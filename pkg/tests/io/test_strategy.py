# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from blockavg.io.write.strategy import StartRelativeStrategy, TimeStrategy


def _run(strategy, simulation, steps):
    written = {}
    for _ in range(steps):
        points = strategy.check_write(simulation)
        if strategy.should_write:
            written[simulation.t] = points
        simulation.step()

    return written


def test_time(simulation):
    strategy = TimeStrategy([0, 5, 5, 9])

    assert strategy.pending() == [0, 1, 2, 3]
    assert _run(strategy, simulation, 6) == {0: [0], 5: [1, 2]}
    assert strategy.pending() == [3]
    assert not strategy.done(simulation)

    _run(strategy, simulation, 5)
    assert strategy.done(simulation)


def test_start_relative(simulation):
    strategy = StartRelativeStrategy([0, 2])

    assert _run(strategy, simulation, 3) == {}
    assert strategy.pending() == [0, 1]
    assert not strategy.done(simulation)

    assert _run(strategy, simulation, 5) == {3: [0], 5: [1]}
    assert strategy.times == [3, 5]
    assert strategy.done(simulation)
