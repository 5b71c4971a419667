# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import pytest

from blockavg.state import MassDistribution


@pytest.fixture
def simulation(mocker):
    """A stand-in simulation whose step only advances the time. The initial
    site is first hit at time 3"""
    simulation = mocker.Mock()
    simulation.t = 0
    simulation.tau_start = None
    simulation.eta = MassDistribution.dirac(4)

    def step_func(self):
        self.t += 1
        if self.t == 3:
            self.tau_start = 3

    simulation.step = step_func.__get__(simulation)

    yield simulation
