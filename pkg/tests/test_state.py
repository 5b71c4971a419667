# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest

from blockavg.exceptions import DomainError
from blockavg.state import MassDistribution


def test_dirac():
    eta = MassDistribution.dirac(5, 2)

    assert isinstance(eta, MassDistribution)
    assert eta.n == 5
    assert eta.tolist() == [0, 0, 1, 0, 0]


def test_dirac_outside():
    with pytest.raises(DomainError):
        MassDistribution.dirac(5, 5)


def test_uniform(tol):
    eta = MassDistribution.uniform(7)

    assert abs(eta.total() - 1) < tol
    eta.check()


def test_start():
    eta = MassDistribution.start(6, 3, x0=4)

    assert np.flatnonzero(eta).tolist() == [0, 4, 5]
    assert np.allclose(eta[[0, 4, 5]], 1 / 3)


def test_start_too_many_sites():
    with pytest.raises(DomainError):
        MassDistribution.start(4, 5)


def test_check_negative():
    with pytest.raises(DomainError):
        MassDistribution([1.5, -0.5]).check()


def test_check_total():
    with pytest.raises(DomainError):
        MassDistribution([0.5, 0.4]).check()


def test_renormalize(tol):
    eta = MassDistribution([0.5, 0.5 + 1e-10])
    drift = eta.renormalize()

    assert drift == pytest.approx(1e-10)
    assert abs(eta.total() - 1) < tol


def test_slicing_keeps_type():
    eta = MassDistribution.uniform(4)

    assert isinstance(eta[:2], MassDistribution)
    assert isinstance(eta.copy(), MassDistribution)
