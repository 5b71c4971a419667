# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import numpy as np
import pytest

from blockavg.exceptions import DomainError
from blockavg.size import BlockSizeSpec
from blockavg.walk import (
    DualWalk,
    jensen_lower_bound,
    t_step_distribution,
    transition_row,
)


@pytest.fixture
def walk():
    yield DualWalk(BlockSizeSpec.table(6, {2: 0.5, 3: 0.5}))


def _matrix(walk):
    return np.array([walk.transition_row(x) for x in range(walk.n)])


def test_rows_are_stochastic(walk, tol):
    matrix = _matrix(walk)

    assert np.all(matrix >= 0)
    assert np.allclose(matrix.sum(axis=1), 1, atol=tol)
    assert np.allclose(matrix, matrix.T)


def test_apply(walk, rng):
    v = rng.random(walk.n)

    assert np.allclose(walk.apply(v), _matrix(walk) @ v)


def test_eigenvalue(walk):
    eigenvalues = np.sort(np.linalg.eigvalsh(_matrix(walk)))

    assert eigenvalues[-1] == pytest.approx(1)
    assert np.allclose(eigenvalues[:-1], walk.eigenvalue)
    assert walk.t_rel == pytest.approx(1 / (1 - walk.eigenvalue))


def test_t_step_distribution(walk):
    matrix = _matrix(walk)
    power = np.linalg.matrix_power(matrix, 7)

    assert np.allclose(walk.t_step_distribution(2, 7), power[2])
    assert np.allclose(t_step_distribution(walk, 2, 0), np.eye(walk.n)[2])


def test_module_functions(walk):
    assert np.array_equal(transition_row(walk, 1), walk.transition_row(1))
    assert jensen_lower_bound(walk, 3) == walk.jensen_lower_bound(3)


def test_jensen_lower_bound(walk):
    assert walk.jensen_lower_bound(0) == 0.5
    assert walk.jensen_lower_bound(10) < walk.jensen_lower_bound(5)


def test_full_block_mixes_at_once():
    walk = DualWalk(BlockSizeSpec.deterministic(5, 5))

    assert np.allclose(walk.t_step_distribution(0, 1), 0.2)


@pytest.mark.parametrize("x", [-1, 6])
def test_outside(walk, x):
    with pytest.raises(DomainError):
        walk.transition_row(x)


def test_negative_time(walk):
    with pytest.raises(DomainError):
        walk.t_step_distribution(0, -1)
