# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Replicated runs at desk scale against the limit profiles. They take
minutes to tens of minutes: run them with ``--slow`` """

import math
import os

import numpy as np
import pytest

from blockavg.harness.config import ExperimentConfig
from blockavg.harness.experiment import estimate_tmix, run_experiment
from blockavg.profiles import poisson_profile, psi
from blockavg.size import BlockSizeSpec, timescales

#: Tolerance on the mean distance at finite n
BAND = 0.1

WORKERS = os.cpu_count() or 1


def make_config(n, spec, schedule, replicas):
    return ExperimentConfig.from_dict(
        {
            "experiment": {"n": n, "replicas": replicas, "seed": 2024},
            "spec": spec,
            "schedule": schedule,
        }
    )


@pytest.mark.slow
def test_cutoff_location():
    n = 20_000
    multiples = [round(s, 2) for s in np.arange(0.8, 1.2001, 0.01)]
    config = make_config(
        n,
        {"kind": "deterministic", "k": 2},
        {"kind": "scaled", "scale": "t_ent", "values": multiples},
        replicas=20,
    )

    estimate = estimate_tmix(run_experiment(config, workers=WORKERS), 0.5)
    t_ent = timescales(BlockSizeSpec.deterministic(n, 2)).t_ent

    assert estimate.crossed
    assert 0.9 <= estimate.t_mix / t_ent <= 1.1


@pytest.mark.slow
def test_gaussian_window():
    betas = [-1.0, 0.0, 1.0]
    config = make_config(
        100_000,
        {"kind": "deterministic", "k": 2},
        {"kind": "window", "betas": betas},
        replicas=50,
    )

    result = run_experiment(config, workers=WORKERS)

    for point, beta in zip(result.points, betas):
        assert abs(point.mean - float(psi(0.0, beta))) <= BAND


@pytest.mark.slow
@pytest.mark.parametrize("delta", [0.7, 0.4])
def test_poisson_profile(delta):
    n = 100_000
    betas = [0.5, 1.0, 2.0]
    config = make_config(
        n,
        {"kind": "deterministic", "k": math.floor(n**delta)},
        {"kind": "start_relative", "betas": betas},
        replicas=100,
    )

    result = run_experiment(config, workers=WORKERS)

    assert not result.truncated
    for point, beta in zip(result.points, betas):
        lower, upper = poisson_profile(delta, beta)
        assert lower == upper
        assert abs(point.mean - lower) <= BAND


@pytest.mark.slow
def test_metastability():
    n = 10_000
    multiples = [0.5, 1.0, 2.0]
    config = make_config(
        n,
        {"kind": "two_point", "a": 10 / math.log(n)},
        {"kind": "scaled", "scale": "t_ent", "values": multiples},
        replicas=200,
    )

    result = run_experiment(config, workers=WORKERS)

    for point, s in zip(result.points, multiples):
        assert abs(point.mean - math.exp(-s)) <= BAND
