# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

import pytest

from blockavg.data import StreamPurpose
from blockavg.engine import BlockSampler
from blockavg.harness.rng import RandomStreams, stream
from blockavg.size import BlockSizeSpec
from blockavg.solver import Simulation


def pytest_addoption(parser):
    parser.addoption(
        "--plot",
        action="store_true",
        help=("Some tests can plot their curves. Set to true if you want to see them"),
    )

    parser.addoption(
        "--write",
        action="store_true",
        help=(
            "Some tests can output to disk data. Set to true if you "
            "want to write the data on disk"
        ),
    )

    parser.addoption(
        "--bench",
        action="store_true",
        help="Run benchmarks instead of unit tests",
    )

    parser.addoption(
        "--slow",
        action="store_true",
        help="Also run the desk-scale experiments, which take minutes",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--bench"):
        skip_reason = pytest.mark.skip(reason="Running Benchmarks, not unit tests")
        for item in items:
            if "bench" not in item.keywords and isinstance(item, pytest.Function):
                item.add_marker(skip_reason)
    else:
        skip_reason = pytest.mark.skip(reason="Skipping benchmarks")

        for item in items:
            if "bench" in item.keywords:
                item.add_marker(skip_reason)

    if not config.getoption("--slow"):
        skip_slow = pytest.mark.skip(reason="Needs --slow")
        for item in items:
            if "slow" in item.keywords:
                item.add_marker(skip_slow)


@pytest.fixture(scope="session", autouse=True)
def plot(request):
    if not request.config.getoption("--plot"):
        import matplotlib

        matplotlib.use("SVG")
    yield request.config.getoption("--plot")


@pytest.fixture(scope="session", autouse=True)
def write(request):
    yield request.config.getoption("--write")


@pytest.fixture
def tol():
    yield 1e-12


@pytest.fixture
def rng():
    """A generator with a fixed seed"""
    yield stream(1234, 0, StreamPurpose.DIRECT)


@pytest.fixture(
    params=(
        BlockSizeSpec.deterministic(10, 2),
        BlockSizeSpec.deterministic(10, 4),
        BlockSizeSpec.table(10, {2: 0.5, 3: 0.25, 10: 0.25}),
    ),
    ids=("k=2", "k=4", "table"),
)
def spec(request):
    yield request.param


@pytest.fixture
def sampler(spec):
    streams = RandomStreams(42)

    yield BlockSampler(spec, streams.sizes, streams.subsets)


@pytest.fixture
def simulation(sampler):
    """A simulation from a Dirac mass at site 0, initialized"""
    simulation = Simulation(sampler)
    simulation.init()

    yield simulation
