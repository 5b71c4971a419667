# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Self-checks of the package against exact oracles, closed forms and
Monte Carlo envelopes. Every suite returns a :class:`ValidationReport` with
the measured values next to their tolerances """

from __future__ import annotations

import json
import logging
import math
import os

import numpy as np

from dataclasses import asdict, dataclass, field
from typing import Any, Callable, Dict, List, Sequence, Union

from scipy.stats import chisquare

from blockavg.data import StreamPurpose
from blockavg.engine import (
    BlockSampler,
    entropy_lower_bound,
    entropy_upper_bound,
    l2_sq,
)
from blockavg.engine.exact import expected_one_step, expected_one_step_l2
from blockavg.engine.trajectory import run_trajectory
from blockavg.exceptions import UnknownSuiteError
from blockavg.piles import (
    ChunkMark,
    chunk_step,
    meeting_probe,
    pile_size_law,
    sample_pile_sizes_direct,
)
from blockavg.profiles import poisson_profile, psi, xi, xi_quadrature
from blockavg.size import BlockSizeSpec, timescales
from blockavg.state import MassDistribution
from blockavg.walk import DualWalk

from .rng import stream

logger = logging.getLogger(__name__)

#: Smallest p-value accepted by the goodness-of-fit checks
MIN_PVALUE = 1e-3

#: Number of standard errors allowed by the Monte Carlo checks
Z = 3.0


@dataclass
class Check:
    """One measured quantity against its tolerance"""

    name: str
    measured: float
    reference: float
    tolerance: float
    passed: bool


@dataclass
class ValidationReport:
    """The outcome of a suite

    Attributes
    ----------
    checks
        Every check run by the suite
    tables
        Side tables (e.g. the meeting probe estimates), by name, as lists of
        rows whose first row is the header
    """

    suite: str
    checks: List[Check] = field(default_factory=list)
    tables: Dict[str, List[List[Any]]] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> List[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str, measured: float, reference: float, tolerance: float):
        """Record ``|measured - reference| <= tolerance``"""
        passed = bool(abs(measured - reference) <= tolerance)
        self.checks.append(Check(name, measured, reference, tolerance, passed))

    def check_below(self, name: str, measured: float, bound: float, slack: float):
        """Record ``measured <= bound + slack``"""
        passed = bool(measured <= bound + slack)
        self.checks.append(Check(name, measured, bound, slack, passed))

    def check_true(self, name: str, condition: bool):
        self.checks.append(
            Check(name, float(bool(condition)), 1.0, 0.0, bool(condition))
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "suite": self.suite,
            "passed": self.passed,
            "checks": [asdict(c) for c in self.checks],
            "tables": self.tables,
        }

    def to_json(self, filename: Union[str, os.PathLike]):
        with open(filename, "w") as f:
            json.dump(self.to_dict(), f, indent=2)


def _specs(n: int) -> List[BlockSizeSpec]:
    specs = [BlockSizeSpec.deterministic(n, 2), BlockSizeSpec.deterministic(n, 3)]
    specs.append(BlockSizeSpec.table(n, {2: 0.5, 3: 0.5}))

    return specs


def duality(seed: int = 0, sizes: Sequence[int] = (3, 4, 5, 6)) -> ValidationReport:
    """The expected one-step masses from every Dirac mass, by enumeration of
    every block, against the row of the dual walk"""
    report = ValidationReport("duality")
    for n in sizes:
        for spec in _specs(n):
            walk = DualWalk(spec)
            error = max(
                float(
                    np.max(
                        np.abs(
                            expected_one_step(MassDistribution.dirac(n, x0), spec)
                            - walk.transition_row(x0)
                        )
                    )
                )
                for x0 in range(n)
            )
            report.check(f"{spec!r}", error, 0.0, 1e-12)

    return report


def l2_identity(
    seed: int = 0,
    sizes: Sequence[int] = (3, 4, 5, 6, 7, 8),
    n: int = 100,
    times: Sequence[int] = (50, 100, 200),
    replicas: int = 400,
) -> ValidationReport:
    r"""The contraction of :math:`\|\eta/\pi - 1\|_2^2` by :math:`1 -
    1/t_\mathrm{rel}` per step: exactly in one step from random states of
    tiny systems, then in mean over ``replicas`` trajectories of size ``n``.
    ``replicas=0`` skips the Monte Carlo part"""
    report = ValidationReport("l2_identity")
    rng = stream(seed, 0, StreamPurpose.DIRECT)

    for m in sizes:
        for spec in _specs(m):
            eta = MassDistribution(rng.dirichlet(np.ones(m)))
            exact = expected_one_step_l2(eta, spec)
            identity = (1 - 1 / timescales(spec).t_rel) * l2_sq(eta)
            report.check(f"one step {spec!r}", exact, identity, 1e-10)

    if replicas:
        spec = BlockSizeSpec.deterministic(n, 2)
        values = np.array(
            [
                run_trajectory(spec, 0, max(times), times, seed, replica=r).column(
                    "l2_sq"
                )
                for r in range(replicas)
            ]
        )
        ts = timescales(spec)
        for i, t in enumerate(times):
            mean = math.fsum(values[:, i]) / replicas
            stderr = float(np.std(values[:, i], ddof=1)) / math.sqrt(replicas)
            expected = (1 - 1 / ts.t_rel) ** t * (n - 1)
            report.check(f"mean at t={t}", mean, expected, Z * stderr)

    return report


def entropy_bounds(
    seed: int = 0,
    n: int = 100,
    times: Sequence[int] = (0, 50, 100, 200, 300),
    replicas: int = 1000,
) -> ValidationReport:
    """The mean relative entropy from a Dirac mass between the lower and
    upper envelopes, for block sizes uniform on {2, 3, 4}"""
    report = ValidationReport("entropy_bounds")
    spec = BlockSizeSpec.uniform(n, (2, 3, 4))
    ts = timescales(spec)

    values = np.array(
        [
            run_trajectory(spec, 0, max(times), times, seed, replica=r).column(
                "entropy"
            )
            for r in range(replicas)
        ]
    )

    rows: List[List[Any]] = [["t", "mean", "stderr", "lower", "upper"]]
    for i, t in enumerate(times):
        mean = math.fsum(values[:, i]) / replicas
        stderr = (
            float(np.std(values[:, i], ddof=1)) / math.sqrt(replicas)
            if replicas > 1
            else 0.0
        )
        slack = max(Z * stderr, 1e-9)
        lower = entropy_lower_bound(ts, t)
        upper = entropy_upper_bound(ts, t)

        report.check_below(f"lower envelope at t={t}", lower, mean, slack)
        report.check_below(f"upper envelope at t={t}", mean, upper, slack)
        rows.append([t, mean, stderr, lower, upper])

    report.tables["entropy"] = rows

    return report


def _generation_counts(log_sizes: np.ndarray, log_k: float, t: int) -> np.ndarray:
    j = np.rint(-np.asarray(log_sizes) / log_k).astype(np.int64)
    return np.bincount(j, minlength=t + 1)


def pile_law(seed: int = 0, samples: int = 100_000) -> ValidationReport:
    """At ``n = 3``, ``X = 2``, ``t = 2``: the size of the pile carrying a
    chunk driven by the engine blocks, and the direct sampler, against the
    exact law {1: 1/9, 1/2: 4/9, 1/4: 4/9}"""
    report = ValidationReport("pile_law")
    spec = BlockSizeSpec.deterministic(3, 2)
    t = 2
    log_k = math.log(2)

    exact = pile_size_law(spec, t)
    expected = np.array([exact[-j * log_k] for j in range(t + 1)]) * samples

    sampler = BlockSampler(
        spec,
        stream(seed, 0, StreamPurpose.SIZES),
        stream(seed, 0, StreamPurpose.SUBSETS),
    )
    rng = stream(seed, 0, StreamPurpose.CHUNKS)

    engine = np.empty(samples)
    for i in range(samples):
        mark = ChunkMark(0)
        for _ in range(t):
            mark = chunk_step(mark, sampler.sample(), rng)
        engine[i] = mark.log_size

    direct = sample_pile_sizes_direct(
        spec, t, samples, stream(seed, 0, StreamPurpose.DIRECT)
    )

    rows: List[List[Any]] = [["sampler", "j", "count", "expected"]]
    for name, logs in (("engine", engine), ("direct", direct)):
        counts = _generation_counts(logs, log_k, t)
        pvalue = float(chisquare(counts, expected).pvalue)
        report.check_true(f"{name} chi-square p={pvalue:.4g}", pvalue > MIN_PVALUE)
        rows.extend(
            [name, j, int(c), e] for j, (c, e) in enumerate(zip(counts, expected))
        )

    report.tables["pile_law"] = rows

    return report


def meeting_bound(
    seed: int = 0,
    sizes: Sequence[int] = (50, 200),
    multiples: Sequence[int] = (1, 5),
    thetas: Sequence[float] = (0.1, 0.5),
    n_pairs: int = 2000,
) -> ValidationReport:
    """The probability that two chunks from the same pile share a site while
    both are small, against :math:`\\theta + 1/n`. One table per population
    size, named ``meeting_n<n>``"""
    report = ValidationReport("meeting_bound")

    for i, n in enumerate(sizes):
        spec = BlockSizeSpec.deterministic(n, 2)
        rows: List[List[Any]] = [["t", "theta", "estimate", "stderr", "bound"]]
        for m in multiples:
            for theta in thetas:
                rng = stream(seed, i, StreamPurpose.CHUNKS)
                probe = meeting_probe(spec, m * n, n_pairs, rng, theta)
                report.check_below(
                    f"n={n} t={m * n} theta={theta}",
                    probe.estimate,
                    probe.bound,
                    Z * probe.stderr,
                )
                rows.append(probe.as_row())

        report.tables[f"meeting_n{n}"] = rows

    return report


def profile_math(seed: int = 0) -> ValidationReport:
    """Closed forms of the limit profiles against quadrature, their
    symmetries and orderings, and the boundary case of the Poisson bounds"""
    report = ValidationReport("profile_math")
    grid = np.linspace(-3, 3, 7)

    for rho in (0.1, 1.0, 5.0):
        error = max(
            abs(xi_quadrature(rho, beta, gamma) - float(xi(rho, beta, gamma)))
            for beta in grid
            for gamma in grid
        )
        report.check(f"xi quadrature rho={rho}", error, 0.0, 1e-8)

    for rho in (0.1, 0.5, 2.0, 5.0):
        error = float(np.max(np.abs(psi(rho, grid) - psi(1 / rho, grid))))
        report.check(f"psi symmetry rho={rho}", error, 0.0, 1e-12)

    # Above the center a larger rho <= 1 gives a steeper, lower curve
    rhos = np.linspace(0, 1, 11)
    curves = np.array([psi(rho, grid) for rho in rhos])
    positive = grid > 0
    negative = grid < 0
    report.check_true(
        "psi decreasing in rho for beta > 0",
        bool(np.all(np.diff(curves[:, positive], axis=0) <= 0)),
    )
    report.check_true(
        "psi increasing in rho for beta < 0",
        bool(np.all(np.diff(curves[:, negative], axis=0) >= 0)),
    )
    report.check("psi center", float(np.max(np.abs(curves[:, grid == 0] - 0.5))), 0, 0)

    for beta in (0.5, 1.0, 2.0):
        lower, upper = poisson_profile(0.5, beta)
        report.check_true(f"poisson bounds strict at beta={beta}", lower < upper)

    return report


SUITES: Dict[str, Callable[..., ValidationReport]] = {
    "duality": duality,
    "l2_identity": l2_identity,
    "entropy_bounds": entropy_bounds,
    "pile_law": pile_law,
    "meeting_bound": meeting_bound,
    "profile_math": profile_math,
}


def validate(suite: str, seed: int = 0, **kwargs) -> ValidationReport:
    """Run the suite named ``suite``. Keyword arguments are forwarded to it

    Raises
    ------
    UnknownSuiteError
        If no suite has that name
    """
    try:
        run = SUITES[suite]
    except KeyError:
        raise UnknownSuiteError(
            f"Unknown suite {suite!r}, choose among {', '.join(SUITES)}"
        )

    logger.info(f"Running validation suite {suite}")
    report = run(seed=seed, **kwargs)

    for failure in report.failures:
        logger.warning(
            f"{suite}: {failure.name} measured {failure.measured!r}, "
            f"reference {failure.reference!r}, tolerance {failure.tolerance!r}"
        )

    return report
