# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Replicated experiments: run independent replicas, possibly in parallel,
and reduce them to per-point statistics """

from __future__ import annotations

import csv
import json
import logging
import math
import os
import platform
import time

import numpy as np
import scipy

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple, Union

import blockavg

from blockavg.data import LedgerMode
from blockavg.engine.trajectory import run_trajectory
from blockavg.exceptions import (
    BlockAverageError,
    ConfigurationError,
    ResourceCapError,
    UnsupportedModeError,
)
from blockavg.io.record import TrajectoryRecord
from blockavg.piles import (
    GenerationHistogram,
    LITERAL_MAX_N,
    PileLedger,
    estimate_buckets,
    generation_histogram,
    glb_diagnostic,
    thresholded_mass,
)
from blockavg.profiles import ProfileCurve
from blockavg.solver import Simulation

from .config import ExperimentConfig
from .schedule import Schedule, build_schedule

logger = logging.getLogger(__name__)

QUANTILES = (0.05, 0.25, 0.5, 0.75, 0.95)

AGGREGATE_COLUMNS = (
    "point",
    "t",
    "mean",
    "stderr",
    "q05",
    "q25",
    "q50",
    "q75",
    "q95",
    "reference",
    "deviation",
)


@dataclass
class ReplicaResult:
    """What one replica contributes to an experiment

    Attributes
    ----------
    values
        For every metric, its value at every schedule point, ``None`` where
        the point was not recorded
    generations
        The generation histograms, by time, when requested
    """

    replica: int
    values: Dict[str, List[Optional[float]]]
    tau_start: Optional[int]
    truncated: bool
    dropped: List[int]
    record: Optional[TrajectoryRecord] = None
    generations: List[Tuple[int, GenerationHistogram]] = field(default_factory=list)


def _check_resources(config: ExperimentConfig):
    modes = config.modes
    if not modes.ledger:
        return

    if modes.ledger_mode is LedgerMode.LITERAL:
        if config.n > LITERAL_MAX_N:
            raise UnsupportedModeError(
                f"The literal ledger supports n <= {LITERAL_MAX_N}, got {config.n}"
            )
        return

    buckets = estimate_buckets(
        config.n, config.spec, modes.floor, cap=config.budget.max_buckets + 1
    )
    if buckets > config.budget.max_buckets:
        raise ResourceCapError(
            f"A ledger for {config.spec!r} may need more than "
            f"{config.budget.max_buckets} buckets"
        )

    if modes.generations and not config.spec.is_deterministic:
        raise UnsupportedModeError(
            "Generation histograms need a deterministic block size"
        )


def _ledger(simulation: Simulation) -> PileLedger:
    if simulation.ledger is None:
        raise UnsupportedModeError("The pile diagnostics need [modes].ledger = true")

    return simulation.ledger


def run_replica(
    config: ExperimentConfig, replica: int, deadline: float = 0
) -> ReplicaResult:
    """Run one replica of ``config``. ``deadline`` is an absolute wall time
    (as given by :func:`time.time`) after which the replica is truncated, 0
    for none"""
    schedule = build_schedule(config.schedule, config.spec)
    metrics = config.metrics
    modes = config.modes

    wall_seconds = 0.0
    if deadline:
        wall_seconds = deadline - time.time()
        if wall_seconds <= 0:
            return ReplicaResult(
                replica,
                {m: [None for _ in schedule.labels] for m in metrics},
                None,
                True,
                list(range(len(schedule))),
            )

    probes: Dict[str, Callable[[Simulation], float]] = {}
    if modes.glb is not None:
        a, eps = modes.glb
        probes["glb"] = lambda sim: glb_diagnostic(_ledger(sim), a, eps)
        probes["w_t"] = lambda sim: thresholded_mass(_ledger(sim), a / sim.n)

    generations: List[Tuple[int, GenerationHistogram]] = []

    def record_generations(simulation: Simulation, points: List[int]):
        generations.append(
            (simulation.t, generation_histogram(_ledger(simulation), config.spec))
        )

    record = run_trajectory(
        config.spec,
        config.x0,
        config.t_max,
        schedule.strategy(),
        config.seed,
        replica=replica,
        start=config.start,
        ledger=modes.ledger_mode if modes.ledger else None,
        floor=modes.floor,
        chunk=modes.chunks,
        probes=probes,
        listeners=[record_generations] if modes.generations else [],
        wall_seconds=wall_seconds,
    )

    values: Dict[str, List[Optional[float]]] = {
        m: [None for _ in schedule.labels] for m in metrics
    }
    for entry in record.entries:
        for point in entry.points:
            for m in metrics:
                values[m][point] = (
                    entry.extras[m] if m in entry.extras else getattr(entry, m)
                )

    logger.info(
        f"Replica {replica} done: tau_start={record.tau_start}, "
        f"truncated={record.truncated}"
    )

    return ReplicaResult(
        replica,
        values,
        record.tau_start,
        record.truncated,
        record.dropped,
        record,
        generations,
    )


def _run_replica(args) -> ReplicaResult:
    return run_replica(*args)


@dataclass
class PointSummary:
    """Statistics of one metric at one schedule point over the replicas"""

    point: int
    label: float
    t: int
    count: int
    mean: float
    stderr: float
    quantiles: Tuple[float, ...]
    reference: float = math.nan

    @property
    def deviation(self) -> float:
        return self.mean - self.reference

    def row(self) -> List:
        return [
            self.point,
            self.t,
            self.mean,
            self.stderr,
            *self.quantiles,
            self.reference,
            self.deviation,
        ]


def summarize(values: Iterable[Optional[float]]) -> Tuple[int, float, float, Tuple[float, ...]]:
    """Count, mean, standard error and quantiles. Exact sums make the result
    independent of the order of ``values``"""
    x = np.sort(np.asarray([v for v in values if v is not None], dtype=float))
    count = len(x)
    if count == 0:
        return 0, math.nan, math.nan, (math.nan,) * len(QUANTILES)

    mean = math.fsum(x) / count
    if count > 1:
        std = math.sqrt(math.fsum((x - mean) ** 2) / (count - 1))
        stderr = std / math.sqrt(count)
    else:
        stderr = math.nan

    return count, mean, stderr, tuple(float(q) for q in np.quantile(x, QUANTILES))


def _reference(profile: Optional[ProfileCurve], label: float) -> float:
    if profile is None:
        return math.nan
    try:
        return profile.value(label)
    except BlockAverageError:
        return math.nan


@dataclass
class AggregateResult:
    """Per-point statistics of a replicated experiment

    Attributes
    ----------
    metric
        The aggregated metric, ``d_tv`` unless stated otherwise
    points
        One :class:`PointSummary` per schedule point
    replicas
        Number of replicas merged
    truncated
        True if some replica stopped before its schedule was exhausted
    extras
        The other aggregated metrics
    """

    metric: str
    points: List[PointSummary]
    replicas: int
    truncated: bool = False
    tau_start_mean: float = math.nan
    extras: Dict[str, AggregateResult] = field(default_factory=dict)
    results: List[ReplicaResult] = field(default_factory=list, repr=False)

    @classmethod
    def from_replicas(
        cls,
        results: Iterable[ReplicaResult],
        schedule: Schedule,
        metrics: Tuple[str, ...] = ("d_tv",),
        profile: Optional[ProfileCurve] = None,
    ) -> AggregateResult:
        """Reduce replica results. Replicas are merged by id, so the order in
        which they are given does not matter"""
        by_id = {r.replica: r for r in results}
        ordered = [by_id[i] for i in sorted(by_id)]

        steps = schedule.offsets if schedule.relative else schedule.times
        tau = [r.tau_start for r in ordered if r.tau_start is not None]
        truncated = any(r.truncated for r in ordered)

        aggregates = {}
        for metric in metrics:
            points = []
            for p, label in enumerate(schedule.labels):
                count, mean, stderr, quantiles = summarize(
                    r.values[metric][p] for r in ordered
                )
                points.append(
                    PointSummary(
                        point=p,
                        label=label,
                        t=steps[p],  # type: ignore
                        count=count,
                        mean=mean,
                        stderr=stderr,
                        quantiles=quantiles,
                        reference=_reference(profile, label)
                        if metric == "d_tv"
                        else math.nan,
                    )
                )
            aggregates[metric] = cls(
                metric,
                points,
                len(ordered),
                truncated,
                math.fsum(tau) / len(tau) if tau else math.nan,
            )

        main = aggregates.pop("d_tv")
        main.extras = aggregates
        main.results = ordered

        return main

    @property
    def means(self) -> np.ndarray:
        return np.array([p.mean for p in self.points])

    @property
    def stderrs(self) -> np.ndarray:
        return np.array([p.stderr for p in self.points])

    def to_csv(self, filename: Union[str, os.PathLike]):
        with open(filename, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(AGGREGATE_COLUMNS)
            for point in self.points:
                writer.writerow([repr(v) for v in point.row()])


def merge_replicas(*batches: Iterable[ReplicaResult]) -> List[ReplicaResult]:
    """Concatenate batches of replica results, ordered by replica id"""
    by_id = {r.replica: r for batch in batches for r in batch}
    return [by_id[i] for i in sorted(by_id)]


def run_experiment(
    config: ExperimentConfig, workers: Optional[int] = None
) -> AggregateResult:
    """Run every replica of ``config`` and aggregate them.

    Replicas run serially, or in a process pool when more than one worker is
    asked for. Each replica draws from its own streams, so the result does
    not depend on the number of workers

    Raises
    ------
    ResourceCapError
        If the ledger of the configuration may exceed the bucket budget
    """
    _check_resources(config)

    schedule = build_schedule(config.schedule, config.spec)
    workers = workers or config.workers
    wall = config.budget.wall_seconds
    deadline = time.time() + wall if wall else 0

    logger.info(
        f"Running {config.replicas} replicas of {config.spec!r} "
        f"on {workers} worker(s)"
    )

    jobs = [(config, r, deadline) for r in range(config.replicas)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_run_replica, jobs))
    else:
        results = [_run_replica(job) for job in jobs]

    result = AggregateResult.from_replicas(
        results, schedule, config.metrics, config.profile
    )

    if result.truncated:
        logger.warning("Some replicas were truncated, results are partial")

    return result


@dataclass(frozen=True)
class TmixEstimate:
    """The first scheduled time at which the mean distance drops below
    ``eps``

    Attributes
    ----------
    t_mix
        That time, ``None`` if the schedule never crosses ``eps``
    bracket
        The scheduled times before and at the crossing. The true mixing time
        lies in ``(bracket[0], bracket[1]]``
    confident
        True if the crossing is three standard errors away from ``eps`` on
        both sides
    """

    eps: float
    t_mix: Optional[int]
    bracket: Tuple[Optional[int], Optional[int]]
    mean: float
    stderr: float
    confident: bool

    @property
    def crossed(self) -> bool:
        return self.t_mix is not None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "eps": self.eps,
            "t_mix": self.t_mix,
            "bracket": list(self.bracket),
            "mean": self.mean,
            "stderr": self.stderr,
            "confident": self.confident,
            "crossed": self.crossed,
        }


def tmix_from_result(result: AggregateResult, eps: float) -> TmixEstimate:
    points = result.points
    for i, point in enumerate(points):
        if point.mean < eps:
            before = points[i - 1] if i > 0 else None
            confident = point.mean + 3 * point.stderr < eps and (
                before is None or before.mean - 3 * before.stderr >= eps
            )
            return TmixEstimate(
                eps,
                point.t,
                (before.t if before else None, point.t),
                point.mean,
                point.stderr,
                bool(confident),
            )

    logger.warning(f"The schedule never crosses eps={eps}")
    last = points[-1]

    return TmixEstimate(eps, None, (last.t, None), last.mean, last.stderr, False)


def estimate_tmix(
    config: Union[ExperimentConfig, AggregateResult], eps: float
) -> TmixEstimate:
    """Estimate :math:`t_\\mathrm{mix}(\\varepsilon) = \\inf\\{t:
    \\mathbb{E}[d_\\mathrm{TV}(t)] < \\varepsilon\\}` on the schedule of
    ``config``, running it if needed. No crossing is reported, not raised
    """
    if not (0 < eps < 1):
        raise ConfigurationError(f"eps must lie in (0, 1), got {eps}")

    if isinstance(config, AggregateResult):
        return tmix_from_result(config, eps)

    schedule = build_schedule(config.schedule, config.spec)
    if schedule.relative:
        raise ConfigurationError("The mixing time needs an absolute schedule")
    if not schedule.is_monotone():
        raise ConfigurationError("The mixing time needs increasing times")

    return tmix_from_result(run_experiment(config), eps)


def write_manifest(
    filename: Union[str, os.PathLike],
    config: ExperimentConfig,
    result: Optional[AggregateResult] = None,
    wall_time: Optional[float] = None,
    **extra: Any,
):
    """The run manifest: configuration, seed, versions, wall time and
    truncation markers"""
    manifest: Dict[str, Any] = {
        "config": config.to_dict(),
        "seed": config.seed,
        "versions": {
            "blockavg": blockavg.__version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": platform.python_version(),
        },
        "wall_time": wall_time,
    }
    if result is not None:
        manifest["replicas"] = result.replicas
        manifest["truncated"] = result.truncated
        manifest["dropped"] = {
            r.replica: r.dropped for r in result.results if r.dropped
        }
        manifest["tau_start_mean"] = (
            None if math.isnan(result.tau_start_mean) else result.tau_start_mean
        )
    manifest.update(extra)

    with open(filename, "w") as f:
        json.dump(manifest, f, indent=2, sort_keys=True)
