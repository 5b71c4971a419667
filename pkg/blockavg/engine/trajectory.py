# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import logging
import math

from typing import Dict, Optional, Sequence, Union

from blockavg.data import LedgerMode, StartKind
from blockavg.exceptions import DomainError
from blockavg.harness.rng import RandomStreams
from blockavg.io.record import TrajectoryRecord
from blockavg.io.write.strategy import Strategy, TimeStrategy
from blockavg.io.write.writer import Listener, MemoryWriter, Probe
from blockavg.piles import AggregateLedger, ChunkMark, ChunkTracker, LiteralLedger
from blockavg.size import BlockSizeSpec
from blockavg.solver import LedgerFactory, Simulation

from .sampling import BlockSampler

logger = logging.getLogger(__name__)


def ledger_factory(
    mode: Optional[LedgerMode], floor: float, streams: RandomStreams
) -> Optional[LedgerFactory]:
    if mode is None:
        return None
    elif mode is LedgerMode.LITERAL:
        return lambda eta: LiteralLedger.from_masses(eta, streams.ledger)

    return lambda eta: AggregateLedger.from_masses(eta, floor or None)


def run_trajectory(
    spec: BlockSizeSpec,
    x0: int,
    t_max: int,
    schedule: Union[Strategy, Sequence[int]],
    seed: int,
    replica: int = 0,
    start: StartKind = StartKind.DIRAC,
    ledger: Optional[LedgerMode] = None,
    floor: float = 0.0,
    chunk: bool = False,
    probes: Optional[Dict[str, Probe]] = None,
    listeners: Sequence[Listener] = (),
    wall_seconds: float = 0,
) -> TrajectoryRecord:
    """Run one replica from a Dirac mass at ``x0`` (or from the spread
    configuration) for at most ``t_max`` steps, recording the distance
    functionals at the scheduled times.

    Scheduled times beyond ``t_max`` are reported in the record as dropped

    Parameters
    ----------
    schedule
        A :class:`~.Strategy`, or a list of times
    seed
        The master seed. Together with ``replica`` it fixes every random draw
    ledger
        If given, a pile ledger of this kind is driven along with the masses.
        ``floor`` is its dust floor, 0 for the default
    chunk
        Follow a chunk marked at ``x0``, recorded as ``chunk_log_size``
    probes
        Extra functionals of the :class:`~.Simulation` to record
    listeners
        Notified with the simulation after every record
    """
    if t_max < 0:
        raise DomainError(f"t_max must be nonnegative, got {t_max}")

    strategy = schedule if isinstance(schedule, Strategy) else TimeStrategy(schedule)
    probes = dict(probes or {})

    streams = RandomStreams(seed, replica)
    sampler = BlockSampler(spec, streams.sizes, streams.subsets)
    simulation = Simulation(sampler, x0, start, ledger_factory(ledger, floor, streams))
    simulation.init()

    if chunk:
        mark = ChunkMark(x0, math.log(simulation.eta[x0]))
        tracker = ChunkTracker(mark, streams.chunks)
        simulation.observers.append(tracker.observe)
        probes["chunk_log_size"] = lambda _: tracker.mark.log_size

    writer = MemoryWriter(strategy, simulation, t_max, probes, wall_seconds)
    writer.listeners.extend(listeners)
    writer.solve()

    logger.debug(
        f"Replica {replica}: {len(writer.entries)} records, "
        f"tau_start={simulation.tau_start}"
    )

    return TrajectoryRecord(
        entries=writer.entries,
        tau_start=simulation.tau_start,
        seed=seed,
        replica=replica,
        spec=spec,
        truncated=writer.truncated,
        dropped=writer.dropped,
    )
