# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import csv
import json
import os

import numpy as np

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, TYPE_CHECKING, Union

from blockavg.engine import l2_sq, max_mass, relative_entropy, tv_distance
from blockavg.size import BlockSizeSpec

if TYPE_CHECKING:
    from blockavg.solver import Simulation

#: Columns of the trajectory CSV. Extra probes are appended after them
COLUMNS = ("t", "d_tv", "entropy", "l2_sq", "max_mass")


@dataclass
class TrajectoryEntry:
    """The functionals of one recorded state

    Attributes
    ----------
    points
        The schedule points recorded with this entry
    extras
        Values of the extra probes, by name
    """

    t: int
    d_tv: float
    entropy: float
    l2_sq: float
    max_mass: float
    points: List[int] = field(default_factory=list)
    extras: Dict[str, float] = field(default_factory=dict)

    @classmethod
    def snapshot(
        cls, simulation: Simulation, points: List[int], probes: Dict[str, Any]
    ) -> TrajectoryEntry:
        eta = simulation.eta
        return cls(
            t=simulation.t,
            d_tv=tv_distance(eta),
            entropy=relative_entropy(eta),
            l2_sq=l2_sq(eta),
            max_mass=max_mass(eta),
            points=list(points),
            extras={name: float(probe(simulation)) for name, probe in probes.items()},
        )

    def row(self, extras: List[str]) -> List:
        return [self.t, self.d_tv, self.entropy, self.l2_sq, self.max_mass] + [
            self.extras.get(name, np.nan) for name in extras
        ]


@dataclass
class TrajectoryRecord:
    """The recorded time series of one replica

    Attributes
    ----------
    tau_start
        First time the initial site was hit by a block, ``None`` if it never
        was during the run
    truncated
        True if the run stopped before every schedule point was recorded
    dropped
        The schedule points that were not recorded
    """

    entries: List[TrajectoryEntry]
    tau_start: Optional[int]
    seed: int
    replica: int
    spec: BlockSizeSpec
    truncated: bool = False
    dropped: List[int] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        if name in COLUMNS:
            return np.array([getattr(e, name) for e in self.entries])

        return np.array([e.extras[name] for e in self.entries])

    @property
    def extra_names(self) -> List[str]:
        names: Dict[str, None] = {}
        for entry in self.entries:
            names.update(dict.fromkeys(entry.extras))

        return list(names)

    def at_point(self, point: int) -> Optional[TrajectoryEntry]:
        for entry in self.entries:
            if point in entry.points:
                return entry

        return None

    def summary(self) -> Dict[str, Any]:
        return {
            "seed": self.seed,
            "replica": self.replica,
            "spec": self.spec.to_dict(),
            "tau_start": self.tau_start,
            "truncated": self.truncated,
            "dropped": self.dropped,
        }

    def to_csv(self, filename: Union[str, os.PathLike]):
        """Write the CSV and its JSON sidecar (same name, ``.json`` suffix)"""
        extras = self.extra_names
        with open(filename, "w", newline="") as f:
            writer = csv.writer(f)
            writer.writerow(list(COLUMNS) + extras)
            for entry in self.entries:
                writer.writerow([repr(v) for v in entry.row(extras)])

        with open(os.path.splitext(filename)[0] + ".json", "w") as f:
            json.dump(self.summary(), f, indent=2, sort_keys=True)
