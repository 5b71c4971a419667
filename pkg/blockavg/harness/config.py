# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

""" Experiment configuration, read from a TOML document. The schema is
documented in ``docs/source/config.rst`` """

from __future__ import annotations

import copy
import os

import tomli

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from blockavg.data import LedgerMode, ProfileKind, StartKind
from blockavg.exceptions import BlockAverageError, ConfigurationError
from blockavg.profiles import ProfileCurve
from blockavg.size import BlockSizeSpec, RegimeThresholds

SCHEDULE_KINDS = ("times", "grid", "window", "scaled", "start_relative")
SCALES = ("t_ent", "t_rel", "t_cdsz")
METRICS = ("d_tv", "entropy", "l2_sq", "max_mass", "glb", "w_t", "chunk_log_size")


def _get(table: Mapping[str, Any], key: str, section: str, default=None):
    if key in table:
        return table[key]
    if default is None:
        raise ConfigurationError(f"Missing key [{section}].{key}")

    return default


def _int(value, key: str, minimum: Optional[int] = None) -> int:
    if isinstance(value, bool) or int(value) != value:
        raise ConfigurationError(f"{key} must be an integer, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigurationError(f"{key} must be >= {minimum}, got {value!r}")

    return int(value)


def _enum(enum, value, key: str):
    try:
        return enum(value)
    except ValueError:
        choices = ", ".join(e.value for e in enum)
        raise ConfigurationError(f"{key}={value!r} is not one of {choices}")


@dataclass(frozen=True)
class ScheduleConfig:
    """Where the state is recorded. See :mod:`~.harness.schedule`

    Attributes
    ----------
    kind
        One of ``times``, ``grid``, ``window``, ``scaled``, ``start_relative``
    values
        The explicit times (``times``), the betas (``window``,
        ``start_relative``) or the multipliers (``scaled``)
    grid
        ``(start, stop, step)`` for the ``grid`` kind
    scale
        The timescale multiplied by ``values`` in the ``scaled`` kind
    """

    kind: str
    values: Tuple[float, ...] = ()
    grid: Tuple[int, int, int] = (0, 0, 1)
    scale: str = "t_ent"

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> ScheduleConfig:
        kind = _get(d, "kind", "schedule")
        if kind not in SCHEDULE_KINDS:
            raise ConfigurationError(
                f"[schedule].kind={kind!r} is not one of {', '.join(SCHEDULE_KINDS)}"
            )

        if kind == "grid":
            grid = (
                _int(_get(d, "start", "schedule", 0), "[schedule].start", 0),
                _int(_get(d, "stop", "schedule"), "[schedule].stop", 0),
                _int(_get(d, "step", "schedule", 1), "[schedule].step", 1),
            )
            return cls(kind, grid=grid)

        key = {"times": "times", "window": "betas", "start_relative": "betas"}.get(
            kind, "values"
        )
        raw = list(_get(d, key, "schedule"))
        if not raw:
            raise ConfigurationError(f"[schedule].{key} is empty")

        if kind == "times":
            values: Tuple[float, ...] = tuple(
                _int(v, "[schedule].times", 0) for v in raw
            )
        else:
            values = tuple(float(v) for v in raw)

        scale = d.get("scale", "t_ent")
        if scale not in SCALES:
            raise ConfigurationError(
                f"[schedule].scale={scale!r} is not one of {', '.join(SCALES)}"
            )

        return cls(kind, values=values, scale=scale)

    def to_dict(self) -> Dict[str, Any]:
        if self.kind == "grid":
            start, stop, step = self.grid
            return {"kind": self.kind, "start": start, "stop": stop, "step": step}

        key = {"times": "times", "window": "betas", "start_relative": "betas"}.get(
            self.kind, "values"
        )
        d: Dict[str, Any] = {"kind": self.kind, key: list(self.values)}
        if self.kind == "scaled":
            d["scale"] = self.scale

        return d


@dataclass(frozen=True)
class ModesConfig:
    """Optional machinery driven along with the masses

    Attributes
    ----------
    ledger
        Drive a pile ledger with the same blocks
    ledger_mode
        :class:`~.LedgerMode` of the ledger
    floor
        The dust floor, 0 for the default
    glb
        ``(a, eps)`` of the lower-bound diagnostic, recorded as ``glb`` and
        ``w_t`` when the ledger is on
    chunks
        Follow a marked chunk from the initial site, recorded as
        ``chunk_log_size``
    generations
        Record the generation histogram of the ledger at every point. Needs
        a deterministic block size
    extras
        Metrics aggregated besides ``d_tv``
    """

    ledger: bool = False
    ledger_mode: LedgerMode = LedgerMode.AGGREGATE
    floor: float = 0.0
    glb: Optional[Tuple[float, float]] = None
    chunks: bool = False
    generations: bool = False
    extras: Tuple[str, ...] = ()

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> ModesConfig:
        glb = d.get("glb")
        if glb is not None:
            if len(glb) != 2:
                raise ConfigurationError("[modes].glb must be [a, eps]")
            glb = (float(glb[0]), float(glb[1]))

        extras = tuple(d.get("extras", ()))
        for name in extras:
            if name not in METRICS:
                raise ConfigurationError(f"[modes].extras: unknown metric {name!r}")

        ledger = bool(d.get("ledger", False))
        if glb is not None and not ledger:
            raise ConfigurationError("[modes].glb needs [modes].ledger = true")

        generations = bool(d.get("generations", False))
        if generations and not ledger:
            raise ConfigurationError("[modes].generations needs [modes].ledger = true")

        chunks = bool(d.get("chunks", False))
        if glb is None and ({"glb", "w_t"} & set(extras)):
            raise ConfigurationError("[modes].extras: glb and w_t need [modes].glb")
        if not chunks and "chunk_log_size" in extras:
            raise ConfigurationError(
                "[modes].extras: chunk_log_size needs [modes].chunks = true"
            )

        return cls(
            ledger=ledger,
            ledger_mode=_enum(
                LedgerMode, d.get("ledger_mode", "aggregate"), "[modes].ledger_mode"
            ),
            floor=float(d.get("floor", 0.0)),
            glb=glb,
            chunks=chunks,
            generations=generations,
            extras=extras,
        )

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "ledger": self.ledger,
            "ledger_mode": self.ledger_mode.value,
            "floor": self.floor,
            "chunks": self.chunks,
            "generations": self.generations,
            "extras": list(self.extras),
        }
        if self.glb is not None:
            d["glb"] = list(self.glb)

        return d


@dataclass(frozen=True)
class BudgetConfig:
    """Resource caps. ``max_buckets`` bounds the worst-case size of an
    aggregate ledger, ``wall_seconds`` the wall time of the whole experiment
    (0 for unlimited)"""

    max_buckets: int = 50_000_000
    wall_seconds: float = 0.0


@dataclass(frozen=True)
class ExperimentConfig:
    """A complete, reproducible experiment

    Attributes
    ----------
    spec
        The block size law, which also fixes ``n``
    start
        Initial configuration
    x0
        The initial site
    replicas
        Number of independent replicas
    seed
        The master seed
    workers
        Replicas run in this many processes, serially if 1
    t_max
        Hard cap on the steps of a replica
    profile
        Optional curve the aggregated means are compared with
    output
        Output directory, if any
    raw
        The document the configuration was built from
    """

    spec: BlockSizeSpec
    schedule: ScheduleConfig
    start: StartKind = StartKind.DIRAC
    x0: int = 0
    replicas: int = 1
    seed: int = 0
    workers: int = 1
    t_max: int = 10_000_000
    modes: ModesConfig = ModesConfig()
    budget: BudgetConfig = BudgetConfig()
    profile: Optional[ProfileCurve] = None
    regime: RegimeThresholds = RegimeThresholds()
    output: Optional[str] = None
    raw: Mapping[str, Any] = field(default_factory=dict, compare=False)

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def metrics(self) -> Tuple[str, ...]:
        extras = tuple(m for m in self.modes.extras if m != "d_tv")
        return ("d_tv",) + extras

    @classmethod
    def from_dict(cls, d: Mapping[str, Any]) -> ExperimentConfig:
        try:
            return cls._from_dict(d)
        except ConfigurationError:
            raise
        except (BlockAverageError, TypeError, ValueError) as e:
            raise ConfigurationError(str(e)) from e

    @classmethod
    def _from_dict(cls, d: Mapping[str, Any]) -> ExperimentConfig:
        experiment = d.get("experiment", {})
        n = _int(_get(experiment, "n", "experiment"), "[experiment].n", 2)

        spec = BlockSizeSpec.from_dict(_get(d, "spec", "spec"), n=n)
        if spec.n != n:
            raise ConfigurationError(f"[spec].n={spec.n} differs from [experiment].n")

        x0 = _int(experiment.get("x0", 0), "[experiment].x0", 0)
        if x0 >= n:
            raise ConfigurationError(f"[experiment].x0={x0} is not a site")

        budget = d.get("budget", {})
        regime = d.get("regime", {})
        profile = d.get("profile")
        output = d.get("output", {}).get("directory")

        if profile is not None:
            profile = dict(profile)
            kind = _enum(ProfileKind, profile.pop("kind", None), "[profile].kind")
            profile = ProfileCurve(kind, profile)

        return cls(
            spec=spec,
            schedule=ScheduleConfig.from_dict(_get(d, "schedule", "schedule")),
            start=_enum(
                StartKind, experiment.get("start", "dirac"), "[experiment].start"
            ),
            x0=x0,
            replicas=_int(experiment.get("replicas", 1), "[experiment].replicas", 1),
            seed=_int(experiment.get("seed", 0), "[experiment].seed", 0),
            workers=_int(experiment.get("workers", 1), "[experiment].workers", 1),
            t_max=_int(
                experiment.get("t_max", 10_000_000), "[experiment].t_max", 0
            ),
            modes=ModesConfig.from_dict(d.get("modes", {})),
            budget=BudgetConfig(
                max_buckets=_int(
                    budget.get("max_buckets", 50_000_000), "[budget].max_buckets", 1
                ),
                wall_seconds=float(budget.get("wall_seconds", 0.0)),
            ),
            profile=profile,
            regime=RegimeThresholds(**regime),
            output=output,
            raw=copy.deepcopy(dict(d)),
        )

    @classmethod
    def from_toml(cls, path: os.PathLike) -> ExperimentConfig:
        try:
            with open(path, "rb") as f:
                d = tomli.load(f)
        except tomli.TOMLDecodeError as e:
            raise ConfigurationError(f"{path}: {e}") from e
        except OSError as e:
            raise ConfigurationError(f"Cannot read {path}: {e}") from e

        return cls.from_dict(d)

    def to_dict(self) -> Dict[str, Any]:
        """The configuration as a document :meth:`from_dict` accepts"""
        spec = self.spec.to_dict()
        spec.pop("n")

        d: Dict[str, Any] = {
            "experiment": {
                "n": self.n,
                "start": self.start.value,
                "x0": self.x0,
                "replicas": self.replicas,
                "seed": self.seed,
                "workers": self.workers,
                "t_max": self.t_max,
            },
            "spec": spec,
            "schedule": self.schedule.to_dict(),
            "modes": self.modes.to_dict(),
            "budget": {
                "max_buckets": self.budget.max_buckets,
                "wall_seconds": self.budget.wall_seconds,
            },
            "regime": {
                "mu_ratio": self.regime.mu_ratio,
                "sigma_ratio": self.regime.sigma_ratio,
                "lindeberg": self.regime.lindeberg,
                "delta": self.regime.delta,
            },
        }
        if self.profile is not None:
            d["profile"] = self.profile.to_dict()
        if self.output is not None:
            d["output"] = {"directory": self.output}

        return d
