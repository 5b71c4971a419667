# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from __future__ import annotations

import json
import math

import numpy as np

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Dict, Iterable, Mapping, Optional, Tuple

from blockavg.data import SpecKind
from blockavg.exceptions import DomainError, PreconditionError

#: Tolerance on the total probability of a pmf before renormalization
PMF_TOL = 1e-12


def _freeze(pmf: Dict[int, float]) -> Mapping[int, float]:
    return MappingProxyType(dict(sorted(pmf.items())))


@dataclass(frozen=True)
class BlockSizeSpec:
    r"""The law of the block size :math:`X` on :math:`\{2, \dots, n\}`.

    The pmf is stored sparsely, keyed by the block size, since typical laws
    have a tiny support while :math:`n` is large. Zero-probability entries are
    dropped. All the logarithms in the package are natural logarithms.

    Use the constructors :meth:`deterministic`, :meth:`two_point`,
    :meth:`table` and :meth:`uniform` instead of the raw initializer

    >>> spec = BlockSizeSpec.table(4, {2: 0.5, 4: 0.5})
    >>> spec.mean
    3.0

    Parameters
    ----------
    n
        The population size
    pmf
        A mapping :math:`k \mapsto p_X(k)`

    Attributes
    ----------
    kind
        How the spec was built. Used for serialization
    parameters
        The constructor parameters, echoed by :meth:`to_dict`
    """

    n: int
    pmf: Mapping[int, float]
    kind: SpecKind = SpecKind.TABLE
    parameters: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        n = self.n
        if int(n) != n or n < 2:
            raise DomainError(f"The population size must be an integer >= 2, got {n}")

        pmf: Dict[int, float] = {}
        for k, p in dict(self.pmf).items():
            if int(k) != k or not (2 <= k <= n):
                raise DomainError(
                    f"Block size {k} is outside the admissible support "
                    f"{{2, ..., {n}}}"
                )
            if not (p >= 0) or not math.isfinite(p):
                raise DomainError(f"Probability of block size {k} is {p}")
            if p > 0:
                pmf[int(k)] = pmf.get(int(k), 0.0) + float(p)

        total = math.fsum(pmf.values())
        if abs(total - 1) > PMF_TOL:
            raise DomainError(f"The block size probabilities sum to {total!r}, not 1")

        pmf = {k: p / total for k, p in pmf.items()}

        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "pmf", _freeze(pmf))
        object.__setattr__(self, "parameters", MappingProxyType(dict(self.parameters)))

    @classmethod
    def deterministic(cls, n: int, k: int) -> BlockSizeSpec:
        """Every block has size exactly ``k``"""
        if int(k) != k or not (2 <= k <= n):
            raise DomainError(
                f"Deterministic block size {k} is outside {{2, ..., {n}}}"
            )

        return cls(n, {int(k): 1.0}, SpecKind.DETERMINISTIC, {"k": int(k)})

    @classmethod
    def two_point(cls, n: int, a: float) -> BlockSizeSpec:
        r"""Blocks of size 2 with probability :math:`1 - a/n`, full blocks of
        size :math:`n` otherwise"""
        if not (0 <= a <= n):
            raise DomainError(f"The two-point weight a={a} is outside [0, {n}]")

        pmf: Dict[int, float] = {}
        pmf[2] = 1 - a / n
        pmf[n] = pmf.get(n, 0.0) + a / n

        return cls(n, pmf, SpecKind.TWO_POINT, {"a": float(a)})

    @classmethod
    def table(cls, n: int, table: Mapping[int, float]) -> BlockSizeSpec:
        return cls(
            n,
            dict(table),
            SpecKind.TABLE,
            {"table": [[int(k), float(p)] for k, p in sorted(table.items())]},
        )

    @classmethod
    def uniform(cls, n: int, ks: Iterable[int]) -> BlockSizeSpec:
        """Uniform law over the given block sizes"""
        ks = sorted(set(ks))
        if not ks:
            raise DomainError("At least one block size is needed")

        return cls.table(n, {k: 1 / len(ks) for k in ks})

    @property
    def support(self) -> np.ndarray:
        return np.fromiter(self.pmf.keys(), dtype=np.int64)

    @property
    def probs(self) -> np.ndarray:
        return np.fromiter(self.pmf.values(), dtype=float)

    @property
    def is_deterministic(self) -> bool:
        return len(self.pmf) == 1

    @property
    def k(self) -> Optional[int]:
        """The block size if the law is a point mass, ``None`` otherwise"""
        if self.is_deterministic:
            return next(iter(self.pmf))

        return None

    def expect(self, fun) -> float:
        r""":math:`\mathbb{E}[f(X)]` for a vectorized ``fun``"""
        ks = self.support.astype(float)
        return math.fsum(self.probs * fun(ks))

    @property
    def mean(self) -> float:
        return self.expect(lambda k: k)

    @property
    def mean_xlogx(self) -> float:
        r""":math:`\mathbb{E}[X \log X]`"""
        return self.expect(lambda k: k * np.log(k))

    @property
    def mean_xlog2x(self) -> float:
        r""":math:`\mathbb{E}[X \log^2 X]`"""
        return self.expect(lambda k: k * np.log(k) ** 2)

    def to_dict(self) -> Dict[str, Any]:
        """The ``[spec]`` table of an experiment configuration"""
        d: Dict[str, Any] = {"n": self.n, "kind": self.kind.value}
        d.update(self.parameters)

        return d

    @classmethod
    def from_dict(cls, d: Mapping[str, Any], n: Optional[int] = None) -> BlockSizeSpec:
        d = dict(d)
        n = int(d.pop("n", n))
        try:
            kind = SpecKind(d.get("kind", SpecKind.DETERMINISTIC.value))
        except ValueError:
            raise DomainError(f"Unknown block size spec kind {d.get('kind')!r}")

        if kind is SpecKind.DETERMINISTIC:
            return cls.deterministic(n, _required(d, "k"))
        elif kind is SpecKind.TWO_POINT:
            return cls.two_point(n, _required(d, "a"))

        table: Dict[int, float] = {}
        for k, p in _required(d, "table"):
            table[int(k)] = table.get(int(k), 0.0) + float(p)

        return cls.table(n, table)

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def loads(cls, text: str) -> BlockSizeSpec:
        return cls.from_dict(json.loads(text))

    def __reduce__(self):
        # Mapping proxies do not pickle and worker processes need the spec
        return (
            BlockSizeSpec,
            (self.n, dict(self.pmf), self.kind, dict(self.parameters)),
        )

    def __repr__(self) -> str:
        items = ", ".join(f"{k}: {p:.6g}" for k, p in self.pmf.items())
        return f"BlockSizeSpec(n={self.n}, pmf={{{items}}})"


def _required(d: Mapping[str, Any], key: str):
    try:
        return d[key]
    except KeyError:
        raise DomainError(f"Missing field {key!r} in block size spec")


def make_deterministic(n: int, k: int) -> BlockSizeSpec:
    return BlockSizeSpec.deterministic(n, k)


def make_two_point(n: int, a: float) -> BlockSizeSpec:
    return BlockSizeSpec.two_point(n, a)


@dataclass(frozen=True)
class SizeBiasedLaw:
    r"""The size-biased law :math:`p_Y(k) = k p_X(k)/\mathbb{E}[X]`.

    It is the law of the size of a block that hits a tagged chunk of mass
    """

    pmf: Mapping[int, float]

    def __post_init__(self):
        object.__setattr__(self, "pmf", _freeze(dict(self.pmf)))

    def __reduce__(self):
        return (SizeBiasedLaw, (dict(self.pmf),))

    @property
    def support(self) -> np.ndarray:
        return np.fromiter(self.pmf.keys(), dtype=np.int64)

    @property
    def probs(self) -> np.ndarray:
        return np.fromiter(self.pmf.values(), dtype=float)

    @property
    def log_support(self) -> np.ndarray:
        return np.log(self.support.astype(float))

    def moments(self) -> Tuple[float, float]:
        r"""Mean and variance of :math:`\log Y`"""
        logs = self.log_support
        mu = math.fsum(self.probs * logs)
        sigma2 = math.fsum(self.probs * (logs - mu) ** 2)

        return mu, sigma2

    def sample_log(self, rng: np.random.Generator, size: int) -> np.ndarray:
        r"""Draw ``size`` i.i.d. copies of :math:`\log Y`"""
        if len(self.pmf) == 1:
            return np.full(size, self.log_support[0])

        return rng.choice(self.log_support, size=size, p=self.probs)


def size_biased(spec: BlockSizeSpec) -> SizeBiasedLaw:
    """Size-bias the block size law

    >>> size_biased(BlockSizeSpec.table(4, {2: 0.5, 4: 0.5})).pmf[4]
    0.6666666666666666
    """
    mean = spec.mean
    weights = {k: k * p for k, p in spec.pmf.items()}
    total = math.fsum(weights.values())

    # total equals mean up to rounding; normalizing by the sum keeps the
    # pmf summing to one to machine precision
    if abs(total - mean) > 1e-9 * mean:
        raise PreconditionError(
            f"The size-biasing weights sum to {total!r}, not to the mean {mean!r}"
        )

    return SizeBiasedLaw({k: w / total for k, w in weights.items()})
