# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    # This is a trick to enable mypy to evaluate the Enum as a standard
    # library Enum for type checking but we use `aenum` in the running code
    from enum import Enum, IntEnum  # pragma: no cover
else:
    from aenum import Enum, IntEnum


class SpecKind(Enum):
    """The serialization kinds of a :class:`~.BlockSizeSpec`"""

    DETERMINISTIC = "deterministic"
    TWO_POINT = "two_point"
    TABLE = "table"


class RegimeLabel(Enum):
    """Finite-n heuristic labels returned by :func:`~.regime_classify`"""

    CUTOFF = "cutoff-candidate"
    WINDOW = "window-candidate"
    NO_CUTOFF = "no-cutoff-candidate"


class Trichotomy(Enum):
    """Behaviours of the two-point family as its heavy-block weight grows"""

    CUTOFF = "cutoff"
    HALF_CUTOFF = "half_cutoff"
    METASTABLE = "metastable"


class StartKind(Enum):
    DIRAC = "dirac"
    ETA_START = "eta_start"


class LedgerMode(Enum):
    AGGREGATE = "aggregate"
    LITERAL = "literal"


class ProfileKind(Enum):
    GAUSSIAN_CUTOFF = "gaussian_cutoff"
    POISSON_NONCUTOFF = "poisson_noncutoff"
    EXPECTED_POISSON = "expected_poisson"
    METASTABLE_EXP = "metastable_exp"
    HALF_CUTOFF = "half_cutoff"
    LINEAR = "linear"


class StreamPurpose(IntEnum):
    """The disjoint random streams a replica draws from. The value enters the
    spawn key of the :class:`numpy.random.SeedSequence`, so it must never
    change for a given purpose"""

    SIZES = 0
    SUBSETS = 1
    CHUNKS = 2
    DIRECT = 3
    LEDGER = 4
