# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from .spec import (
    BlockSizeSpec,
    SizeBiasedLaw,
    make_deterministic,
    make_two_point,
    size_biased,
)
from .timescales import (
    MixingTimeBounds,
    TimescaleSet,
    mixing_time_bounds,
    ratio_bounds,
    timescales,
)
from .regime import (
    RegimeDiagnostics,
    RegimeThresholds,
    lindeberg_statistic,
    regime_classify,
)

__all__ = [
    "BlockSizeSpec",
    "SizeBiasedLaw",
    "make_deterministic",
    "make_two_point",
    "size_biased",
    "MixingTimeBounds",
    "TimescaleSet",
    "mixing_time_bounds",
    "ratio_bounds",
    "timescales",
    "RegimeDiagnostics",
    "RegimeThresholds",
    "lindeberg_statistic",
    "regime_classify",
]
