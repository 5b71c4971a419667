# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from .sampling import BlockSample, BlockSampler
from .dynamics import (
    average_block,
    entropy_lower_bound,
    entropy_upper_bound,
    expected_l2_sq,
    l2_sq,
    max_mass,
    relative_entropy,
    step,
    tv_distance,
)

__all__ = [
    "BlockSample",
    "BlockSampler",
    "average_block",
    "entropy_lower_bound",
    "entropy_upper_bound",
    "expected_l2_sq",
    "l2_sq",
    "max_mass",
    "relative_entropy",
    "step",
    "tv_distance",
]
