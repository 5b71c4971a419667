# SPDX-FileCopyrightText: 2024 BlockAvgPy Development Team
#
# SPDX-License-Identifier: BSD-3-Clause

from .ledger import (
    LITERAL_MAX_N,
    AggregateLedger,
    LiteralLedger,
    Pile,
    PileLedger,
    default_floor,
    ledger_step,
)
from .chunk import (
    ChunkMark,
    ChunkTracker,
    MeetingEstimate,
    chunk_step,
    expected_glb,
    literal_mark_step,
    meeting_probe,
    pile_size_at_least,
    pile_size_law,
    pile_size_tail,
    sample_pile_size_direct,
    sample_pile_sizes_direct,
)
from .diagnostics import (
    GenerationHistogram,
    estimate_buckets,
    generation_histogram,
    generation_tv_upper_bound,
    glb_diagnostic,
    small_pile_masses,
    thresholded_mass,
    triangle_upper_bound,
)

__all__ = [
    "LITERAL_MAX_N",
    "AggregateLedger",
    "LiteralLedger",
    "Pile",
    "PileLedger",
    "default_floor",
    "ledger_step",
    "ChunkMark",
    "ChunkTracker",
    "MeetingEstimate",
    "chunk_step",
    "expected_glb",
    "literal_mark_step",
    "meeting_probe",
    "pile_size_at_least",
    "pile_size_law",
    "pile_size_tail",
    "sample_pile_size_direct",
    "sample_pile_sizes_direct",
    "GenerationHistogram",
    "estimate_buckets",
    "generation_histogram",
    "generation_tv_upper_bound",
    "glb_diagnostic",
    "small_pile_masses",
    "thresholded_mass",
    "triangle_upper_bound",
]
