"""Sampling parts of uniformly random integer partitions: exact counts,
enumeration oracles, samplers, limit laws and saddle-point asymptotics."""

from .counting import CountTable, build_count_table, count_no_part_k, prob_multiplicity
from .errors import (
    EnumerationCapExceeded,
    PartitionError,
    ResourceCapExceeded,
    RetryLimitExceeded,
    TableTooSmall,
    ValidationError,
)
from .sampler import Partition, PartDraw, draw_part, make_rng, sample_uniform_exact, sample_uniform_fristedt

__version__ = "0.1.0"
