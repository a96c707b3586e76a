"""Finite representations of infinite objects and the exact decision kernel."""

from .measures import MeasurableSet, contract_set, full_half_line, make_measurable_set, unit_blocks
from .partitions import Partition, interval_partition_of, make_partition, minima_set
from .profiles import CountProfile, colored_count_profile, interval_count_profile, measure_profile
from .sets import (
    EPWord,
    OmegaSet,
    RangeOf,
    full_set,
    make_omega_set,
    range_set,
    sample_enumeration,
    set_count_in,
    set_enumerate,
)
from .streams import (
    DEFAULT_BUDGET,
    EPDiff,
    Program,
    Ramp,
    StreamTraits,
    UpStream,
    classify_stream,
    identity_stream,
    make_up_stream,
    offset_values,
    recurrence_program,
    reindex_stream,
    scale_values,
    stream_eval,
)

__all__ = [
    "CountProfile",
    "DEFAULT_BUDGET",
    "EPDiff",
    "EPWord",
    "MeasurableSet",
    "OmegaSet",
    "Partition",
    "Program",
    "Ramp",
    "RangeOf",
    "StreamTraits",
    "UpStream",
    "classify_stream",
    "colored_count_profile",
    "contract_set",
    "full_half_line",
    "full_set",
    "identity_stream",
    "interval_count_profile",
    "interval_partition_of",
    "make_measurable_set",
    "make_omega_set",
    "make_partition",
    "make_up_stream",
    "measure_profile",
    "minima_set",
    "offset_values",
    "range_set",
    "recurrence_program",
    "reindex_stream",
    "sample_enumeration",
    "scale_values",
    "set_count_in",
    "set_enumerate",
    "stream_eval",
    "unit_blocks",
]
