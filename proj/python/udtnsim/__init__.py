"""Python bindings for the urban DTN simulator core."""

from ._core import (
    UdtnError,
    convert_hms,
    geodesic_distance,
    map_stats,
    run_batch,
)

__all__ = ["UdtnError", "convert_hms", "geodesic_distance", "map_stats", "run_batch"]
