"""Python bindings for the renyi_sharp C++ library."""

from ._core import (
    amplitude_damping_choi,
    capacity_bound,
    capacity_curve,
    d_classical,
    d_geometric,
    d_max,
    d_sandwiched,
    d_sharp_channel,
    d_sharp_state,
    depolarizing_choi,
    diamond_norm,
    hierarchy_bound,
    mean,
)

__all__ = [
    "amplitude_damping_choi",
    "capacity_bound",
    "capacity_curve",
    "d_classical",
    "d_geometric",
    "d_max",
    "d_sandwiched",
    "d_sharp_channel",
    "d_sharp_state",
    "depolarizing_choi",
    "diamond_norm",
    "hierarchy_bound",
    "mean",
]
