"""Random walks driven by Bernoulli, Polya-Eggenberger and Friedman urns."""

__version__ = "0.1.0"

from .urn import (
    BLUE,
    WHITE,
    Color,
    Kind,
    UrnError,
    UrnScheme,
    UrnState,
    apply_draw,
    blue_probability,
    new_urn,
    sample_draw,
    sequence_probability,
    white_probability,
)
from .walk import (
    Trajectory,
    TrajectoryError,
    WalkState,
    map_from_simple_2d,
    map_to_simple_2d,
    new_walk,
    step,
    trajectory_probability,
)
