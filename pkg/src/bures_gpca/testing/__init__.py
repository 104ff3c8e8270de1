"""Test harnesses for bures-gpca.

Seeded random generators and brute-force oracles shared by the test suite.

Generators
----------
random_spd, random_rotation, random_invertible, random_horizontal,
random_commuting_pair, random_segment

Oracles
-------
min_fiber_distance
    Fiber distance minimized over random rotations.
planar_rotation_grid
    Exhaustive search over planar rotations (d = 2).
projection_time_grid
    Exhaustive search of the closest point on a lifted line.
line_fit_grid
    Exhaustive (angle, offset) search of the clipped 1D line fit.
max_line_deviation
    Straightness of a planar curve.
"""

from bures_gpca.testing.oracles import (
    line_fit_grid,
    max_line_deviation,
    min_fiber_distance,
    planar_rotation_grid,
    projection_time_grid,
)
from bures_gpca.testing.random import (
    random_commuting_pair,
    random_horizontal,
    random_invertible,
    random_rotation,
    random_segment,
    random_spd,
    random_symmetric,
)

__all__ = [
    "line_fit_grid",
    "max_line_deviation",
    "min_fiber_distance",
    "planar_rotation_grid",
    "projection_time_grid",
    "random_commuting_pair",
    "random_horizontal",
    "random_invertible",
    "random_rotation",
    "random_segment",
    "random_spd",
    "random_symmetric",
]
