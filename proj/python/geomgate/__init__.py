"""Geometric single- and two-qubit gate synthesis and simulation.

Frequencies are angular (rad/s) unless a string with a unit is parsed through
``parse_frequency``. Schedules are lists of ``(duration_s, rabi_rad_per_s, phase_rad)``.
"""

from ._geomgate import *  # noqa: F401,F403
from ._geomgate import GeomgateError

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
