"""Dissipative GHZ-state preparation: models, dynamics, and parameter optimization."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
