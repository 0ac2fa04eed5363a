"""Lowest-unique-bid auction toolkit: simulation, equilibrium analysis,
strategy backtesting."""

from ._luba import *  # noqa: F401,F403
from ._luba import __version__  # noqa: F401
