"""Fourier summation pairs: construction, verification and analytic diagnostics."""

from ._fspair import *  # noqa: F401,F403
from ._fspair import __version__  # noqa: F401
