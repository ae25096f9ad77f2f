"""Python bindings for the toxspan C++ library."""

from ._toxspan import *  # noqa: F401,F403
from ._toxspan import __version__  # noqa: F401
