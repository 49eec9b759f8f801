"""Python bindings for the DSA-aware multiple patterning toolkit."""

from ._dsamp import *  # noqa: F401,F403
from ._dsamp import __version__  # noqa: F401
