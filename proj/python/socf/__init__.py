"""Analysis of second-order cone functions f(x) = c^T x + d - ||A x + b||."""

from ._core import *  # noqa: F401,F403
from ._core import SocfError, __doc__  # noqa: F401

__version__ = "0.1.0"
