"""Python bindings for the cantorv engine."""

from ._cantorv import *  # noqa: F401,F403
from ._cantorv import __doc__  # noqa: F401
