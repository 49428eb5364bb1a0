from ._qotto import *  # noqa: F401,F403
from ._qotto import version

__version__ = version()
