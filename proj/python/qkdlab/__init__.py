from ._qkdlab import *  # noqa: F401,F403
from ._qkdlab import __doc__  # noqa: F401
