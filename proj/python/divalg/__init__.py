"""Python access to the divalg core: toric section rings, generator certificates, counting witnesses."""

from ._divalg import *  # noqa: F401,F403
from ._divalg import DivalgError

__version__ = "0.1.0"
__all__ = [name for name in dir() if not name.startswith("_")]
