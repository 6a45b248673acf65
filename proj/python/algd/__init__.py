"""Exact computational algebra for finite-dimensional Hopf algebroids."""

try:
    from ._algd import *  # noqa: F401,F403
    from ._algd import __version__  # noqa: F401
except ImportError:  # pragma: no cover - in-tree builds put _algd on sys.path
    from _algd import *  # noqa: F401,F403
    from _algd import __version__  # noqa: F401
