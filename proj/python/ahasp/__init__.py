"""Carrier/shuttle AGV scheduling: Petri-net decoding and deadlock-free ALNS."""

try:
    from ._ahasp import *  # noqa: F401,F403
    from ._ahasp import __doc__ as _doc
except ImportError:  # in-tree test runs put the extension on sys.path directly
    from _ahasp import *  # noqa: F401,F403
    from _ahasp import __doc__ as _doc

__doc__ = _doc
