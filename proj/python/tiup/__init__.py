"""Tautology-driven processor verification: python surface.

Thin re-export of the _tiup extension module. The heavy lifting (formula
parsing and evaluation, the exhaustive oracle, template synthesis, the RV32I
compiler, the pipelined simulator, and the verification campaign) lives in
the C++ core.
"""

try:
    from ._tiup import *  # noqa: F401,F403  (wheel layout)
    from ._tiup import __version__  # noqa: F401
except ImportError:
    from _tiup import *  # noqa: F401,F403  (in-tree build on PYTHONPATH)
    from _tiup import __version__  # noqa: F401
