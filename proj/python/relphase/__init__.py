"""Geometric phases of relative states in bipartite quantum systems.

The heavy lifting lives in the compiled extension ``relphase._relphase``;
this package re-exports its surface: state construction and relative-state
maps, discrete Bargmann chain phases, null-phase-curve paths with the
connection-one-form integral, the two-party interference protocol simulation,
Uhlmann holonomies, and the scenario front end shared with the CLI.
"""

from ._relphase import *  # noqa: F401,F403
from ._relphase import __all__, __version__  # noqa: F401
