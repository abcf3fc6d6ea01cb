"""Cooper-pair beam splitter simulator.

Thin wrapper over the compiled extension: Hamiltonian assembly, effective
two-level/two-qubit reductions, Lindblad propagation and entanglement
quantifiers for the double-quantum-dot system.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
