"""dotcav: design toolkit for quantum-dot / photonic-crystal-cavity single-photon sources.

Figures of merit (Purcell enhancement, emission budget, strong-coupling
classification, indistinguishability and its optimum), cavity mode volume
from field grids, pulsed photon-statistics Monte Carlo (HBT g2, HOM overlap),
Lorentzian spectral fitting, side-coupled waveguide transmission, and
DBR-assisted extraction estimates. See the CLI (`dotcav --help`) for the
scenario runner.
"""

__version__ = "0.1.0"
