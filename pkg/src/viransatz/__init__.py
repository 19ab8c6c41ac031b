"""Parameter-free, virial-motivated ground-state ansatz for even polynomial potentials."""

from .ansatz import AnsatzWavefunction, ExponentMode, build
from .energy import EnergyReport, energy_fisher, energy_report, energy_schrodinger
from .legendre import LegendreState, legendre_state
from .observables import FisherReport, fisher_report, moment
from .potential import EvenPolynomialPotential, make_quartic, validate
from .quadrature import QuadratureConfig

__all__ = [
    "AnsatzWavefunction",
    "EnergyReport",
    "EvenPolynomialPotential",
    "ExponentMode",
    "FisherReport",
    "LegendreState",
    "QuadratureConfig",
    "build",
    "energy_fisher",
    "energy_report",
    "energy_schrodinger",
    "fisher_report",
    "legendre_state",
    "make_quartic",
    "moment",
    "validate",
]
