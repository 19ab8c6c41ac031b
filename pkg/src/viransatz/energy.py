"""Ground-state energy from the ansatz by the Schrodinger and Fisher procedures."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Optional

import numpy as np

from .ansatz import AnsatzWavefunction, build
from .errors import DomainError
from .observables import (
    fisher_information_gradient,
    moment,
    potential_expectation,
)
from .potential import EvenPolynomialPotential
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, integrate_even
from . import reference_solver

__all__ = [
    "EnergyReport",
    "energy_schrodinger",
    "energy_schrodinger_quartic_integrand",
    "energy_fisher",
    "energy_report",
    "ansatz_overlap",
]


def energy_schrodinger(aw: AnsatzWavefunction) -> float:
    """<psi|H|psi> = <T> + <U>, with <T> = (1/2) integral psi'^2 = I / 8."""
    return fisher_information_gradient(aw) / 8.0 + potential_expectation(aw)


def energy_schrodinger_quartic_integrand(
    omega: float, lam: float, aw: AnsatzWavefunction
) -> float:
    """<psi|H|psi> for the quartic ansatz through the explicit local energy H psi / psi.

    H psi / psi = (w/2) sqrt(1+z) + (l/w) x^2 / sqrt(1+z) - (l/2) x^4,
    z = 2 l x^2 / w^2.
    """
    if not omega > 0:
        raise DomainError("the quartic local-energy route needs omega > 0")
    c = 2.0 * lam / (omega * omega)

    def integrand(x: float) -> float:
        x2 = x * x
        root = math.sqrt(1.0 + c * x2)
        local = 0.5 * omega * root + lam / omega * x2 / root - 0.5 * lam * x2 * x2
        return local * aw.pdf(x)

    return integrate_even(integrand, aw.radius_for_power(4), aw.quadrature)


def energy_fisher(aw: AnsatzWavefunction) -> float:
    """E = alpha / 8 = sum_k (k + 1) a_2k <x^2k>; moments only, no Hamiltonian."""
    return sum((d // 2 + 1) * c * moment(aw, d) for d, c in aw.potential.terms)


@dataclass(frozen=True)
class EnergyReport:
    potential: EvenPolynomialPotential
    e_schrodinger: float
    e_fisher: float
    e_reference: Optional[float]
    gap_ansatz_vs_reference: Optional[float]
    procedures_discrepancy: float
    cr_product: float

    def to_json(self) -> dict[str, Any]:
        quartic = self.potential.quartic_parameters()
        omega, lam = quartic if quartic else (None, None)
        return {
            "omega": omega,
            "lambda": lam,
            "E_schrodinger": self.e_schrodinger,
            "E_fisher": self.e_fisher,
            "E_num": self.e_reference,
            "cr_product": self.cr_product,
            "potential": self.potential.to_json(),
        }


def energy_report(
    p: EvenPolynomialPotential,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    with_reference: bool = True,
    *,
    grid_points: int = reference_solver.DEFAULT_POINTS,
    half_width: float | None = None,
) -> EnergyReport:
    aw = build(p, cfg)
    e_s = energy_schrodinger(aw)
    e_f = energy_fisher(aw)
    m2 = moment(aw, 2)
    i_v = 8.0 * sum((d // 2) * c * moment(aw, d) for d, c in p.terms)
    e_ref = gap = None
    if with_reference:
        e_ref = reference_solver.reference_energy(
            p, e_hint=e_f, points=grid_points, half_width=half_width
        )
        gap = e_f - e_ref
    return EnergyReport(
        potential=p,
        e_schrodinger=e_s,
        e_fisher=e_f,
        e_reference=e_ref,
        gap_ansatz_vs_reference=gap,
        procedures_discrepancy=abs(e_s - e_f),
        cr_product=i_v * m2,
    )


def ansatz_overlap(aw: AnsatzWavefunction, grid: reference_solver.GridSpec) -> float:
    """<psi_ansatz | psi_exact> as a grid inner product with the oracle eigenvector."""
    x, psi_exact = reference_solver.ground_state_wavefunction(aw.potential, grid)
    psi_a = np.array([aw.psi(float(xi)) for xi in x])
    return float(np.dot(psi_a, psi_exact) * grid.spacing)
