"""Expectation values over the ansatz density: moments, <U>, Fisher information."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .ansatz import AnsatzWavefunction
from .errors import InputError
from .quadrature import integrate_even

__all__ = [
    "FisherReport",
    "moment",
    "fisher_information_gradient",
    "fisher_information_virial",
    "potential_expectation",
    "fisher_report",
]


def moment(aw: AnsatzWavefunction, p: int) -> float:
    """<x^p> = integral of x^p f(x); odd powers vanish by symmetry."""
    if p < 0:
        raise InputError(f"moment power must be nonnegative, got {p}")
    if p % 2:
        return 0.0
    R = aw.radius_for_power(p)
    if p == 0:
        return integrate_even(aw.pdf, R, aw.quadrature)
    return integrate_even(lambda x: x**p * aw.pdf(x), R, aw.quadrature)


def fisher_information_gradient(aw: AnsatzWavefunction) -> float:
    """I = 4 integral psi'^2 dx = 4 integral S'(x)^2 f(x) dx."""

    def integrand(x: float) -> float:
        s1 = aw.exponent_derivative(x)
        return 4.0 * s1 * s1 * aw.pdf(x)

    R = aw.radius_for_power(aw.potential.degree)
    return integrate_even(integrand, R, aw.quadrature)


def fisher_information_virial(aw: AnsatzWavefunction) -> float:
    """I = 4 <x U'> = 8 sum_k k a_2k <x^2k>."""
    return 8.0 * sum((d // 2) * c * moment(aw, d) for d, c in aw.potential.terms)


def potential_expectation(aw: AnsatzWavefunction) -> float:
    return sum(c * moment(aw, d) for d, c in aw.potential.terms)


@dataclass(frozen=True)
class FisherReport:
    fisher_gradient: float
    fisher_virial: float
    moments: dict[int, float]
    cr_product: float
    discrepancy: float

    def to_json(self) -> dict[str, Any]:
        return {
            "I_gradient": self.fisher_gradient,
            "I_virial": self.fisher_virial,
            "moments": {str(k): v for k, v in sorted(self.moments.items())},
            "cr_product": self.cr_product,
        }


def fisher_report(aw: AnsatzWavefunction) -> FisherReport:
    """Both Fisher routes, even moments up to the potential's degree, and I <x^2>.

    The Cramer-Rao product uses the virial-route I.
    """
    moments = {k: moment(aw, k) for k in range(2, aw.potential.degree + 1, 2)}
    fv = 8.0 * sum((d // 2) * c * moments[d] for d, c in aw.potential.terms)
    fg = fisher_information_gradient(aw)
    return FisherReport(
        fisher_gradient=fg,
        fisher_virial=fv,
        moments=moments,
        cr_product=fv * moments[2],
        discrepancy=abs(fg - fv),
    )
