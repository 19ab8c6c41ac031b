"""Property checks run by ``viransatz verify``."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import reference_solver
from .ansatz import AnsatzWavefunction, build
from .energy import (
    energy_fisher,
    energy_schrodinger,
    energy_schrodinger_quartic_integrand,
)
from .legendre import fim_pde_residual, legendre_state, reciprocity_check_harmonic
from .observables import fisher_report, moment
from .potential import EvenPolynomialPotential
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, find_truncation_radius


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float


def plot_radius(aw: AnsatzWavefunction, decades: float = 16.0) -> float:
    """Half-width beyond which pdf has dropped ``decades`` orders below its peak."""
    return find_truncation_radius(aw.exponent, 0.5 * decades * math.log(10.0))


def virial_residual(aw: AnsatzWavefunction, samples: int = 100, seed: int = 0) -> float:
    """Largest relative gap between S' = sqrt(radicand)/2 and central differences of S."""
    rng = np.random.default_rng(seed)
    R = plot_radius(aw)
    worst = 0.0
    for x in rng.uniform(0.05 * R, R, samples):
        x = float(x)
        h = 1e-4 * x
        fd = (aw.exponent(x + h) - aw.exponent(x - h)) / (2.0 * h)
        exact = aw.exponent_derivative(x)
        worst = max(worst, abs(fd - exact) / abs(exact))
    return worst


def run_checks(
    p: EvenPolynomialPotential,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    with_reference: bool = True,
) -> list[Check]:
    aw = build(p, cfg)
    checks: list[Check] = []

    def add(name: str, value: float, tol: float, ok: bool | None = None) -> None:
        passed = value <= tol if ok is None else ok
        checks.append(Check(name, bool(passed), float(value), tol))

    add("normalization", abs(moment(aw, 0) - 1.0), 1e-9)
    xs = np.linspace(0.0, plot_radius(aw), 41)[1:]
    add("evenness", max(abs(aw.pdf(x) - aw.pdf(-x)) for x in xs), 0.0)
    add("pointwise_virial", virial_residual(aw), 1e-6)

    fr = fisher_report(aw)
    add("fisher_route_identity", fr.discrepancy, 1e-8)
    add("cramer_rao_bound", fr.cr_product, 1.0 - 1e-9, ok=fr.cr_product >= 1.0 - 1e-9)

    e_f = energy_fisher(aw)
    e_s = energy_schrodinger(aw)
    add("procedure_identity", abs(e_s - e_f), 1e-8)
    quartic = p.quartic_parameters()
    if quartic and quartic[0] > 0:
        e_q = energy_schrodinger_quartic_integrand(quartic[0], quartic[1], aw)
        add("quartic_local_energy", abs(e_q - e_f), 1e-8)

    ls = legendre_state(aw)
    add("alpha_equals_8E", abs(ls.alpha - 8.0 * e_f), 1e-9)
    constants = {k: 1.0 for k in fr.moments}
    add("fim_pde_residual", abs(fim_pde_residual(constants, fr.moments, 1e-5)), 1e-7)
    omega = math.sqrt(2.0 * p.coeff(2)) if p.coeff(2) > 0 else 1.0
    add("reciprocity_harmonic", reciprocity_check_harmonic(omega, 1e-5)[2], 1e-8)

    if with_reference:
        e_ref = reference_solver.reference_energy(p, e_hint=e_f)
        add("variational_bound", e_ref - e_f, 1e-9)
    return checks
