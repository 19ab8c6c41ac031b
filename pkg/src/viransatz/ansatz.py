"""Parameter-free ground-state ansatz psi(x) = N exp(-S(x)).

The exponent is S(x) = 1/2 * integral_0^|x| sqrt(sum_k 8k a_2k t^2k) dt, so
that the log-derivative of the density f = psi^2 satisfies the pointwise
virial condition (d ln f / dx)^2 = 4 x U'(x).
"""

from __future__ import annotations

import bisect
import enum
import math
from dataclasses import dataclass, field
from typing import Callable

from .potential import EvenPolynomialPotential
from .quadrature import (
    DEFAULT_CONFIG,
    PDF_THRESHOLD,
    QuadratureConfig,
    find_truncation_radius,
    integrate,
    integrate_even,
)

__all__ = [
    "ExponentMode",
    "AnsatzWavefunction",
    "exponent_S",
    "exponent_S_closed_quartic",
    "exponent_S_harmonic",
    "exponent_S_pure_quartic",
    "build",
]


class ExponentMode(enum.Enum):
    CLOSED_HARMONIC = "closed_harmonic"
    CLOSED_QUARTIC = "closed_quartic"
    CLOSED_PURE_QUARTIC = "closed_pure_quartic"
    GENERAL_QUADRATURE = "general_quadrature"


def exponent_S(
    p: EvenPolynomialPotential, x: float, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """S(x) by direct quadrature of half the square-rooted radicand from 0 to |x|."""
    ax = abs(x)
    if ax == 0.0:
        return 0.0
    value, _ = integrate(lambda t: 0.5 * math.sqrt(max(p.radicand(t), 0.0)), 0.0, ax, cfg)
    return value


def exponent_S_harmonic(omega: float, x: float) -> float:
    return 0.5 * omega * x * x


def exponent_S_pure_quartic(lam: float, x: float) -> float:
    return math.sqrt(2.0 * lam) / 3.0 * abs(x) ** 3


def exponent_S_closed_quartic(omega: float, lam: float, x: float) -> float:
    """(omega^3 / 6 lam) * [(1 + 2 lam x^2 / omega^2)^(3/2) - 1].

    Written with expm1/log1p, which keeps full relative accuracy in the
    harmonic limit 2 lam x^2 / omega^2 -> 0 without a separate series branch.
    """
    z = 2.0 * lam * x * x / (omega * omega)
    return omega**3 / (6.0 * lam) * math.expm1(1.5 * math.log1p(z))


class _TabulatedExponent:
    """S(x) for arbitrary even potentials.

    After ``tabulate`` the half-line [0, R] is cut into equal segments with
    precomputed cumulative integrals; a lookup then only integrates from the
    nearest node at or below |x|.
    """

    def __init__(self, p: EvenPolynomialPotential, cfg: QuadratureConfig) -> None:
        self._p = p
        self._cfg = cfg
        self._nodes: list[float] = [0.0]
        self._values: list[float] = [0.0]

    def _slope(self, t: float) -> float:
        return 0.5 * math.sqrt(max(self._p.radicand(t), 0.0))

    def _segment(self, a: float, b: float) -> float:
        if b <= a:
            return 0.0
        value, _ = integrate(self._slope, a, b, self._cfg, min_depth=0)
        return value

    def tabulate(self, R: float, segments: int = 128) -> None:
        width = R / segments
        nodes = [i * width for i in range(segments)] + [R]
        partial = [self._segment(nodes[i], nodes[i + 1]) for i in range(segments)]
        values = [0.0]
        for seg in partial:
            values.append(values[-1] + seg)
        self._nodes, self._values = nodes, values

    def __call__(self, x: float) -> float:
        ax = abs(x)
        i = bisect.bisect_right(self._nodes, ax) - 1
        node = self._nodes[i]
        if ax == node:
            return self._values[i]
        return self._values[i] + self._segment(node, ax)


@dataclass(frozen=True)
class AnsatzWavefunction:
    """A built and normalized ansatz; immutable once returned by ``build``."""

    potential: EvenPolynomialPotential
    norm_constant: float
    truncation_radius: float
    quadrature: QuadratureConfig
    exponent_mode: ExponentMode
    _exponent: Callable[[float], float] = field(repr=False, compare=False)

    def exponent(self, x: float) -> float:
        return self._exponent(x)

    def exponent_derivative(self, x: float) -> float:
        """dS/dx = sign(x) * sqrt(radicand(x)) / 2 (analytic, no differencing)."""
        s = 0.5 * math.sqrt(max(self.potential.radicand(x), 0.0))
        return -s if x < 0 else s

    def psi(self, x: float) -> float:
        return self.norm_constant * math.exp(-self._exponent(x))

    def pdf(self, x: float) -> float:
        v = self.psi(x)
        return v * v

    def radius_for_power(self, power: int) -> float:
        """Half-range that keeps the tail of x^power * pdf negligible."""
        if power <= 0:
            return self.truncation_radius
        half = 0.5 * power

        def weighted(x: float) -> float:
            return self._exponent(x) - half * math.log1p(x)

        return max(self.truncation_radius, find_truncation_radius(weighted, PDF_THRESHOLD))


def _select_exponent(
    p: EvenPolynomialPotential, cfg: QuadratureConfig
) -> tuple[ExponentMode, Callable[[float], float]]:
    degrees = [d for d, _ in p.terms]
    if degrees == [2]:
        omega = math.sqrt(2.0 * p.coeff(2))
        return ExponentMode.CLOSED_HARMONIC, lambda x: exponent_S_harmonic(omega, x)
    if degrees == [4]:
        lam = 2.0 * p.coeff(4)
        return ExponentMode.CLOSED_PURE_QUARTIC, lambda x: exponent_S_pure_quartic(lam, x)
    if degrees == [2, 4] and p.coeff(2) > 0:
        omega, lam = p.quartic_parameters()  # type: ignore[misc]
        return ExponentMode.CLOSED_QUARTIC, lambda x: exponent_S_closed_quartic(omega, lam, x)
    return ExponentMode.GENERAL_QUADRATURE, _TabulatedExponent(p, cfg)


def build(
    p: EvenPolynomialPotential,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    force_quadrature: bool = False,
) -> AnsatzWavefunction:
    """Build the normalized ansatz for ``p``.

    Closed-form exponents are used for harmonic, quartic and pure quartic
    potentials unless ``force_quadrature`` is set.
    """
    if force_quadrature:
        mode, S = ExponentMode.GENERAL_QUADRATURE, _TabulatedExponent(p, cfg)
    else:
        mode, S = _select_exponent(p, cfg)
    if isinstance(S, _TabulatedExponent):
        R = find_truncation_radius(lambda x: exponent_S(p, x, cfg), PDF_THRESHOLD)
        S.tabulate(R)
    else:
        R = find_truncation_radius(S, PDF_THRESHOLD)
    Z = integrate_even(lambda x: math.exp(-2.0 * S(x)), R, cfg)
    return AnsatzWavefunction(
        potential=p,
        norm_constant=1.0 / math.sqrt(Z),
        truncation_radius=R,
        quadrature=cfg,
        exponent_mode=mode,
        _exponent=S,
    )
