"""Legendre structure linking Fisher information, moments and Lagrange multipliers.

Multipliers are identified with potential coefficients (lambda_2k = -8 a_2k),
the normalization multiplier is alpha = I - sum_k lambda_k <x^k> = 8E, and
the Fisher information as a function of the moments obeys the linear PDE

    I = -sum_k (k/2) <x^k> dI/d<x^k>,

solved by I = sum_k C_k |<x^k>|^(-2/k).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional

from .ansatz import AnsatzWavefunction
from .errors import InputError, NonPositiveMoment, ZeroMoment
from .observables import fisher_information_virial, moment
from .potential import EvenPolynomialPotential

__all__ = [
    "LegendreState",
    "multipliers_from_potential",
    "legendre_state",
    "fim_pde_solution",
    "fim_pde_residual",
    "multipliers_from_fim",
    "reciprocity_check_harmonic",
]

_STEP_FLOOR = 1e-8


def multipliers_from_potential(p: EvenPolynomialPotential) -> dict[int, float]:
    return {d: -8.0 * c for d, c in p.terms}


@dataclass(frozen=True)
class LegendreState:
    multipliers: dict[int, float]
    alpha: float
    moments: dict[int, float]
    fisher: float

    def to_json(self) -> dict[str, Any]:
        return {
            "alpha": self.alpha,
            "multipliers": {str(k): v for k, v in sorted(self.multipliers.items())},
            "I": self.fisher,
            "moments": {str(k): v for k, v in sorted(self.moments.items())},
        }


def legendre_state(aw: AnsatzWavefunction) -> LegendreState:
    multipliers = multipliers_from_potential(aw.potential)
    moments = {k: moment(aw, k) for k in multipliers}
    fisher = fisher_information_virial(aw)
    alpha = fisher - sum(lam * moments[k] for k, lam in multipliers.items())
    return LegendreState(multipliers=multipliers, alpha=alpha, moments=moments, fisher=fisher)


def _check_keys(constants: Mapping[int, float], moments: Mapping[int, float]) -> None:
    if set(constants) != set(moments):
        raise InputError(
            f"constants {sorted(constants)} and moments {sorted(moments)} cover different powers"
        )
    for k, c in constants.items():
        if k <= 0:
            raise InputError(f"moment power must be positive, got {k}")
        if not c > 0:
            raise InputError(f"C_{k} must be positive, got {c}")


def fim_pde_solution(constants: Mapping[int, float], moments: Mapping[int, float]) -> float:
    """I = sum_k C_k |<x^k>|^(-2/k)."""
    _check_keys(constants, moments)
    total = 0.0
    for k, c in constants.items():
        m = moments[k]
        if m == 0:
            raise ZeroMoment(f"<x^{k}> is zero; I is singular there")
        total += c * abs(m) ** (-2.0 / k)
    return total


def _fd_step(value: float, step: float) -> float:
    return max(step * abs(value), _STEP_FLOOR)


def fim_pde_residual(
    constants: Mapping[int, float],
    moments: Mapping[int, float],
    step: float,
    fisher: Optional[Callable[[Mapping[int, float]], float]] = None,
) -> float:
    """I + sum_k (k/2) <x^k> dI/d<x^k>, derivatives by central differences.

    ``fisher`` maps a moment dict to I; it defaults to ``fim_pde_solution``
    with the given constants, for which the residual is zero up to O(step^2).
    """
    if not step > 0:
        raise InputError("step must be positive")
    if fisher is None:
        _check_keys(constants, moments)

        def fisher(ms: Mapping[int, float]) -> float:
            return fim_pde_solution(constants, ms)

    base = dict(moments)
    total = fisher(base)
    for k, m in base.items():
        h = _fd_step(m, step)
        up, down = dict(base), dict(base)
        up[k] = m + h
        down[k] = m - h
        deriv = (fisher(up) - fisher(down)) / (2.0 * h)
        total += 0.5 * k * m * deriv
    return total


def multipliers_from_fim(
    constants: Mapping[int, float], moments: Mapping[int, float]
) -> dict[int, float]:
    """lambda_k = dI/d<x^k> = -(2/k) C_k <x^k>^(-(2+k)/k), for positive moments."""
    _check_keys(constants, moments)
    out = {}
    for k, c in constants.items():
        m = moments[k]
        if not m > 0:
            raise NonPositiveMoment(f"<x^{k}> = {m} is not positive")
        out[k] = -(2.0 / k) * c * m ** (-(2.0 + k) / k)
    return out


def reciprocity_check_harmonic(omega: float, step: float) -> tuple[float, float, float]:
    """Check d alpha / d lambda_2 = -<x^2> on the harmonic closed forms.

    With I = <x^2>^-1 and lambda_2 = -<x^2>^-2 one has alpha(lambda_2) =
    2 sqrt(-lambda_2) and <x^2> = 1 / (2 omega). Returns ``(lhs, rhs, |lhs - rhs|)``
    where lhs is a central difference of alpha at lambda_2 = -4 omega^2.
    """
    if not omega > 0:
        raise InputError("omega must be positive")
    lam2 = -4.0 * omega * omega
    h = _fd_step(lam2, step)

    def alpha(lam: float) -> float:
        return 2.0 * math.sqrt(-lam)

    lhs = (alpha(lam2 + h) - alpha(lam2 - h)) / (2.0 * h)
    rhs = -1.0 / (2.0 * omega)
    return lhs, rhs, abs(lhs - rhs)
