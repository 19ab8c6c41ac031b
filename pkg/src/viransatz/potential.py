"""Even polynomial potentials U(x) = sum_k a_2k x^2k (hbar = m = 1)."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

import numpy as np
from numpy.polynomial import polynomial as npoly

from .errors import NegativeRadicand, NoConfinement, OddDegree, PotentialError

__all__ = [
    "EvenPolynomialPotential",
    "validate",
    "make_quartic",
    "evaluate_U",
    "virial_integrand",
    "radicand",
    "potential_to_json",
    "potential_from_json",
]

# Relative slack for the radicand check; absorbs round-off at double roots.
_RADICAND_SLACK = 1e-12
_RADICAND_GRID = 4001


def _horner(coeffs: Sequence[float], u: float) -> float:
    """Evaluate sum_k coeffs[k] * u**k."""
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * u + c
    return acc


@dataclass(frozen=True)
class EvenPolynomialPotential:
    """Validated, canonical even polynomial potential.

    ``terms`` holds ``(degree, coefficient)`` pairs sorted by degree. Building
    an instance always runs the full validation, so every instance satisfies
    the confinement and radicand-nonnegativity invariants.
    """

    terms: tuple[tuple[int, float], ...]
    _u_coeffs: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _virial_coeffs: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        terms = _canonical_terms(self.terms)
        kmax = terms[-1][0] // 2
        u_coeffs = [0.0] * (kmax + 1)
        for degree, coeff in terms:
            u_coeffs[degree // 2] = coeff
        virial = [2.0 * k * c for k, c in enumerate(u_coeffs)]
        _check_radicand(terms, [4.0 * c for c in virial])
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_u_coeffs", tuple(u_coeffs))
        object.__setattr__(self, "_virial_coeffs", tuple(virial))

    @property
    def degree(self) -> int:
        return self.terms[-1][0]

    @property
    def coefficients(self) -> dict[int, float]:
        return dict(self.terms)

    def coeff(self, degree: int) -> float:
        return self.coefficients.get(degree, 0.0)

    def U(self, x: float) -> float:
        return _horner(self._u_coeffs, x * x)

    def virial(self, x: float) -> float:
        return _horner(self._virial_coeffs, x * x)

    def radicand(self, x: float) -> float:
        # Scaling by 4 is exact in binary64, so radicand == 4 * virial bit-for-bit.
        return 4.0 * self.virial(x)

    def quartic_parameters(self) -> tuple[float, float] | None:
        """Return ``(omega, lambda)`` if the potential is of the form w^2 x^2/2 + l x^4/2."""
        degrees = [d for d, _ in self.terms]
        if degrees not in ([2], [4], [2, 4]):
            return None
        a2, a4 = self.coeff(2), self.coeff(4)
        if a2 < 0 or a4 < 0:
            return None
        return math.sqrt(2.0 * a2), 2.0 * a4

    def to_json(self) -> dict[str, Any]:
        return {"terms": [{"degree": d, "coeff": c} for d, c in self.terms]}


def _canonical_terms(raw: Iterable[Sequence[Any]]) -> tuple[tuple[int, float], ...]:
    seen: dict[int, float] = {}
    for item in raw:
        degree, coeff = item
        if isinstance(degree, float):
            if not degree.is_integer():
                raise PotentialError(f"degree must be an integer, got {degree!r}")
            degree = int(degree)
        degree = int(degree)
        coeff = float(coeff)
        if not math.isfinite(coeff):
            raise PotentialError(f"coefficient of x^{degree} is not finite")
        if degree % 2:
            raise OddDegree(f"odd degree {degree} in an even potential")
        if degree <= 0:
            raise PotentialError(f"degree must be positive, got {degree}")
        if degree in seen:
            raise PotentialError(f"duplicate degree {degree}")
        seen[degree] = coeff
    terms = tuple(sorted((d, c) for d, c in seen.items() if c != 0.0))
    if not terms:
        raise NoConfinement("potential has no nonzero terms")
    if terms[-1][1] <= 0.0:
        raise NoConfinement(
            f"leading coefficient of x^{terms[-1][0]} must be positive, got {terms[-1][1]}"
        )
    return terms


def _check_radicand(terms: tuple[tuple[int, float], ...], rad: Sequence[float]) -> None:
    """Reject potentials whose radicand sum_k 8k a_2k u^k is negative for some u > 0."""
    if all(c >= 0.0 for _, c in terms):
        return
    # Lowest-order term dominates as u -> 0+.
    lowest = next(c for c in rad if c != 0.0)
    if lowest < 0.0:
        raise NegativeRadicand("radicand is negative near x = 0")
    lead = rad[-1]
    u_max = 2.0 * (1.0 + max(abs(c / lead) for c in rad[:-1]))
    grid = np.geomspace(1e-8, u_max, _RADICAND_GRID)
    crit = npoly.polyroots(npoly.polyder(np.asarray(rad, dtype=float)))
    crit = crit[np.abs(crit.imag) <= 1e-9 * np.maximum(1.0, np.abs(crit.real))].real
    crit = crit[(crit > 0.0) & (crit <= u_max)]
    u = np.concatenate([grid, crit])
    values = npoly.polyval(u, rad)
    scale = npoly.polyval(u, np.abs(rad))
    bad = values < -_RADICAND_SLACK * scale
    if np.any(bad):
        u_bad = float(u[bad][0])
        raise NegativeRadicand(
            f"radicand is negative at x = {math.sqrt(u_bad):.6g}; the ansatz is undefined"
        )


def validate(
    p: EvenPolynomialPotential | Iterable[Sequence[Any]],
) -> EvenPolynomialPotential:
    """Canonicalize a raw ``[(degree, coeff), ...]`` list into a validated potential.

    Raises:
        OddDegree: a term has odd degree.
        NoConfinement: no nonzero term, or nonpositive leading coefficient.
        NegativeRadicand: the ansatz radicand dips below zero (e.g. double wells).
    """
    if isinstance(p, EvenPolynomialPotential):
        return EvenPolynomialPotential(p.terms)
    return EvenPolynomialPotential(tuple(tuple(t) for t in p))


def make_quartic(omega: float, lam: float) -> EvenPolynomialPotential:
    """U = omega^2 x^2 / 2 + lam x^4 / 2."""
    if omega < 0 or lam < 0:
        raise PotentialError("omega and lambda must be nonnegative")
    if omega == 0 and lam == 0:
        raise NoConfinement("omega = lambda = 0 gives a free particle")
    return validate([(2, 0.5 * omega * omega), (4, 0.5 * lam)])


def evaluate_U(p: EvenPolynomialPotential, x: float) -> float:
    return p.U(x)


def virial_integrand(p: EvenPolynomialPotential, x: float) -> float:
    """x dU/dx."""
    return p.virial(x)


def radicand(p: EvenPolynomialPotential, x: float) -> float:
    """sum_k 8k a_2k x^2k, the expression under the ansatz square root."""
    return p.radicand(x)


def potential_to_json(p: EvenPolynomialPotential) -> str:
    return json.dumps(p.to_json(), sort_keys=True)


def potential_from_json(data: str | dict[str, Any]) -> EvenPolynomialPotential:
    if isinstance(data, str):
        data = json.loads(data)
    try:
        raw = [(t["degree"], t["coeff"]) for t in data["terms"]]
    except (KeyError, TypeError) as exc:
        raise PotentialError(f"malformed potential JSON: {exc}") from None
    return validate(raw)
