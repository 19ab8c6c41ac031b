"""Finite-difference oracle for the 1D ground state.

H = -1/2 d^2/dx^2 + U on a uniform Dirichlet grid gives a symmetric
tridiagonal matrix; its smallest eigenvalue is isolated by Sturm-sequence
bisection and two grid levels are Richardson-extrapolated.

Deliberately independent of the quadrature and ansatz modules: the only
thing taken from the potential object is its list of terms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_banded

from .errors import ConvergenceFailure, DomainTooSmall, InputError
from .potential import EvenPolynomialPotential

__all__ = [
    "GridSpec",
    "DEFAULT_POINTS",
    "ESCALATED_POINTS",
    "choose_domain",
    "sturm_count",
    "lowest_eigenvalue",
    "grid_energies",
    "ground_state_energy",
    "ground_state_wavefunction",
    "reference_energy",
]

DEFAULT_POINTS = 16385
ESCALATED_POINTS = 65537
WALL_AMPLITUDE = 1e-12
_MAX_BISECTIONS = 200


@dataclass(frozen=True)
class GridSpec:
    half_width: float
    points: int = DEFAULT_POINTS

    def __post_init__(self) -> None:
        if not self.half_width > 0:
            raise InputError(f"half_width must be positive, got {self.half_width}")
        if self.points < 3 or self.points % 2 == 0:
            raise InputError(f"points must be odd and >= 3, got {self.points}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / (self.points - 1)

    def nodes(self) -> np.ndarray:
        return np.linspace(-self.half_width, self.half_width, self.points)

    def refined(self) -> GridSpec:
        return GridSpec(self.half_width, 2 * self.points - 1)


def _U(p: EvenPolynomialPotential, x: np.ndarray | float) -> np.ndarray | float:
    x2 = np.asarray(x, dtype=float) ** 2
    total = np.zeros_like(x2)
    for degree, coeff in p.terms:
        total = total + coeff * x2 ** (degree // 2)
    return total


def choose_domain(p: EvenPolynomialPotential, e_hint: float) -> float:
    """Smallest power-of-two half-width L with U(L) >= 10 e_hint + 50."""
    target = 10.0 * e_hint + 50.0
    L = 1.0
    while _U(p, L) < target:
        L *= 2.0
    while _U(p, 0.5 * L) >= target:
        L *= 0.5
    return L


def _tridiagonal(p: EvenPolynomialPotential, grid: GridSpec) -> tuple[np.ndarray, float]:
    """Interior diagonal and the (constant) off-diagonal of the discrete Hamiltonian."""
    h = grid.spacing
    x = grid.nodes()[1:-1]
    return 1.0 / (h * h) + _U(p, x), -0.5 / (h * h)


def sturm_count(diag: list[float], off: float, sigma: float) -> int:
    """Number of eigenvalues strictly below ``sigma`` (LDL^T pivot signs)."""
    off2 = off * off
    count = 0
    # Seeding with q = inf makes the first step q = d_0 - sigma.
    q = math.inf
    for d in diag:
        q = d - sigma - off2 / q
        if q < 0.0:
            count += 1
        elif q == 0.0:
            q = -1e-300
            count += 1
    return count


def _bisect(diag: list[float], off: float, lo: float, hi: float) -> float:
    for _ in range(_MAX_BISECTIONS):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= 4e-16 * max(abs(lo), abs(hi)):
            return 0.5 * (lo + hi)
        if sturm_count(diag, off, mid) >= 1:
            hi = mid
        else:
            lo = mid
    raise ConvergenceFailure("Sturm bisection did not converge")


def lowest_eigenvalue(
    p: EvenPolynomialPotential, grid: GridSpec, hint: float | None = None
) -> float:
    """Smallest eigenvalue of the discrete Hamiltonian on one grid."""
    diag_arr, off = _tridiagonal(p, grid)
    diag = diag_arr.tolist()
    if hint is not None:
        delta = 1e-3 * max(1.0, abs(hint))
        lo, hi = hint - delta, hint + delta
        if sturm_count(diag, off, lo) == 0 and sturm_count(diag, off, hi) >= 1:
            return _bisect(diag, off, lo, hi)
    # Gershgorin lower bound; every row has |off| on both sides except the ends.
    lo = float(diag_arr.min()) - 2.0 * abs(off)
    step = 1.0
    hi = lo + step
    while sturm_count(diag, off, hi) == 0:
        step *= 2.0
        hi = lo + step
        if step > 1e300:
            raise ConvergenceFailure("could not bracket the lowest eigenvalue")
    return _bisect(diag, off, lo, hi)


def grid_energies(
    p: EvenPolynomialPotential, grid: GridSpec, hint: float | None = None
) -> tuple[float, float, float]:
    """``(E_h, E_h/2, (4 E_h/2 - E_h) / 3)``."""
    e_h = lowest_eigenvalue(p, grid, hint)
    e_h2 = lowest_eigenvalue(p, grid.refined(), e_h)
    return e_h, e_h2, (4.0 * e_h2 - e_h) / 3.0


def ground_state_energy(p: EvenPolynomialPotential, grid: GridSpec) -> float:
    return grid_energies(p, grid)[2]


def _inverse_iteration(
    p: EvenPolynomialPotential, grid: GridSpec, energy: float, sweeps: int = 3
) -> np.ndarray:
    diag, off = _tridiagonal(p, grid)
    m = diag.size
    shift = energy - 1e-10 * max(1.0, abs(energy))
    ab = np.empty((3, m))
    ab[0, :] = off
    ab[1, :] = diag - shift
    ab[2, :] = off
    x = grid.nodes()[1:-1]
    v = np.exp(-0.5 * x * x)
    for _ in range(sweeps):
        v = solve_banded((1, 1), ab, v)
        v /= np.max(np.abs(v))
    psi = np.concatenate([[0.0], v, [0.0]])
    psi /= math.sqrt(float(np.dot(psi, psi)) * grid.spacing)
    if psi[grid.points // 2] < 0:
        psi = -psi
    return psi


def _wall_amplitude(psi: np.ndarray) -> float:
    return float(max(abs(psi[1]), abs(psi[-2])))


def ground_state_wavefunction(
    p: EvenPolynomialPotential, grid: GridSpec
) -> tuple[np.ndarray, np.ndarray]:
    """Grid nodes and the normalized (sum psi_i^2 h = 1), positive ground state.

    Raises:
        DomainTooSmall: the eigenvector does not decay to 1e-12 at the walls.
    """
    energy = lowest_eigenvalue(p, grid)
    psi = _inverse_iteration(p, grid, energy)
    amp = _wall_amplitude(psi)
    if amp > WALL_AMPLITUDE:
        raise DomainTooSmall(
            f"ground state amplitude {amp:.3g} at x = +-{grid.half_width} exceeds {WALL_AMPLITUDE}"
        )
    return grid.nodes(), psi


def reference_energy(
    p: EvenPolynomialPotential,
    e_hint: float | None = None,
    points: int = DEFAULT_POINTS,
    half_width: float | None = None,
) -> float:
    """Richardson-extrapolated ground-state energy with automatic domain sizing.

    The half-width doubles until the potential wall clears 10 E + 50 and the
    eigenvector has decayed below 1e-12 at the walls; the grid escalates to
    ``ESCALATED_POINTS`` when the two Richardson levels differ by more than 1e-6.
    A caller-supplied ``half_width`` is used as is.
    """
    hint = e_hint if e_hint is not None and e_hint > 0 else 1.0
    L = half_width if half_width is not None else choose_domain(p, hint)
    for _ in range(40):
        grid = GridSpec(L, points)
        e_h, e_h2, energy = grid_energies(p, grid)
        if abs(e_h - e_h2) > 1e-6 and points < ESCALATED_POINTS:
            points = ESCALATED_POINTS
            continue
        if half_width is not None:
            return energy
        if _U(p, L) < 10.0 * energy + 50.0:
            L *= 2.0
            continue
        if _wall_amplitude(_inverse_iteration(p, grid, e_h)) > WALL_AMPLITUDE:
            L *= 2.0
            continue
        return energy
    raise ConvergenceFailure("reference solve did not settle on an adequate domain")
