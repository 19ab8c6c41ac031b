import numpy as np
import pytest

from viransatz.ansatz import build
from viransatz.energy import energy_fisher
from viransatz.errors import InputError, NonPositiveMoment, ZeroMoment
from viransatz.legendre import (
    fim_pde_residual,
    fim_pde_solution,
    legendre_state,
    multipliers_from_fim,
    multipliers_from_potential,
    reciprocity_check_harmonic,
)
from viransatz.observables import moment
from viransatz.potential import make_quartic

rng = np.random.default_rng(11)


def test_multipliers_from_potential():
    for omega in (0.5, 1.0, 3.0):
        assert multipliers_from_potential(make_quartic(omega, 0.0)) == {2: pytest.approx(-4 * omega**2)}
    assert multipliers_from_potential(make_quartic(1.0, 1.0)) == {2: -4.0, 4: -4.0}
    assert multipliers_from_potential(make_quartic(0.0, 1.0)) == {4: -4.0}


@pytest.mark.parametrize("omega, alpha", [(1.0, 4.0), (2.0, 8.0)])
def test_legendre_state_harmonic(omega, alpha):
    s = legendre_state(build(make_quartic(omega, 0.0)))
    assert s.alpha == pytest.approx(alpha, abs=1e-9)
    assert s.fisher == pytest.approx(2 * omega, abs=1e-9)
    assert s.multipliers[2] == pytest.approx(-4 * omega**2)


def test_legendre_state_quartic(quartic1):
    s = legendre_state(quartic1)
    assert s.alpha == pytest.approx(8 * 0.70188134, abs=1e-6)
    assert s.alpha == pytest.approx(8 * energy_fisher(quartic1), abs=1e-9)
    moments_sum = sum(lam * s.moments[k] for k, lam in s.multipliers.items())
    assert s.alpha == pytest.approx(s.fisher - moments_sum, abs=1e-12)
    data = s.to_json()
    assert set(data) == {"alpha", "multipliers", "I", "moments"}
    assert data["multipliers"] == {"2": -4.0, "4": -4.0}


def test_fim_pde_solution():
    assert fim_pde_solution({2: 1.0}, {2: 0.5}) == pytest.approx(2.0)
    assert fim_pde_solution({2: 1.0}, {2: 1.0}) == pytest.approx(1.0)
    assert fim_pde_solution({2: 1.0, 4: 2.0}, {2: 0.5, 4: 0.25}) == pytest.approx(6.0)
    with pytest.raises(ZeroMoment):
        fim_pde_solution({2: 1.0}, {2: 0.0})
    with pytest.raises(InputError):
        fim_pde_solution({2: 1.0}, {4: 1.0})
    with pytest.raises(InputError):
        fim_pde_solution({2: -1.0}, {2: 1.0})


def test_fim_pde_residual():
    assert abs(fim_pde_residual({2: 1.0}, {2: 0.5}, 1e-5)) <= 1e-8
    # I = <x^2> is not a solution: I + <x^2> * 1 = 2 <x^2>.
    r = fim_pde_residual({2: 1.0}, {2: 0.5}, 1e-5, fisher=lambda m: m[2])
    assert r == pytest.approx(1.0, rel=1e-8)


def test_fim_pde_residual_random():
    for _ in range(50):
        moments = {2: rng.uniform(0.05, 5.0), 4: rng.uniform(0.05, 5.0)}
        assert abs(fim_pde_residual({2: 1.0, 4: 3.0}, moments, 1e-5)) <= 1e-7


def _analytic_gradient(constants, moments):
    return {k: -(2 / k) * c * moments[k] ** (-2 / k - 1) for k, c in constants.items()}


def test_multipliers_from_fim():
    assert multipliers_from_fim({2: 1.0}, {2: 0.5}) == {2: pytest.approx(-4.0)}
    assert multipliers_from_fim({2: 1.0}, {2: 1.0}) == {2: pytest.approx(-1.0)}
    assert multipliers_from_fim({4: 1.0}, {4: 1.0}) == {4: pytest.approx(-0.5)}
    with pytest.raises(NonPositiveMoment):
        multipliers_from_fim({2: 1.0}, {2: -0.5})


def test_second_reciprocity_against_differences():
    constants = {2: 1.3, 4: 0.7, 6: 2.0}
    for _ in range(20):
        moments = {k: rng.uniform(0.1, 3.0) for k in constants}
        lams = multipliers_from_fim(constants, moments)
        analytic = _analytic_gradient(constants, moments)
        for k in constants:
            h = 1e-6 * moments[k]
            up, dn = dict(moments), dict(moments)
            up[k] += h
            dn[k] -= h
            fd = (fim_pde_solution(constants, up) - fim_pde_solution(constants, dn)) / (2 * h)
            assert abs(lams[k] - fd) <= 1e-7
            assert lams[k] == pytest.approx(analytic[k], rel=1e-13)
            assert lams[k] < 0


def test_fim_solution_decreasing_convex():
    constants = {2: 1.0, 4: 2.0}
    for _ in range(50):
        moments = {k: rng.uniform(0.1, 4.0) for k in constants}
        for k in constants:
            h = 1e-3 * moments[k]
            vals = []
            for s in (-1, 0, 1):
                m = dict(moments)
                m[k] += s * h
                vals.append(fim_pde_solution(constants, m))
            assert vals[2] < vals[1] < vals[0]
            assert vals[0] - 2 * vals[1] + vals[2] > 0


@pytest.mark.parametrize(
    "omega, step, tol", [(1.0, 1e-5, 1e-9), (2.0, 1e-5, 1e-9), (0.5, 1e-4, 1e-7)]
)
def test_reciprocity_harmonic(omega, step, tol):
    lhs, rhs, gap = reciprocity_check_harmonic(omega, step)
    assert rhs == pytest.approx(-1 / (2 * omega))
    assert lhs == pytest.approx(rhs, abs=tol)
    assert gap <= tol
    # The closed-form <x^2> agrees with the ansatz moment.
    assert -moment(build(make_quartic(omega, 0.0)), 2) == pytest.approx(rhs, abs=1e-10)


def test_alpha_consistency_sweep():
    for lam in (1e-4, 1e-2, 1.0, 100.0):
        aw = build(make_quartic(1.0, lam))
        assert abs(legendre_state(aw).alpha - 8 * energy_fisher(aw)) <= 1e-9
