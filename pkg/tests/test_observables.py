import math

import numpy as np
import pytest
from scipy.integrate import quad

from viransatz.ansatz import build
from viransatz.errors import InputError
from viransatz.observables import (
    fisher_information_gradient,
    fisher_information_virial,
    fisher_report,
    moment,
    potential_expectation,
)
from viransatz.potential import make_quartic, validate


def pure_quartic_moment(lam, p):
    """<x^p> for f ~ exp(-c|x|^3), c = 2 sqrt(2 lam) / 3, via Gamma functions."""
    c = 2 * math.sqrt(2 * lam) / 3
    return math.gamma((p + 1) / 3) / math.gamma(1 / 3) * c ** (-p / 3)


def test_harmonic_moments(ho):
    assert moment(ho, 0) == pytest.approx(1.0, abs=1e-10)
    assert moment(ho, 2) == pytest.approx(0.5, abs=1e-10)
    assert moment(ho, 4) == pytest.approx(0.75, abs=1e-10)
    assert moment(ho, 3) == 0.0
    assert moment(ho, 7) == 0.0


@pytest.mark.parametrize("lam", [0.5, 1.0, 4.0])
@pytest.mark.parametrize("p", [2, 4, 8])
def test_pure_quartic_moments_against_gamma(lam, p):
    aw = build(make_quartic(0.0, lam))
    assert moment(aw, p) == pytest.approx(pure_quartic_moment(lam, p), rel=1e-9)


def test_quartic_moments_against_scipy(quartic1):
    S = lambda x: ((1 + 2 * x * x) ** 1.5 - 1) / 6  # noqa: E731
    Z = quad(lambda x: math.exp(-2 * S(x)), 0, math.inf, epsabs=1e-15, epsrel=1e-13)[0]
    for p in (2, 4, 6):
        m = quad(lambda x: x**p * math.exp(-2 * S(x)), 0, math.inf, epsabs=1e-15, epsrel=1e-13)[0] / Z
        assert moment(quartic1, p) == pytest.approx(m, rel=1e-10)


@pytest.mark.parametrize("omega", [0.5, 1.0, 2.0, 5.0])
def test_harmonic_fisher(omega):
    aw = build(make_quartic(omega, 0.0))
    assert fisher_information_gradient(aw) == pytest.approx(2 * omega, abs=1e-9)
    assert fisher_information_virial(aw) == pytest.approx(2 * omega, abs=1e-9)


def test_quartic_fisher_routes_agree(quartic1):
    fg = fisher_information_gradient(quartic1)
    fv = fisher_information_virial(quartic1)
    assert fv == pytest.approx(4 * moment(quartic1, 2) + 8 * moment(quartic1, 4), rel=1e-15)
    assert abs(fg - fv) <= 1e-9


def test_pure_quartic_fisher_routes():
    aw = build(make_quartic(0.0, 0.5))  # a4 = 1/4
    fv = fisher_information_virial(aw)
    assert fv == pytest.approx(4 * moment(aw, 4), rel=1e-14)
    assert fisher_information_gradient(aw) == pytest.approx(fv, abs=1e-9)


def test_potential_expectation(ho, quartic1):
    assert potential_expectation(ho) == pytest.approx(0.25, abs=1e-10)
    assert potential_expectation(quartic1) == pytest.approx(
        0.5 * moment(quartic1, 2) + 0.5 * moment(quartic1, 4), rel=1e-14
    )
    pure = build(make_quartic(0.0, 2.0))
    assert potential_expectation(pure) == pytest.approx(pure_quartic_moment(2.0, 4), rel=1e-9)


def test_fisher_report_harmonic(ho):
    r = fisher_report(ho)
    assert r.cr_product == pytest.approx(1.0, abs=1e-9)
    assert sorted(r.moments) == [2]
    assert set(r.to_json()) == {"I_gradient", "I_virial", "moments", "cr_product"}
    assert r.to_json()["moments"]["2"] == pytest.approx(0.5)


@pytest.mark.parametrize("lam, cr", [(1.0, 1.046344179), (10.0, 1.099588057), (1000.0, 1.130099216)])
def test_fisher_report_table_rows(lam, cr):
    r = fisher_report(build(make_quartic(1.0, lam)))
    assert r.cr_product == pytest.approx(cr, abs=5e-7)
    assert r.discrepancy <= 1e-8


@pytest.mark.parametrize(
    "p",
    [
        make_quartic(1.0, 0.3),
        make_quartic(0.0, 1.0),
        validate([(2, 1.0), (6, 2.0)]),
        validate([(4, 2.0), (8, 0.1)]),
        validate([(2, 1.0), (4, -0.1), (6, 1.0)]),
    ],
)
def test_cramer_rao_strict_for_anharmonic(p):
    r = fisher_report(build(p))
    assert r.cr_product > 1.0 + 1e-6
    assert r.discrepancy <= 1e-8
    assert all(m > 0 for m in r.moments.values())


def test_moment_decreases_with_lambda():
    lams = np.geomspace(1e-3, 1e3, 10)
    m2 = [moment(build(make_quartic(1.0, lam)), 2) for lam in lams]
    assert all(a > b for a, b in zip(m2, m2[1:]))


def test_negative_power_rejected(ho):
    with pytest.raises(InputError):
        moment(ho, -2)
