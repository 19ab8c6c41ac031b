import numpy as np
import pytest

from viransatz import reference_solver as rs
from viransatz.ansatz import build
from viransatz.energy import (
    ansatz_overlap,
    energy_fisher,
    energy_report,
    energy_schrodinger,
    energy_schrodinger_quartic_integrand,
)
from viransatz.errors import DomainError
from viransatz.observables import moment
from viransatz.potential import make_quartic, validate


def test_harmonic_energy(ho):
    assert energy_schrodinger(ho) == pytest.approx(0.5, abs=1e-10)
    assert energy_fisher(ho) == pytest.approx(0.5, abs=1e-10)


@pytest.mark.parametrize("lam, E", [(1.0, 0.70188134), (1e-4, 0.50003749)])
def test_schrodinger_procedure_table(lam, E):
    assert energy_schrodinger(build(make_quartic(1.0, lam))) == pytest.approx(E, abs=1e-7)


@pytest.mark.parametrize("lam, E, tol", [(1.0, 0.70188134, 1e-7), (100.0, 2.57093830, 1e-6)])
def test_quartic_local_energy_route(lam, E, tol):
    aw = build(make_quartic(1.0, lam))
    e_q = energy_schrodinger_quartic_integrand(1.0, lam, aw)
    assert e_q == pytest.approx(E, abs=tol)
    assert abs(e_q - energy_schrodinger(aw)) <= 1e-8


def test_quartic_local_energy_harmonic_limit():
    aw = build(make_quartic(1.0, 1e-12))
    assert energy_schrodinger_quartic_integrand(1.0, 1e-12, aw) == pytest.approx(0.5, abs=1e-10)


def test_quartic_local_energy_needs_omega():
    with pytest.raises(DomainError):
        energy_schrodinger_quartic_integrand(0.0, 1.0, build(make_quartic(0.0, 1.0)))


def test_fisher_procedure_quartic_form(quartic1):
    direct = moment(quartic1, 2) + 1.5 * moment(quartic1, 4)
    assert energy_fisher(quartic1) == pytest.approx(direct, rel=1e-15)
    assert energy_fisher(quartic1) == pytest.approx(0.70188134, abs=1e-7)
    assert energy_fisher(build(make_quartic(1.0, 1000.0))) == pytest.approx(5.48276171, abs=1e-6)


@pytest.mark.parametrize(
    "lam, e_ref, e_fisher", [(1.0, 0.69617582, 0.70188134), (10.0, 1.22458704, 1.25080186)]
)
def test_energy_report_table_rows(lam, e_ref, e_fisher):
    r = energy_report(make_quartic(1.0, lam))
    assert r.e_reference == pytest.approx(e_ref, abs=1e-6)
    assert r.e_fisher == pytest.approx(e_fisher, abs=1e-7)
    assert r.gap_ansatz_vs_reference == pytest.approx(e_fisher - e_ref, abs=2e-6)
    assert r.gap_ansatz_vs_reference > 0
    assert r.procedures_discrepancy <= 1e-8


def test_energy_report_harmonic():
    r = energy_report(make_quartic(1.0, 0.0))
    for e in (r.e_schrodinger, r.e_fisher, r.e_reference):
        assert e == pytest.approx(0.5, abs=1e-8)
    assert abs(r.gap_ansatz_vs_reference) <= 1e-7
    data = r.to_json()
    assert {"lambda", "omega", "E_schrodinger", "E_fisher", "E_num", "cr_product"} <= set(data)


def test_energy_report_without_reference():
    r = energy_report(validate([(2, 1.0), (6, 1.0)]), with_reference=False)
    assert r.e_reference is None and r.gap_ansatz_vs_reference is None
    assert r.to_json()["omega"] is None


@pytest.mark.parametrize("omega", [0.5, 1.0, 2.0, 5.0])
def test_harmonic_exactness(omega):
    r = energy_report(make_quartic(omega, 0.0))
    for e in (r.e_schrodinger, r.e_fisher, r.e_reference):
        assert e == pytest.approx(omega / 2, abs=1e-8)


def test_fisher_energy_increases_with_lambda():
    lams = [0.0, 1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0]
    es = [energy_fisher(build(make_quartic(1.0, lam))) for lam in lams]
    assert all(a < b for a, b in zip(es, es[1:]))


def test_procedure_identity_general_potentials():
    rng = np.random.default_rng(7)
    for _ in range(10):
        degs = [d for d in (2, 4, 6, 8) if rng.random() < 0.6] or [6]
        aw = build(validate([(d, float(rng.uniform(0.05, 10.0))) for d in degs]))
        assert abs(energy_schrodinger(aw) - energy_fisher(aw)) <= 1e-8


def test_overlap_near_harmonic():
    aw = build(make_quartic(1.0, 1e-4))
    assert ansatz_overlap(aw, rs.GridSpec(16.0)) >= 0.9999999


def test_overlap_strong_coupling():
    aw = build(make_quartic(1.0, 1000.0))
    ov = ansatz_overlap(aw, rs.GridSpec(4.0))
    assert 0.9 < ov < 1.0
