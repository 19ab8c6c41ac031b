"""Command-line front end.

    viransatz energy --omega 1 --lambda 1 --format json
    viransatz table
    viransatz fisher --coeff 2=0.5 --coeff 4=0.5
    viransatz wavefunction --omega 1 --lambda 1 --samples 101
    viransatz verify --omega 1 --lambda 10

Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import os
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import click
import numpy as np

from . import reference_solver
from .ansatz import build
from .checks import plot_radius, run_checks
from .energy import energy_fisher, energy_report
from .errors import DomainTooSmall, InputError, NumericalError
from .legendre import legendre_state
from .observables import fisher_report
from .potential import EvenPolynomialPotential, make_quartic, potential_from_json, validate
from .quadrature import QuadratureConfig

TABLE_LAMBDAS = (1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0)
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_NUMERICAL = 3
TOL_ENV = "VIRANSATZ_TOL"


def _round12(obj: Any) -> Any:
    if isinstance(obj, float):
        return float(f"{obj:.12g}") if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: _round12(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round12(v) for v in obj]
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON: sorted keys, 12 significant digits."""
    return json.dumps(_round12(obj), sort_keys=True, indent=2) + "\n"


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt_csv(v) for v in row])
    return buf.getvalue()


def _fmt_csv(v: Any) -> Any:
    if isinstance(v, float):
        return f"{v:.12g}"
    return "" if v is None else v


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8", newline="\n")
    else:
        click.echo(text, nl=False)


def _parse_coeff(spec: str) -> tuple[int, float]:
    try:
        degree, value = spec.split("=", 1)
        return int(degree), float(value)
    except ValueError:
        raise InputError(f"--coeff expects DEGREE=VALUE, got {spec!r}") from None


def _potential(
    omega: float | None,
    lam: float | None,
    coeffs: Sequence[str],
    potential_file: str | None,
) -> EvenPolynomialPotential:
    styles = sum([omega is not None or lam is not None, bool(coeffs), potential_file is not None])
    if styles > 1:
        raise InputError("use exactly one of --omega/--lambda, --coeff, --potential-file")
    if coeffs:
        return validate([_parse_coeff(c) for c in coeffs])
    if potential_file is not None:
        return potential_from_json(Path(potential_file).read_text(encoding="utf-8"))
    if omega is None and lam is None:
        omega, lam = 1.0, 1.0
    return make_quartic(1.0 if omega is None else omega, 0.0 if lam is None else lam)


def _default_abs_tol() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return QuadratureConfig().abs_tol
    try:
        return float(raw)
    except ValueError:
        raise click.BadParameter(f"{TOL_ENV}={raw!r} is not a number") from None


def _handle_errors(fn: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except InputError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_INPUT)
        except NumericalError as exc:
            click.echo(f"error: {type(exc).__name__}: {exc}", err=True)
            sys.exit(EXIT_NUMERICAL)

    return wrapper


def potential_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    fn = click.option("--potential-file", type=click.Path(exists=True, dir_okay=False),
                      help="Potential as JSON {\"terms\": [{\"degree\": 2, \"coeff\": 0.5}]}.")(fn)
    fn = click.option("--coeff", "coeffs", multiple=True, metavar="DEGREE=VALUE",
                      help="Term a_DEGREE x^DEGREE; repeatable.")(fn)
    fn = click.option("--lambda", "lam", type=float, default=None,
                      help="Quartic anharmonicity (U = w^2 x^2/2 + lambda x^4/2).")(fn)
    fn = click.option("--omega", type=float, default=None, help="Quartic shorthand frequency.")(fn)
    return fn


def numeric_options(fn: Callable[..., Any]) -> Callable[..., Any]:
    fn = click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["table", "json", "csv"]),
                      default="table", show_default=True)(fn)
    fn = click.option("--half-width", type=float, default=None,
                      help="Fix the oracle grid half-width instead of sizing it automatically.")(fn)
    fn = click.option("--grid-points", type=int, default=reference_solver.DEFAULT_POINTS,
                      show_default=True)(fn)
    fn = click.option("--rel-tol", type=float, default=QuadratureConfig().rel_tol,
                      show_default=True)(fn)
    fn = click.option("--abs-tol", type=float, default=None,
                      help=f"Absolute quadrature tolerance [default 1e-12 or ${TOL_ENV}].")(fn)
    return fn


def _config(abs_tol: float | None, rel_tol: float) -> QuadratureConfig:
    return QuadratureConfig(abs_tol=_default_abs_tol() if abs_tol is None else abs_tol,
                            rel_tol=rel_tol)


@click.group()
@click.version_option(package_name="artifact")
def main() -> None:
    """Parameter-free ground-state ansatz for even polynomial potentials."""


@main.command()
@potential_options
@numeric_options
@click.option("--no-reference", is_flag=True, help="Skip the finite-difference oracle.")
@_handle_errors
def energy(omega, lam, coeffs, potential_file, abs_tol, rel_tol, grid_points, half_width,
           fmt, output, no_reference):
    """Ground-state energy by both ansatz procedures and the numerical oracle."""
    p = _potential(omega, lam, coeffs, potential_file)
    report = energy_report(p, _config(abs_tol, rel_tol), with_reference=not no_reference,
                           grid_points=grid_points, half_width=half_width)
    data = report.to_json()
    if fmt == "json":
        text = dumps(data)
    elif fmt == "csv":
        keys = ["omega", "lambda", "E_num", "E_schrodinger", "E_fisher", "cr_product"]
        text = _csv(keys, [[data[k] for k in keys]])
    else:
        lines = [f"{'E_schrodinger':<14} {report.e_schrodinger:.8f}",
                 f"{'E_fisher':<14} {report.e_fisher:.8f}"]
        if report.e_reference is not None:
            lines.append(f"{'E_num':<14} {report.e_reference:.8f}")
            lines.append(f"{'gap':<14} {report.gap_ansatz_vs_reference:+.8f}")
        lines.append(f"{'I<x^2>':<14} {report.cr_product:.9f}")
        text = "\n".join(lines) + "\n"
    _emit(text, output)


def _table_row(omega: float, lam: float, cfg: QuadratureConfig, with_reference: bool,
               grid_points: int, half_width: float | None) -> dict[str, Any]:
    try:
        rep = energy_report(make_quartic(omega, lam), cfg, with_reference,
                            grid_points=grid_points, half_width=half_width)
    except InputError as exc:
        return {"lambda": lam, "omega": omega, "error": f"{type(exc).__name__}: {exc}",
                "exit": EXIT_INPUT}
    except NumericalError as exc:
        return {"lambda": lam, "omega": omega, "error": f"{type(exc).__name__}: {exc}",
                "exit": EXIT_NUMERICAL}
    return {
        "lambda": lam,
        "omega": omega,
        "E_num": rep.e_reference,
        "E_fisher": rep.e_fisher,
        "E_schrodinger": rep.e_schrodinger,
        "cr_product": rep.cr_product,
    }


def _parse_lambdas(text: str | None) -> tuple[float, ...]:
    if text is None:
        return TABLE_LAMBDAS
    try:
        return tuple(float(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise InputError(f"--lambdas expects a comma-separated list, got {text!r}") from None


@main.command()
@click.option("--omega", type=float, default=1.0, show_default=True)
@click.option("--lambdas", default=None, help="Comma-separated lambda values [default: 1e-4 ... 1e3].")
@numeric_options
@click.option("--no-reference", is_flag=True)
@_handle_errors
def table(omega, lambdas, abs_tol, rel_tol, grid_points, half_width, fmt, output, no_reference):
    """Quartic ground-state energies over a lambda sweep (lambda, E_num, E, I<x^2>)."""
    cfg = _config(abs_tol, rel_tol)
    rows = [_table_row(omega, lam, cfg, not no_reference, grid_points, half_width)
            for lam in _parse_lambdas(lambdas)]
    codes = [r.pop("exit") for r in rows if "exit" in r]
    if fmt == "json":
        text = dumps(rows)
    elif fmt == "csv":
        keys = ["lambda", "omega", "E_num", "E_fisher", "E_schrodinger", "cr_product", "error"]
        text = _csv(keys, [[r.get(k) for k in keys] for r in rows])
    else:
        lines = [f"{'lambda':>10}  {'E_num':>12}  {'E':>12}  {'I<x^2>':>12}"]
        for r in rows:
            if "error" in r:
                lines.append(f"{r['lambda']:>10g}  {r['error']}")
                continue
            e_num = "-" if r["E_num"] is None else f"{r['E_num']:.8f}"
            lines.append(f"{r['lambda']:>10g}  {e_num:>12}  {r['E_fisher']:12.8f}  "
                         f"{r['cr_product']:12.9f}")
        text = "\n".join(lines) + "\n"
    _emit(text, output)
    if codes:
        sys.exit(max(codes))


@main.command()
@potential_options
@numeric_options
@click.option("--legendre", is_flag=True, help="Emit multipliers and alpha instead.")
@_handle_errors
def fisher(omega, lam, coeffs, potential_file, abs_tol, rel_tol, grid_points, half_width,
           fmt, output, legendre):
    """Fisher information by both routes, even moments and the Cramer-Rao product."""
    p = _potential(omega, lam, coeffs, potential_file)
    aw = build(p, _config(abs_tol, rel_tol))
    data = legendre_state(aw).to_json() if legendre else fisher_report(aw).to_json()
    if fmt == "json":
        text = dumps(data)
    else:
        flat = _flatten(data)
        if fmt == "csv":
            text = _csv(list(flat), [list(flat.values())])
        else:
            text = "".join(f"{k:<14} {v:.12g}\n" for k, v in flat.items())
    _emit(text, output)


def _flatten(data: dict[str, Any]) -> dict[str, float]:
    flat: dict[str, float] = {}
    for key in sorted(data):
        value = data[key]
        if isinstance(value, dict):
            for sub in sorted(value, key=int):
                flat[f"{key}_{sub}"] = value[sub]
        else:
            flat[key] = value
    return flat


@main.command()
@potential_options
@numeric_options
@click.option("--samples", type=int, default=201, show_default=True)
@click.option("--x-max", type=float, default=None,
              help="Sample on [-x_max, x_max] [default: where pdf falls 16 decades].")
@click.option("--exact", is_flag=True, help="Add the oracle eigenvector (linear interpolation).")
@_handle_errors
def wavefunction(omega, lam, coeffs, potential_file, abs_tol, rel_tol, grid_points, half_width,
                 fmt, output, samples, x_max, exact):
    """Sample psi and pdf on a uniform grid (CSV unless --format json)."""
    if samples < 2:
        raise InputError("--samples must be at least 2")
    p = _potential(omega, lam, coeffs, potential_file)
    aw = build(p, _config(abs_tol, rel_tol))
    xm = plot_radius(aw) if x_max is None else x_max
    xs = np.linspace(-xm, xm, samples)
    columns: dict[str, list[float]] = {
        "x": [float(x) for x in xs],
        "psi": [aw.psi(float(x)) for x in xs],
        "pdf": [aw.pdf(float(x)) for x in xs],
    }
    if exact:
        L = half_width or reference_solver.choose_domain(p, energy_fisher(aw))
        gx, gpsi = _exact_wavefunction(p, L, grid_points, half_width is None)
        psi_exact = np.interp(xs, gx, gpsi, left=0.0, right=0.0)
        columns["psi_exact"] = [float(v) for v in psi_exact]
        columns["pdf_exact"] = [float(v * v) for v in psi_exact]
    if fmt == "json":
        text = dumps(columns)
    else:
        keys = list(columns)
        text = _csv(keys, list(zip(*(columns[k] for k in keys))))
    _emit(text, output)


def _exact_wavefunction(p: EvenPolynomialPotential, L: float, points: int, grow: bool):
    for _ in range(40):
        try:
            return reference_solver.ground_state_wavefunction(p, reference_solver.GridSpec(L, points))
        except DomainTooSmall:
            if not grow:
                raise
            L *= 2.0
    raise DomainTooSmall("no adequate domain found for the oracle eigenvector")


@main.command()
@potential_options
@numeric_options
@click.option("--no-reference", is_flag=True)
@_handle_errors
def verify(omega, lam, coeffs, potential_file, abs_tol, rel_tol, grid_points, half_width,
           fmt, output, no_reference):
    """Run the invariant suite; exit 0 iff every property holds."""
    p = _potential(omega, lam, coeffs, potential_file)
    checks = run_checks(p, _config(abs_tol, rel_tol), with_reference=not no_reference)
    if fmt == "json":
        text = dumps([{"name": c.name, "passed": c.passed, "value": c.value,
                       "tolerance": c.tolerance} for c in checks])
    elif fmt == "csv":
        text = _csv(["name", "passed", "value", "tolerance"],
                    [[c.name, c.passed, c.value, c.tolerance] for c in checks])
    else:
        text = "".join(f"{'PASS' if c.passed else 'FAIL'}  {c.name:<22} {c.value:.3e}  "
                       f"(tol {c.tolerance:.10g})\n" for c in checks)
    _emit(text, output)
    failed = [c.name for c in checks if not c.passed]
    if failed:
        click.echo(f"failed: {', '.join(failed)}", err=True)
        sys.exit(EXIT_VERIFY)


if __name__ == "__main__":
    main()
