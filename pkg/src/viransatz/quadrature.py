"""Deterministic adaptive Simpson quadrature with Richardson error control."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable

from .errors import BracketFailure, InputError, MaxDepthWarning, NonFiniteIntegrand

__all__ = [
    "QuadratureConfig",
    "DEFAULT_CONFIG",
    "integrate",
    "integrate_even",
    "find_truncation_radius",
    "PDF_THRESHOLD",
]

# Exponent level past which exp(-2 S) ~ 1e-304 is negligible against any O(1) integral.
PDF_THRESHOLD = 350.0


@dataclass(frozen=True)
class QuadratureConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 60

    def __post_init__(self) -> None:
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise InputError("quadrature tolerances must be positive")
        if self.max_depth < 10:
            raise InputError("max_depth must be at least 10")


DEFAULT_CONFIG = QuadratureConfig()


def _checked(f: Callable[[float], float], x: float) -> float:
    y = f(x)
    if not math.isfinite(y):
        raise NonFiniteIntegrand(f"integrand is {y!r} at x = {x!r}")
    return y


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    min_depth: int = 3,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``.

    The interval is first cut into ``2**min_depth`` equal panels; each panel
    is refined until the Simpson estimates on one and two halves differ by
    at most 15 times its share of the tolerance, then the Richardson-corrected
    value is kept. Returns ``(value, error_estimate)``.

    A panel reaching ``cfg.max_depth`` is accepted as is and a
    ``MaxDepthWarning`` is emitted.
    """
    if not a < b:
        if a == b:
            return 0.0, 0.0
        raise InputError(f"integration limits must satisfy a < b, got [{a}, {b}]")

    npan = 1 << min_depth
    width = (b - a) / npan
    xs = [a + i * width for i in range(npan)] + [b]
    fx = [_checked(f, x) for x in xs]

    # Panel record: (left, right, f_left, f_mid, f_right, simpson, depth)
    panels = []
    for i in range(npan):
        lo, hi = xs[i], xs[i + 1]
        mid = 0.5 * (lo + hi)
        fm = _checked(f, mid)
        s = (hi - lo) / 6.0 * (fx[i] + 4.0 * fm + fx[i + 1])
        panels.append((lo, hi, fx[i], fm, fx[i + 1], s, min_depth))

    coarse = math.fsum(p[5] for p in panels)
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(coarse))
    tol_density = tol / (b - a)

    values: list[float] = []
    errors: list[float] = []
    hit_limit = False
    stack = panels[::-1]
    while stack:
        lo, hi, flo, fmid, fhi, whole, depth = stack.pop()
        mid = 0.5 * (lo + hi)
        lm = 0.5 * (lo + mid)
        rm = 0.5 * (mid + hi)
        flm = _checked(f, lm)
        frm = _checked(f, rm)
        left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid)
        right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi)
        diff = left + right - whole
        local_tol = tol_density * (hi - lo)
        at_limit = depth >= cfg.max_depth or not (lo < lm < mid < rm < hi)
        if abs(diff) <= 15.0 * local_tol or at_limit:
            if at_limit and abs(diff) > 15.0 * local_tol:
                hit_limit = True
            values.append(left + right + diff / 15.0)
            errors.append(abs(diff) / 15.0)
            continue
        stack.append((mid, hi, fmid, frm, fhi, right, depth + 1))
        stack.append((lo, mid, flo, flm, fmid, left, depth + 1))

    if hit_limit:
        warnings.warn(
            f"adaptive quadrature reached max_depth={cfg.max_depth} on [{a}, {b}]",
            MaxDepthWarning,
            stacklevel=2,
        )
    return math.fsum(values), math.fsum(errors)


def integrate_even(
    f: Callable[[float], float],
    R: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    min_depth: int = 3,
) -> float:
    """Integral of an even function over ``[-R, R]``, computed as twice the half-range."""
    if not R > 0:
        raise InputError(f"half-range must be positive, got {R}")
    value, _ = integrate(f, 0.0, R, cfg, min_depth=min_depth)
    return 2.0 * value


def find_truncation_radius(
    S: Callable[[float], float],
    threshold: float,
    *,
    max_evals: int = 200,
) -> float:
    """Find R with ``threshold <= S(R) <= 2 * threshold`` for an increasing S with S(0) = 0.

    Doubling from R = 1 brackets the crossing, bisection then narrows it.
    """
    if not threshold > 0:
        raise InputError("threshold must be positive")
    evals = 0
    lo, hi = 0.0, 1.0
    s_hi = S(hi)
    evals += 1
    while s_hi < threshold:
        lo = hi
        hi *= 2.0
        if hi > 2.0**100:
            raise BracketFailure(f"S stays below {threshold} up to x = 2**100")
        s_hi = S(hi)
        evals += 1
    if s_hi <= 2.0 * threshold:
        return hi
    while evals < max_evals:
        mid = 0.5 * (lo + hi)
        s_mid = S(mid)
        evals += 1
        if s_mid < threshold:
            lo = mid
        elif s_mid > 2.0 * threshold:
            hi = mid
        else:
            return mid
    raise BracketFailure(f"no radius with S in [{threshold}, {2 * threshold}] after {max_evals} evaluations")
