"""Scaling-law extraction from entropy curves and deterministic grid sweeps.

The entropy ansatz is  S(L) = B ln L + c1 + c2 L^(-c3):  linear in
(B, c1, c2) at fixed c3, so the fit is an outer one-dimensional search over
c3 in (0, 3] (coarse deterministic scan plus golden-section refinement)
with an inner linear least-squares solve.  No stochastic optimizer, no
tuning state: repeated calls are bit-identical.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, IllConditionedFitError

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
_COND_LIMIT = 1e12


@dataclass(frozen=True)
class ScalingFit:
    B: float
    c1: float
    c2: float
    c3: float
    rms_residual: float
    L_range: tuple


def _linear_solve(design: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, float]:
    if np.linalg.cond(design) > _COND_LIMIT:
        raise IllConditionedFitError("fit design matrix is numerically singular")
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    resid = y - design @ coef
    return coef, float(np.sqrt(np.mean(resid ** 2)))


def _fit_at_c3(lvals, s, c3, b_fixed):
    cols = [np.ones_like(lvals), lvals ** (-c3)]
    if b_fixed is None:
        cols.insert(0, np.log(lvals))
        coef, rms = _linear_solve(np.column_stack(cols), s)
        return coef[0], coef[1], coef[2], rms
    coef, rms = _linear_solve(np.column_stack(cols), s - b_fixed * np.log(lvals))
    return b_fixed, coef[0], coef[1], rms


def fit_log_plus_subleading(points: Sequence[tuple], b_fixed: float | None = None
                            ) -> ScalingFit:
    """Fit S(L) = B ln L + c1 + c2 L^(-c3) (B optionally pinned).

    Points must be (L, S) with strictly increasing L, at least six of them.
    """
    pts = sorted(points)
    if len(pts) < 6:
        raise DomainError("need at least 6 points for the subleading fit")
    lvals = np.array([p[0] for p in pts], dtype=float)
    if np.any(np.diff(lvals) <= 0):
        raise DomainError("L values must be strictly increasing")
    s = np.array([p[1] for p in pts], dtype=float)

    def rms_of(c3):
        return _fit_at_c3(lvals, s, c3, b_fixed)[3]

    grid = np.linspace(0.05, 3.0, 60)
    vals = [rms_of(c) for c in grid]
    i = int(np.argmin(vals))
    lo = grid[max(0, i - 1)]
    hi = grid[min(len(grid) - 1, i + 1)]
    # golden-section refinement on [lo, hi]
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = rms_of(x1), rms_of(x2)
    for _ in range(80):
        if hi - lo < 1e-10:
            break
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = rms_of(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = rms_of(x2)
    c3 = 0.5 * (lo + hi)
    b, c1, c2, rms = _fit_at_c3(lvals, s, c3, b_fixed)
    return ScalingFit(B=float(b), c1=float(c1), c2=float(c2), c3=float(c3),
                      rms_residual=rms, L_range=(float(lvals[0]), float(lvals[-1])))


def fit_power_law_exponent(points: Sequence[tuple]) -> tuple[float, float]:
    """(exponent, amplitude) from ordinary least squares on (ln L, ln y)."""
    if len(points) < 5:
        raise DomainError("need at least 5 points for a power-law fit")
    lvals = np.array([p[0] for p in points], dtype=float)
    y = np.array([p[1] for p in points], dtype=float)
    if np.any(y <= 0) or np.any(lvals <= 0):
        raise DomainError("power-law fit requires positive L and y")
    design = np.column_stack([np.log(lvals), np.ones_like(lvals)])
    coef, _ = _linear_solve(design, np.log(y))
    return float(coef[0]), float(math.exp(coef[1]))


# --------------------------------------------------------------------------
# deterministic sweep runner
# --------------------------------------------------------------------------


@dataclass
class SweepRow:
    index: int
    point: dict
    values: dict | None
    error: str | None


def thread_budget() -> int:
    """Worker count from LRKITAEV_THREADS (0 or unset = auto)."""
    raw = os.environ.get("LRKITAEV_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"LRKITAEV_THREADS must be an integer, got {raw!r}")
    if n < 0:
        raise DomainError("LRKITAEV_THREADS must be >= 0")
    return n if n > 0 else (os.cpu_count() or 1)


def sweep(points: Sequence[dict], evaluate: Callable[[dict], dict],
          max_workers: int | None = None) -> list[SweepRow]:
    """Evaluate a task on every grid point; failures are recorded per row.

    Output order always follows the input order regardless of scheduling,
    so result tables are byte-stable across thread counts.
    """
    workers = max_workers if max_workers else thread_budget()

    def run(i_point):
        i, point = i_point
        try:
            return SweepRow(index=i, point=point, values=evaluate(point), error=None)
        except Exception as exc:  # per-point failures must not kill the sweep
            return SweepRow(index=i, point=point, values=None,
                            error=f"{type(exc).__name__}: {exc}")

    items = list(enumerate(points))
    if workers <= 1 or len(items) <= 1:
        rows = [run(it) for it in items]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(run, items))
    return sorted(rows, key=lambda r: r.index)
