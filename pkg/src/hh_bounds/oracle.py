"""High-resolution reference integrators used as independent ground truth.

Composite Simpson with a Richardson error estimate, deliberately a different
rule (and separate summation code) from the midpoint/trapezoid bounds under
test, so enclosure checks are never self-referential.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, EvaluationError

DEFAULT_GRID = 1024


@dataclass(frozen=True)
class OracleResult:
    value: float
    error_estimate: float
    grid: int

    def __post_init__(self):
        if self.error_estimate < 0.0:
            raise DomainError("error estimate must be nonnegative")


def _check_grid(grid: int) -> None:
    if grid < 64 or grid & (grid - 1):
        raise DomainError(f"oracle grid must be a power of two >= 64, got {grid}")


def _finite(vals: np.ndarray, xs, ys=None) -> np.ndarray:
    bad = ~np.isfinite(vals)
    if bad.any():
        idx = np.unravel_index(int(np.argmax(bad)), vals.shape)
        where = (float(np.broadcast_to(xs, vals.shape)[idx]),)
        if ys is not None:
            where = where + (float(np.broadcast_to(ys, vals.shape)[idx]),)
        raise EvaluationError(f"non-finite value at {where}", where=where)
    return vals


def _simpson_1d(vals: np.ndarray, h: float) -> float:
    # vals holds an odd number of equally spaced samples
    return h / 3.0 * float(vals[0] + vals[-1] + 4.0 * vals[1:-1:2].sum() + 2.0 * vals[2:-2:2].sum())


def reference_integral_1d(fn, iv, grid: int = DEFAULT_GRID) -> OracleResult:
    """Composite Simpson on ``grid`` subintervals, error from the grid/2 value.

    ``fn`` is an Fn1D or bare callable; evaluation is array-at-once with a
    scalar fallback.
    """
    _check_grid(grid)
    ev = getattr(fn, "eval", fn)
    xs = np.linspace(iv.lo, iv.hi, grid + 1)
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(ev(xs), dtype=float)
            if vals.shape != xs.shape:
                raise TypeError
        except (TypeError, ValueError):
            vals = np.array([float(ev(float(t))) for t in xs])
    _finite(vals, xs)
    h = (iv.hi - iv.lo) / grid
    v_full = _simpson_1d(vals, h)
    v_half = _simpson_1d(vals[::2], 2.0 * h)
    return OracleResult(value=v_full, error_estimate=abs(v_full - v_half) / 15.0, grid=grid)


def reference_integral_2d(fn, rect, grid: int = DEFAULT_GRID) -> OracleResult:
    """Tensor-product composite Simpson over a rectangle with Richardson estimate."""
    _check_grid(grid)
    ev = getattr(fn, "eval", fn)
    xs = np.linspace(rect.a, rect.b, grid + 1)
    ys = np.linspace(rect.c, rect.d, grid + 1)
    gx, gy = xs[:, None], ys[None, :]
    shape = (xs.size, ys.size)
    with np.errstate(all="ignore"):
        try:
            vals = np.asarray(ev(gx, gy), dtype=float)
            if vals.shape != shape:
                raise TypeError
        except (TypeError, ValueError):
            bx, by = np.broadcast_arrays(gx, gy)
            vals = np.array([float(ev(float(x), float(y)))
                             for x, y in zip(bx.ravel(), by.ravel())]).reshape(shape)
    _finite(vals, gx, gy)

    def tensor_simpson(v: np.ndarray, hx: float, hy: float) -> float:
        npts = v.shape[0]
        w = np.ones(npts)
        w[1:-1:2] = 4.0
        w[2:-2:2] = 2.0
        return hx * hy / 9.0 * float(w @ v @ w)

    hx = (rect.b - rect.a) / grid
    hy = (rect.d - rect.c) / grid
    v_full = tensor_simpson(vals, hx, hy)
    v_half = tensor_simpson(vals[::2, ::2], 2.0 * hx, 2.0 * hy)
    return OracleResult(value=v_full, error_estimate=abs(v_full - v_half) / 15.0, grid=grid)
