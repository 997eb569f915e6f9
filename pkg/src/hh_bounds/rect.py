"""Inequality chains and certified enclosures for coordinate-convex functions
on a rectangle.

A function f(x, y) is convex on the coordinates when every restriction
x -> f(x, y0) and y -> f(x0, y) is convex. Each operation here evaluates the
terms of one two-sided (or one-sided) bound on the double integral and, for
the chain operations, reports whether every adjacent ordering holds at the
computed values.

Line integrals inside the bound expressions are resolved through an
InnerScheme. In NestedDiscrete mode the direction is chosen per use site:
integrals sitting below the double integral in a chain are resolved with the
midpoint rule (an underestimate for convex restrictions), integrals sitting
above with the trapezoid rule (an overestimate), so every reported ordering
is still certified. The double integral term itself always comes from the
independent Simpson oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .bounds1d import BoundPair, Fn1D, Interval, Partition1D, midpoint_lower, trapezoid_upper
from .errors import DomainError, EvaluationError, PreconditionError
from .oracle import DEFAULT_GRID, reference_integral_2d
from .schemes import InnerScheme, NestedDiscrete, Quadrature, adaptive_simpson

#: Grid used for positivity spot checks (and by the convexity generator).
SPOT_GRID = 33


@dataclass(frozen=True)
class Rect:
    """The integration domain [a, b] x [c, d], nondegenerate and finite."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for v in (self.a, self.b, self.c, self.d):
            if not math.isfinite(v):
                raise DomainError(f"rectangle corners must be finite, got {self}")
        if not (self.a < self.b and self.c < self.d):
            raise DomainError(f"degenerate rectangle [{self.a}, {self.b}] x [{self.c}, {self.d}]")

    @property
    def x_interval(self) -> Interval:
        return Interval(self.a, self.b)

    @property
    def y_interval(self) -> Interval:
        return Interval(self.c, self.d)

    @property
    def area(self) -> float:
        return (self.b - self.a) * (self.d - self.c)

    @property
    def center(self) -> tuple[float, float]:
        return 0.5 * (self.a + self.b), 0.5 * (self.c + self.d)


@dataclass(frozen=True)
class Fn2D:
    """A real function of two variables given as a black-box callback.

    ``eval`` must be deterministic and finite on the rectangle it is used on,
    and ideally accepts numpy arrays elementwise (a scalar fallback exists).
    ``positive`` asserts the range is >= 0 and gates :func:`positive_upper`.
    """

    eval: Callable
    positive: bool = False

    def __call__(self, x, y):
        return self.eval(x, y)

    def restrict_x(self, x0: float) -> Callable:
        """The partial mapping y -> f(x0, y)."""
        return lambda y: self.eval(x0, y)

    def restrict_y(self, y0: float) -> Callable:
        """The partial mapping x -> f(x, y0)."""
        return lambda x: self.eval(x, y0)


class Ordering(NamedTuple):
    i: int
    j: int
    satisfied: bool
    slack: float


@dataclass(frozen=True)
class ChainReport:
    """Named terms of an inequality chain plus every adjacent ordering verdict.

    slack = value_j - value_i; an ordering is satisfied when slack >= -tolerance.
    """

    terms: tuple[tuple[str, float], ...]
    orderings: tuple[Ordering, ...]
    tolerance: float

    @property
    def values(self) -> tuple[float, ...]:
        return tuple(v for _, v in self.terms)

    @property
    def all_satisfied(self) -> bool:
        return all(o.satisfied for o in self.orderings)


def chain_report(terms: list[tuple[str, float]], tolerance: float | None = None) -> ChainReport:
    if tolerance is None:
        tolerance = 1e-9 * max(1.0, *(abs(v) for _, v in terms))
    orderings = []
    for i in range(len(terms) - 1):
        slack = terms[i + 1][1] - terms[i][1]
        orderings.append(Ordering(i, i + 1, slack >= -tolerance, slack))
    return ChainReport(terms=tuple(terms), orderings=tuple(orderings), tolerance=tolerance)


def point_value(f: Fn2D, x: float, y: float) -> float:
    with np.errstate(all="ignore"):
        try:
            v = float(f.eval(x, y))
        except (ArithmeticError, ValueError) as exc:
            raise EvaluationError(f"evaluation failed at ({x!r}, {y!r}): {exc}",
                                  where=(float(x), float(y))) from exc
    if not math.isfinite(v):
        raise EvaluationError(f"non-finite value at ({x!r}, {y!r})", where=(float(x), float(y)))
    return v


def values_2d(f: Fn2D, xs, ys) -> np.ndarray:
    """Elementwise evaluation at broadcast (xs, ys), insisting on finite results."""
    bx, by = np.broadcast_arrays(np.asarray(xs, dtype=float), np.asarray(ys, dtype=float))
    with np.errstate(all="ignore"):
        try:
            out = np.asarray(f.eval(bx, by), dtype=float)
            if out.shape != bx.shape:
                raise TypeError("scalar-only callback")
        except (TypeError, ValueError):
            out = np.array([float(f.eval(float(x), float(y)))
                            for x, y in zip(bx.ravel(), by.ravel())]).reshape(bx.shape)
    bad = ~np.isfinite(out)
    if bad.any():
        idx = np.unravel_index(int(np.argmax(bad)), out.shape)
        raise EvaluationError(
            f"non-finite value at ({float(bx[idx])!r}, {float(by[idx])!r})",
            where=(float(bx[idx]), float(by[idx])))
    return out


def spot_minimum(f: Fn2D, r: Rect, k: int = SPOT_GRID) -> float:
    """Minimum of f over the k x k sample grid of the rectangle."""
    xs = np.linspace(r.a, r.b, k)
    ys = np.linspace(r.c, r.d, k)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    return float(values_2d(f, gx, gy).min())


def _lower_1d(g: Callable, iv: Interval, scheme: InnerScheme, cells: int) -> float:
    """Resolve an integral that must stay below its true value."""
    if isinstance(scheme, NestedDiscrete):
        return midpoint_lower(Fn1D(eval=g), iv, scheme.m * cells)
    return adaptive_simpson(g, iv.lo, iv.hi, scheme.tol)


def _upper_1d(g: Callable, iv: Interval, scheme: InnerScheme, cells: int) -> float:
    """Resolve an integral that must stay above its true value."""
    if isinstance(scheme, NestedDiscrete):
        return trapezoid_upper(Fn1D(eval=g), iv, scheme.m * cells)
    return adaptive_simpson(g, iv.lo, iv.hi, scheme.tol)


def _partition_sums(f: Fn2D, r: Rect, n: int, scheme: InnerScheme) -> tuple[float, float]:
    """Lower and upper partitioned line-integral sums for a partition into n cells.

    Lower: the cell-midpoint lines, (d-c)/(2n) * sum_k int f(x, ymid_k) dx plus
    the symmetric x-direction sum. Upper: the boundary lines with weight
    (len)/(4n) plus the interior node lines with weight (len)/(2n).
    """
    px = Partition1D(r.x_interval, n)
    py = Partition1D(r.y_interval, n)
    x_iv, y_iv = r.x_interval, r.y_interval
    wy = (r.d - r.c) / (2.0 * n)
    wx = (r.b - r.a) / (2.0 * n)

    lower = wy * sum(_lower_1d(f.restrict_y(ym), x_iv, scheme, n) for ym in py.midpoints())
    lower += wx * sum(_lower_1d(f.restrict_x(xm), y_iv, scheme, n) for xm in px.midpoints())

    upper = 0.5 * wy * (_upper_1d(f.restrict_y(r.c), x_iv, scheme, n)
                        + _upper_1d(f.restrict_y(r.d), x_iv, scheme, n))
    upper += 0.5 * wx * (_upper_1d(f.restrict_x(r.a), y_iv, scheme, n)
                         + _upper_1d(f.restrict_x(r.b), y_iv, scheme, n))
    upper += wy * sum(_upper_1d(f.restrict_y(yk), x_iv, scheme, n) for yk in py.nodes()[1:-1])
    upper += wx * sum(_upper_1d(f.restrict_x(xk), y_iv, scheme, n) for xk in px.nodes()[1:-1])
    return lower, upper


def partition_chain(f: Fn2D, r: Rect, n: int, scheme: InnerScheme = NestedDiscrete(),
                    oracle_grid: int = DEFAULT_GRID,
                    tolerance: float | None = None,
                    integral: float | None = None) -> ChainReport:
    """Three-term chain: midpoint-line sum <= double integral <= node-line sum.

    The middle term is the independent Simpson oracle value (or a caller
    supplied ``integral`` to avoid recomputing it); the outer terms are
    resolved per ``scheme``.
    """
    lower, upper = _partition_sums(f, r, n, scheme)
    if integral is None:
        integral = reference_integral_2d(f, r, oracle_grid).value
    return chain_report(
        [("midpoint_lines", lower), ("integral", integral), ("node_lines", upper)],
        tolerance)


def discrete_enclosure(f: Fn2D, r: Rect, n: int, m: int = 16) -> BoundPair:
    """Fully discrete enclosure of the double integral from point values only.

    Every line integral in the lower sum is itself bounded below by the
    midpoint rule and every one in the upper sum above by the trapezoid rule
    (m subintervals per partition cell), so lower <= integral <= upper holds
    for any f convex on the coordinates.
    """
    count = 0

    def counting(x, y):
        nonlocal count
        out = f.eval(x, y)
        count += int(np.size(out))
        return out

    lower, upper = _partition_sums(Fn2D(eval=counting, positive=f.positive),
                                   r, n, NestedDiscrete(m))
    return BoundPair(lower=lower, upper=upper, n=n, evals=count)


def centerline_bound(f: Fn2D, r: Rect, n: int,
                     scheme: InnerScheme = NestedDiscrete()) -> tuple[float, float]:
    """Midpoint-grid sums on the two center lines vs the center-line integrals.

    Returns (lhs, rhs) with the contract lhs <= rhs for coordinate-convex f:
    lhs sums f at (center_x, ymid_k) and (xmid_k, center_y); rhs scales the
    integrals along the two center lines by n/length. In NestedDiscrete mode
    the rhs integrals are resolved from below, so a reported pass is
    conservative.
    """
    cx, cy = r.center
    px = Partition1D(r.x_interval, n)
    py = Partition1D(r.y_interval, n)
    lhs = float(values_2d(f, cx, py.midpoints()).sum())
    lhs += float(values_2d(f, px.midpoints(), cy).sum())
    rhs = n / (r.d - r.c) * _lower_1d(f.restrict_x(cx), r.y_interval, scheme, n)
    rhs += n / (r.b - r.a) * _lower_1d(f.restrict_y(cy), r.x_interval, scheme, n)
    return lhs, rhs


def boundary_bound(f: Fn2D, r: Rect, n: int,
                   scheme: InnerScheme = NestedDiscrete()) -> tuple[float, float]:
    """Scaled boundary-line integrals vs corner and boundary-node sums.

    Returns (lhs, rhs) with the contract lhs <= rhs for coordinate-convex f.
    In NestedDiscrete mode the lhs integrals are resolved from above, again
    making a pass conservative.
    """
    px = Partition1D(r.x_interval, n)
    py = Partition1D(r.y_interval, n)
    lhs = n / (r.d - r.c) * (_upper_1d(f.restrict_x(r.a), r.y_interval, scheme, n)
                             + _upper_1d(f.restrict_x(r.b), r.y_interval, scheme, n))
    lhs += n / (r.b - r.a) * (_upper_1d(f.restrict_y(r.c), r.x_interval, scheme, n)
                              + _upper_1d(f.restrict_y(r.d), r.x_interval, scheme, n))
    rhs = (point_value(f, r.a, r.c) + point_value(f, r.a, r.d)
           + point_value(f, r.b, r.c) + point_value(f, r.b, r.d))
    for yk in py.nodes()[1:-1]:
        rhs += point_value(f, r.a, yk) + point_value(f, r.b, yk)
    for xk in px.nodes()[1:-1]:
        rhs += point_value(f, xk, r.c) + point_value(f, xk, r.d)
    return lhs, rhs


def _require_positive(f: Fn2D, r: Rect) -> None:
    if not f.positive:
        raise PreconditionError("positive_upper requires a function flagged positive")
    lo = spot_minimum(f, r)
    if lo < 0.0:
        raise PreconditionError(
            f"positivity spot check failed: sampled value {lo!r} < 0 on the grid")


def positive_upper(f: Fn2D, r: Rect, n: int,
                   scheme: InnerScheme = NestedDiscrete()) -> float:
    """Upper bound on the double integral of a positive coordinate-convex f.

    Built from the boundary and interior node-line integrals with weights
    (n+1)/(4n) on the boundary lines and 2/(4n) on interior lines, in both
    directions. All integrals are resolved from above in NestedDiscrete mode,
    preserving the bound. The positivity flag plus a sample-grid spot check
    gate the computation; a negative sample is a hard error.
    """
    _require_positive(f, r)
    px = Partition1D(r.x_interval, n)
    py = Partition1D(r.y_interval, n)
    x_iv, y_iv = r.x_interval, r.y_interval

    col = (n + 1) * (_upper_1d(f.restrict_x(r.a), y_iv, scheme, n)
                     + _upper_1d(f.restrict_x(r.b), y_iv, scheme, n))
    col += 2.0 * sum(_upper_1d(f.restrict_x(xk), y_iv, scheme, n) for xk in px.nodes()[1:-1])
    row = (n + 1) * (_upper_1d(f.restrict_y(r.c), x_iv, scheme, n)
                     + _upper_1d(f.restrict_y(r.d), x_iv, scheme, n))
    row += 2.0 * sum(_upper_1d(f.restrict_y(yk), x_iv, scheme, n) for yk in py.nodes()[1:-1])
    return (r.b - r.a) / (4.0 * n) * col + (r.d - r.c) / (4.0 * n) * row


CLASSIC_TERM_NAMES = ("center", "midline_avg", "mean", "boundary_avg", "corner_avg")
REFINED_TERM_NAMES = ("center", "midline_avg", "mean", "boundary_midline_avg", "nine_point_avg")


def _shared_chain_head(f: Fn2D, r: Rect, scheme: InnerScheme, oracle_grid: int,
                       integral: float | None):
    """First three terms common to both five-term chains (mean-value scale)."""
    cx, cy = r.center
    t1 = point_value(f, cx, cy)
    qx = _lower_1d(f.restrict_y(cy), r.x_interval, scheme, 1)
    qy = _lower_1d(f.restrict_x(cx), r.y_interval, scheme, 1)
    t2 = 0.5 * (qx / (r.b - r.a) + qy / (r.d - r.c))
    if integral is None:
        integral = reference_integral_2d(f, r, oracle_grid).value
    return t1, t2, integral / r.area


def classic_chain(f: Fn2D, r: Rect, scheme: InnerScheme = NestedDiscrete(),
                  oracle_grid: int = DEFAULT_GRID,
                  tolerance: float | None = None,
                  integral: float | None = None) -> ChainReport:
    """Five-term mean-value chain for coordinate-convex f.

    center value <= average of center-line means <= mean of f <= average of
    boundary-line means <= corner average. Every ordering is certified in
    NestedDiscrete mode.
    """
    t1, t2, t3 = _shared_chain_head(f, r, scheme, oracle_grid, integral)
    t4 = (_upper_1d(f.restrict_y(r.c), r.x_interval, scheme, 1)
          + _upper_1d(f.restrict_y(r.d), r.x_interval, scheme, 1)) / (4.0 * (r.b - r.a))
    t4 += (_upper_1d(f.restrict_x(r.a), r.y_interval, scheme, 1)
           + _upper_1d(f.restrict_x(r.b), r.y_interval, scheme, 1)) / (4.0 * (r.d - r.c))
    t5 = 0.25 * (point_value(f, r.a, r.c) + point_value(f, r.a, r.d)
                 + point_value(f, r.b, r.c) + point_value(f, r.b, r.d))
    return chain_report(list(zip(CLASSIC_TERM_NAMES, (t1, t2, t3, t4, t5))), tolerance)


def refined_chain(f: Fn2D, r: Rect, scheme: InnerScheme = NestedDiscrete(),
                  oracle_grid: int = DEFAULT_GRID,
                  tolerance: float | None = None,
                  integral: float | None = None) -> ChainReport:
    """Sharper five-term chain: boundary means augmented with the center lines.

    Same first three terms as :func:`classic_chain`; the fourth term averages
    boundary and doubled center-line integrals with weight 1/8, the fifth is
    the nine-point corner/edge-midpoint/center combination with weights
    1/16, 1/8, 1/4. Terms four and five never exceed their classic
    counterparts. In NestedDiscrete mode the fourth-to-fifth ordering is
    guaranteed for even inner counts (they coincide at two subintervals);
    an odd ``m`` can report a violation caused by resolution alone.
    """
    t1, t2, t3 = _shared_chain_head(f, r, scheme, oracle_grid, integral)
    cx, cy = r.center
    t4 = (_upper_1d(f.restrict_y(r.c), r.x_interval, scheme, 1)
          + _upper_1d(f.restrict_y(r.d), r.x_interval, scheme, 1)
          + 2.0 * _upper_1d(f.restrict_y(cy), r.x_interval, scheme, 1)) / (8.0 * (r.b - r.a))
    t4 += (_upper_1d(f.restrict_x(r.a), r.y_interval, scheme, 1)
           + _upper_1d(f.restrict_x(r.b), r.y_interval, scheme, 1)
           + 2.0 * _upper_1d(f.restrict_x(cx), r.y_interval, scheme, 1)) / (8.0 * (r.d - r.c))
    t5 = (point_value(f, r.a, r.c) + point_value(f, r.a, r.d)
          + point_value(f, r.b, r.c) + point_value(f, r.b, r.d)) / 16.0
    t5 += 0.25 * t1
    t5 += (point_value(f, cx, r.c) + point_value(f, cx, r.d)
           + point_value(f, r.a, cy) + point_value(f, r.b, cy)) / 8.0
    return chain_report(list(zip(REFINED_TERM_NAMES, (t1, t2, t3, t4, t5))), tolerance)


def assemble_classic_terms(f: Fn2D, r: Rect, scheme: InnerScheme = NestedDiscrete(),
                           oracle_grid: int = DEFAULT_GRID,
                           integral: float | None = None) -> tuple[float, ...]:
    """Rebuild the five classic chain terms from the n=1 partitioned bounds.

    Combines :func:`centerline_bound`, :func:`partition_chain` and
    :func:`boundary_bound` at n=1: lhs/2, lower/area, integral/area,
    upper/area, rhs/4. With a shared scheme these match
    :func:`classic_chain` term by term up to roundoff.
    """
    c_lhs, _ = centerline_bound(f, r, 1, scheme)
    lower, upper = _partition_sums(f, r, 1, scheme)
    if integral is None:
        integral = reference_integral_2d(f, r, oracle_grid).value
    _, b_rhs = boundary_bound(f, r, 1, scheme)
    return (c_lhs / 2.0, lower / r.area, integral / r.area, upper / r.area, b_rhs / 4.0)
