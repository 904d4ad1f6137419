"""Brachistochrone: cycloid constants, minimal descent time, times along curves.

Coordinates are in the vertical plane with ``y`` pointing up. The particle
starts at rest from ``(x0, y0)`` and the cycloid through it is

    x = x0 + (a/2) (theta - sin theta)
    y = y0 - (a/2) (1 - cos theta)

with ``a`` the diameter of the rolling circle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .expr import (
    Const, Expr, Neg, Sum, as_expr, compile_expr, differentiate, free_variables, normalize,
)
from .numerics import QuadratureSpec, bisect, integrate_singular

__all__ = [
    "G", "Endpoints", "CycloidSolution", "CurveSamples", "InfeasibleEndpoints",
    "CurveError", "solve_constants", "cycloid_xy", "sample_cycloid", "sample_curve",
    "min_time", "descent_time", "descent_time_parametric", "parametric_integrand",
    "shape_ratio",
]

G = 9.8
THETA_EPS = 1e-9


class InfeasibleEndpoints(ValueError):
    pass


class CurveError(ValueError):
    """A curve violates the descent-time preconditions."""


@dataclass(frozen=True)
class Endpoints:
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        if not self.x1 > self.x0:
            raise InfeasibleEndpoints(f"x1 ({self.x1!r}) must exceed x0 ({self.x0!r})")
        if self.y1 > self.y0:
            raise InfeasibleEndpoints(
                f"ascending endpoint unsupported by this parametrization (y1={self.y1!r} > y0={self.y0!r})")


@dataclass(frozen=True)
class CycloidSolution:
    x0: float
    y0: float
    a: float
    theta1: float

    @property
    def end(self) -> tuple[float, float]:
        return cycloid_xy(self, self.theta1)


@dataclass(frozen=True)
class CurveSamples:
    x: np.ndarray
    y: np.ndarray
    label: str

    @property
    def points(self) -> list[tuple[float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist()))

    def __len__(self) -> int:
        return len(self.x)


def _half_versine(theta: float) -> float:
    # (1 - cos t)/2 without cancellation
    s = math.sin(0.5 * theta)
    return s * s


def _theta_minus_sin(theta: float) -> float:
    if abs(theta) < 1e-3:
        t2 = theta * theta
        return theta * t2 / 6.0 * (1.0 - t2 / 20.0 * (1.0 - t2 / 42.0))
    return theta - math.sin(theta)


def shape_ratio(theta: float) -> float:
    """``(theta - sin theta)/(1 - cos theta)``, strictly increasing on (0, 2 pi)."""
    return _theta_minus_sin(theta) / (2.0 * _half_versine(theta))


def solve_constants(e: Endpoints, tol: float = 1e-12) -> CycloidSolution:
    """Diameter ``a`` and end parameter ``theta1`` of the cycloid through both points.

    Eliminating ``a`` leaves ``shape_ratio(theta1) = (x1 - x0)/(y0 - y1)``,
    solved by bisection on ``(1e-9, 2 pi - 1e-9)``. Level endpoints give
    ``theta1 = 2 pi`` and ``a = (x1 - x0)/pi``.
    """
    dx = e.x1 - e.x0
    dy = e.y0 - e.y1
    if dy == 0.0:
        return CycloidSolution(e.x0, e.y0, dx / math.pi, 2.0 * math.pi)
    target = dx / dy
    theta1 = bisect(lambda t: shape_ratio(t) - target, THETA_EPS, 2.0 * math.pi - THETA_EPS, tol)
    a = dy / _half_versine(theta1)
    return CycloidSolution(e.x0, e.y0, a, theta1)


def cycloid_xy(s: CycloidSolution, theta: float) -> tuple[float, float]:
    if not 0.0 <= theta <= s.theta1:
        raise ValueError(f"theta={theta!r} outside [0, {s.theta1!r}]")
    half = 0.5 * s.a
    return s.x0 + half * (theta - math.sin(theta)), s.y0 - half * (1.0 - math.cos(theta))


def sample_cycloid(s: CycloidSolution, n: int = 200, label: str = "cycloid") -> CurveSamples:
    """``n + 1`` points on a uniform theta grid from 0 to ``theta1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    thetas = np.linspace(0.0, s.theta1, n + 1)
    pts = np.array([cycloid_xy(s, float(t)) for t in thetas])
    return CurveSamples(pts[:, 0], pts[:, 1], label)


def sample_curve(curve: Expr | str, x0: float, x1: float, n: int = 200,
                 label: str | None = None) -> CurveSamples:
    """``n + 1`` points of an explicit curve ``y(x)`` on a uniform x grid."""
    c = as_expr(curve)
    f = compile_expr(c, "x")
    xs = np.linspace(x0, x1, n + 1)
    ys = np.array([f(float(x)) for x in xs])
    if not np.all(np.isfinite(ys)):
        raise CurveError("curve is not finite on the sampling grid")
    return CurveSamples(xs, ys, label if label is not None else str(c))


def min_time(s: CycloidSolution, g: float = G) -> float:
    """Closed-form descent time ``theta1 * sqrt(a / (2 g))`` along the cycloid."""
    if not g > 0:
        raise ValueError("g must be positive")
    return s.theta1 * math.sqrt(s.a / (2.0 * g))


CHECK_POINTS = 256
START_TOL = 1e-9
# below this fraction of the interval the drop comes from its Taylor model
TAYLOR_CUT = 1e-6


def _drop_function(curve: Expr, x0: float, x1: float, y0: float):
    """``u -> y0 - curve(x0 + u)``, accurate as ``u -> 0`` where the subtraction cancels."""
    drop = normalize(Sum((Const(y0), Neg(curve))))
    d1 = differentiate(drop, "x")
    f = compile_expr(drop, "x")
    try:
        c1 = compile_expr(d1, "x")(x0)
        c2 = compile_expr(differentiate(d1, "x"), "x")(x0)
    except ArithmeticError:
        return lambda u: f(x0 + u)
    if not (math.isfinite(c1) and math.isfinite(c2) and c1 > 0):
        return lambda u: f(x0 + u)
    cut = TAYLOR_CUT * (x1 - x0)

    def drop_at(u: float) -> float:
        if u < cut:
            return u * (c1 + 0.5 * c2 * u)
        return f(x0 + u)

    return drop_at


def descent_time(curve: Expr | str, x0: float, x1: float, y0: float, g: float = G,
                 spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Time to slide from rest along ``y = curve(x)`` from ``x0`` to ``x1``.

    The curve must start at ``y0`` (within 1e-9) and stay strictly below it
    on ``(x0, x1]``; the inverse-square-root singularity at ``x0`` is handled
    by :func:`integrate_singular`.
    """
    if not g > 0:
        raise ValueError("g must be positive")
    if not x1 > x0:
        raise CurveError(f"x1 ({x1!r}) must exceed x0 ({x0!r})")
    c = as_expr(curve)
    extra = free_variables(c) - {"x"}
    if extra:
        raise CurveError(f"curve may depend on x only; found {', '.join(sorted(extra))}")
    y = compile_expr(c, "x")
    yp = compile_expr(differentiate(c, "x"), "x")

    start = y(x0)
    if abs(start - y0) > START_TOL:
        raise CurveError(f"curve starts at y={start!r}, not at y0={y0!r}")
    for x in np.linspace(x0, x1, CHECK_POINTS + 1)[1:]:
        v = y(float(x))
        if not v < y0:
            raise CurveError(f"curve reaches y={v!r} >= y0={y0!r} at x={float(x)!r}")

    drop_at = _drop_function(c, x0, x1, y0)

    # integrate in u = x - x0 so points near x0 stay resolvable
    def integrand(u: float) -> float:
        drop = drop_at(u)
        if drop <= 0.0:
            raise CurveError(f"curve not below y0 at x={x0 + u!r} (negative radicand)")
        return math.sqrt((1.0 + yp(x0 + u) ** 2) / drop)

    return integrate_singular(integrand, 0.0, x1 - x0, spec) / math.sqrt(2.0 * g)


def parametric_integrand(s: CycloidSolution, theta: float) -> float:
    """Arc length over sqrt of drop, per unit theta, along the cycloid.

    Uses ``dx/dtheta = a sin^2(theta/2)`` and ``y0 - y = a sin^2(theta/2)``
    (cancellation-free forms of the parametrization); no further reduction.
    """
    dx = s.a * _half_versine(theta)
    dy = -0.5 * s.a * math.sin(theta)
    drop = s.a * _half_versine(theta)
    return math.sqrt(1.0 + (dy / dx) ** 2) * dx / math.sqrt(drop)


def descent_time_parametric(s: CycloidSolution, g: float = G,
                            spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Descent time along the cycloid by quadrature over theta."""
    if not g > 0:
        raise ValueError("g must be positive")
    total = integrate_singular(lambda t: parametric_integrand(s, t), 0.0, s.theta1, spec)
    return total / math.sqrt(2.0 * g)
