"""Numeric kernels: RK4, shooting, bisection and endpoint-singular quadrature."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .expr import DomainError

__all__ = [
    "OdeTrajectory", "QuadratureSpec",
    "IntegrationError", "ShootingError", "RootError", "QuadratureError",
    "rk4", "shoot", "bisect", "integrate_singular", "adaptive_simpson",
]

Accel = Callable[[float, float, float], float]


class IntegrationError(ArithmeticError):
    def __init__(self, message: str, x: float):
        self.x = x
        super().__init__(f"{message} (at x={x!r})")


class ShootingError(RuntimeError):
    pass


class RootError(ValueError):
    pass


class QuadratureError(ArithmeticError):
    pass


@dataclass(frozen=True)
class OdeTrajectory:
    x: np.ndarray
    y: np.ndarray
    yp: np.ndarray
    step: float

    @property
    def samples(self) -> list[tuple[float, float, float]]:
        return list(zip(self.x.tolist(), self.y.tolist(), self.yp.tolist()))

    @property
    def end(self) -> tuple[float, float, float]:
        return float(self.x[-1]), float(self.y[-1]), float(self.yp[-1])


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")


def _call(f: Accel, x: float, y: float, yp: float) -> float:
    try:
        v = f(x, y, yp)
    except (DomainError, ArithmeticError, ValueError) as exc:
        raise IntegrationError(str(exc), x) from exc
    if not math.isfinite(v):
        raise IntegrationError("non-finite acceleration", x)
    return v


def rk4(f: Accel, x0: float, y0: float, yp0: float, x1: float, n: int = 1000) -> OdeTrajectory:
    """Classical fixed-step RK4 for ``y'' = f(x, y, y')`` from ``x0`` to ``x1``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if x1 == x0:
        raise ValueError("x1 must differ from x0")
    h = (x1 - x0) / n
    xs = x0 + h * np.arange(n + 1)
    xs[-1] = x1
    ys = np.empty(n + 1)
    ps = np.empty(n + 1)
    y, p = float(y0), float(yp0)
    ys[0], ps[0] = y, p
    cy = cp = 0.0
    for i in range(n):
        x = x0 + i * h
        k1y, k1p = p, _call(f, x, y, p)
        k2y, k2p = p + 0.5 * h * k1p, _call(f, x + 0.5 * h, y + 0.5 * h * k1y, p + 0.5 * h * k1p)
        k3y, k3p = p + 0.5 * h * k2p, _call(f, x + 0.5 * h, y + 0.5 * h * k2y, p + 0.5 * h * k2p)
        k4y, k4p = p + h * k3p, _call(f, x + h, y + h * k3y, p + h * k3p)
        # compensated (Kahan) accumulation keeps round-off flat in n
        dy = h * ((k1y + 2 * k2y + 2 * k3y + k4y) / 6.0) - cy
        dp = h * ((k1p + 2 * k2p + 2 * k3p + k4p) / 6.0) - cp
        ty, tp = y + dy, p + dp
        cy, cp = (ty - y) - dy, (tp - p) - dp
        y, p = ty, tp
        ys[i + 1], ps[i + 1] = y, p
    return OdeTrajectory(xs, ys, ps, h)


SCAN_BRACKETS = 64
MAX_SHOOT_ITER = 200


def shoot(f: Accel, a: float, A: float, b: float, B: float, s_lo: float = -10.0,
          s_hi: float = 10.0, tol: float = 1e-10, n: int = 1000
          ) -> tuple[float, OdeTrajectory]:
    """Find the initial slope ``s`` with ``y(b) = B`` for ``y(a) = A, y'(a) = s``.

    Uses false position with a bisection fallback whenever a step fails to
    halve the bracket. If ``[s_lo, s_hi]`` shows no sign change it is scanned
    in 64 uniform sub-brackets first.
    """
    cache: dict[float, tuple[float, OdeTrajectory]] = {}

    def miss(s: float) -> tuple[float, OdeTrajectory]:
        if s not in cache:
            traj = rk4(f, a, A, s, b, n)
            cache[s] = (float(traj.y[-1]) - B, traj)
        return cache[s]

    lo, hi = float(s_lo), float(s_hi)
    try:
        F_lo, F_hi = miss(lo)[0], miss(hi)[0]
        bracketed = F_lo * F_hi <= 0
    except IntegrationError:
        bracketed = False

    if not bracketed:
        lo, hi, F_lo, F_hi = _scan(miss, float(s_lo), float(s_hi))

    for s, F in ((lo, F_lo), (hi, F_hi)):
        if abs(F) <= tol:
            return s, miss(s)[1]

    width = hi - lo
    for _ in range(MAX_SHOOT_ITER):
        s = hi - F_hi * (hi - lo) / (F_hi - F_lo)
        if not lo < s < hi:
            s = 0.5 * (lo + hi)
        F = miss(s)[0]
        if abs(F) <= tol:
            return s, miss(s)[1]
        if F_lo * F < 0:
            hi, F_hi = s, F
        else:
            lo, F_lo = s, F
        if hi - lo > 0.5 * width:
            s = 0.5 * (lo + hi)
            F = miss(s)[0]
            if abs(F) <= tol:
                return s, miss(s)[1]
            if F_lo * F < 0:
                hi, F_hi = s, F
            else:
                lo, F_lo = s, F
        width = hi - lo
        if width == 0.0 or hi <= math.nextafter(lo, math.inf):
            break
    raise ShootingError(
        f"no slope within {MAX_SHOOT_ITER} iterations reached |y(b) - B| <= {tol} "
        f"(bracket [{lo!r}, {hi!r}])")


def _scan(miss, s_lo: float, s_hi: float):
    grid = np.linspace(s_lo, s_hi, SCAN_BRACKETS + 1)
    vals: list[float | None] = []
    failures = 0
    for s in grid:
        try:
            vals.append(miss(float(s))[0])
        except IntegrationError:
            vals.append(None)
            failures += 1
    for i in range(SCAN_BRACKETS):
        u, v = vals[i], vals[i + 1]
        if u is not None and v is not None and u * v <= 0:
            return float(grid[i]), float(grid[i + 1]), u, v
    finite = [v for v in vals if v is not None]
    summary = (f"scanned {SCAN_BRACKETS} sub-brackets of [{s_lo!r}, {s_hi!r}]: "
               f"{failures} trial slopes failed to integrate")
    if finite:
        summary += f", endpoint misses ranged over [{min(finite):.6g}, {max(finite):.6g}]"
    raise ShootingError("no sign change in the slope bracket; " + summary)


def bisect(g: Callable[[float], float], lo: float, hi: float, tol: float = 1e-12) -> float:
    """Root of ``g`` in ``[lo, hi]`` located to an interval of width ``tol``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    g_lo, g_hi = g(lo), g(hi)
    for v, at in ((g_lo, lo), (g_hi, hi)):
        if not math.isfinite(v):
            raise RootError(f"non-finite value {v!r} at {at!r}")
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    if g_lo * g_hi > 0:
        raise RootError(f"no sign change on [{lo!r}, {hi!r}]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        g_mid = g(mid)
        if not math.isfinite(g_mid):
            raise RootError(f"non-finite value {g_mid!r} at {mid!r}")
        if g_mid == 0.0:
            return mid
        if (g_mid < 0) == (g_lo < 0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# every branch refines to at least 2**MIN_DEPTH panels
MIN_DEPTH = 6


def adaptive_simpson(h: Callable[[float], float], a: float, b: float,
                     spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Adaptive Simpson with Richardson correction on a bounded integrand.

    A panel is accepted once the halves differ from it by at most its share
    of ``rel_tol`` times the magnitude of the integral (the conservative
    form of the test, without the usual factor 15).
    """
    def fv(t: float) -> float:
        v = h(t)
        if not math.isfinite(v):
            raise QuadratureError(f"non-finite integrand {v!r} at {t!r}")
        return v

    fa, fm, fb = fv(a), fv(0.5 * (a + b)), fv(b)
    # the absolute target comes from a composite estimate on 8 panels
    tol = spec.rel_tol * max(abs(_panels(fv, a, b, 8)), 1e-300)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = fv(lm), fv(rm)
        left = (m - a) / 6.0 * (fa + 4 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4 * frm + fb)
        delta = left + right - whole
        # no early exit: coarse panels can agree with their halves by accident
        if depth >= MIN_DEPTH and abs(delta) <= tol:
            return left + right + delta / 15.0
        if depth >= spec.max_depth:
            raise QuadratureError(
                f"depth {spec.max_depth} exhausted on [{a!r}, {b!r}] without reaching tolerance")
        return (recurse(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
                + recurse(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1))

    m = 0.5 * (a + b)
    flm, frm = fv(0.5 * (a + m)), fv(0.5 * (m + b))
    left = (m - a) / 6.0 * (fa + 4 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4 * frm + fb)
    return (recurse(a, m, fa, flm, fm, left, 0.5 * tol, 1)
            + recurse(m, b, fm, frm, fb, right, 0.5 * tol, 1))


def _panels(fv, a: float, b: float, k: int) -> float:
    xs = np.linspace(a, b, 2 * k + 1)
    ys = [fv(float(x)) for x in xs]
    hh = (b - a) / (2 * k)
    return hh / 3.0 * (ys[0] + ys[-1] + 4 * sum(ys[1:-1:2]) + 2 * sum(ys[2:-1:2]))


ENDPOINT_EPS = 1e-12


def integrate_singular(g: Callable[[float], float], x0: float, x1: float,
                       spec: QuadratureSpec = QuadratureSpec()) -> float:
    """Integrate ``g`` over ``[x0, x1]`` where ``g`` may blow up like ``(x - x0)**-0.5``.

    Substitutes ``x = x0 + t**2`` and integrates ``2*t*g(x0 + t**2)`` over
    ``t`` in ``[0, sqrt(x1 - x0)]``. The transformed integrand at ``t = 0``
    is taken one step inside: below ``t_min = 1e-12 * sqrt(x1 - x0)`` it is
    continued linearly through its values at ``t_min`` and ``2 t_min``, which
    gives the right limit for both regular and inverse-square-root ``g``.
    Points closer to ``x0`` than its float spacing cannot be resolved, so pass
    a shifted integrand with ``x0 = 0`` when ``g`` is singular at ``x0 != 0``.
    """
    if not x1 > x0:
        raise ValueError("x1 must exceed x0")
    span = math.sqrt(x1 - x0)
    t_min = ENDPOINT_EPS * span

    def raw(t: float) -> float:
        try:
            return 2.0 * t * g(x0 + t * t)
        except (DomainError, ArithmeticError, ValueError) as exc:
            raise QuadratureError(f"integrand failed at x={x0 + t * t!r}: {exc}") from exc

    h1 = raw(t_min)
    slope = (raw(2.0 * t_min) - h1) / t_min

    def h(t: float) -> float:
        if t < t_min:
            return h1 + (t - t_min) * slope
        return raw(t)

    return adaptive_simpson(h, 0.0, span, spec)
