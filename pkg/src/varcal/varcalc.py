"""Euler-Lagrange equations and first integrals of ``L(x, y, yp)``.

The residual of a Lagrangian is ``dL/dy - d/dx dL/dyp`` written in the
reserved names ``x, y, yp, ypp``; it is affine in ``ypp``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .expr import (
    Const, Expr, Neg, Power, Product, Sum, Var, as_expr, compile_expr, differentiate,
    free_variables, normalize, substitute, total_x_derivative,
)

__all__ = [
    "Lagrangian", "IntegralKind", "FirstIntegral", "EulerLagrangeResult",
    "VerificationReport", "DegenerateLagrangianError",
    "euler_lagrange", "detect_first_integrals", "accel_form", "accel_function",
    "verify_extremal", "first_integral_constancy",
]


class DegenerateLagrangianError(ValueError):
    """The Euler-Lagrange equation does not involve ``ypp``."""


@dataclass(frozen=True)
class Lagrangian:
    expr: Expr

    def __post_init__(self):
        e = normalize(as_expr(self.expr))
        if "ypp" in free_variables(e):
            raise ValueError("a Lagrangian may depend on x, y and yp only, not ypp")
        object.__setattr__(self, "expr", e)

    @classmethod
    def parse(cls, text: str) -> "Lagrangian":
        return cls(as_expr(text))

    @property
    def parameters(self) -> set[str]:
        return free_variables(self.expr) - {"x", "y", "yp"}


class IntegralKind(enum.Enum):
    MOMENTUM = "momentum"
    ENERGY = "energy"


@dataclass(frozen=True)
class FirstIntegral:
    kind: IntegralKind
    phi: Expr


@dataclass(frozen=True)
class EulerLagrangeResult:
    residual: Expr
    accel: Expr | None
    first_integrals: list[FirstIntegral] = field(default_factory=list)


@dataclass(frozen=True)
class VerificationReport:
    max_abs_residual: float
    sample_count: int
    worst_x: float


def _lagrangian(L: Lagrangian | Expr | str) -> Lagrangian:
    return L if isinstance(L, Lagrangian) else Lagrangian(as_expr(L))


def detect_first_integrals(L: Lagrangian | Expr | str) -> list[FirstIntegral]:
    """Momentum integral when ``y`` is absent, energy integral when ``x`` is.

    The energy integral is ``yp*dL/dyp - L``.
    """
    L = _lagrangian(L)
    names = free_variables(L.expr)
    p = differentiate(L.expr, "yp")
    out = []
    if "y" not in names:
        out.append(FirstIntegral(IntegralKind.MOMENTUM, p))
    if "x" not in names:
        energy = normalize(Sum((Product((Var("yp"), p)), Neg(L.expr))))
        out.append(FirstIntegral(IntegralKind.ENERGY, energy))
    return out


def _split_affine(residual: Expr) -> tuple[Expr, Expr]:
    return substitute(residual, "ypp", 0.0), differentiate(residual, "ypp")


def accel_form(r: EulerLagrangeResult | Expr) -> Expr:
    """Solve the residual ``P + Q*ypp`` for ``ypp = -P/Q``.

    Raises :class:`DegenerateLagrangianError` when ``Q`` normalizes to zero.
    """
    residual = r.residual if isinstance(r, EulerLagrangeResult) else r
    P, Q = _split_affine(residual)
    if Q == Const(0.0):
        raise DegenerateLagrangianError(
            "Euler-Lagrange equation is not second order (d2L/dyp2 is identically zero)")
    return normalize(Product((Const(-1.0), P, Power(Q, Const(-1.0)))))


def euler_lagrange(L: Lagrangian | Expr | str) -> EulerLagrangeResult:
    L = _lagrangian(L)
    dy = differentiate(L.expr, "y")
    dyp = differentiate(L.expr, "yp")
    residual = normalize(Sum((dy, Neg(total_x_derivative(dyp)))))
    try:
        accel = accel_form(residual)
    except DegenerateLagrangianError:
        accel = None
    return EulerLagrangeResult(residual, accel, detect_first_integrals(L))


def accel_function(accel: Expr, params: Mapping[str, float] | None = None
                   ) -> Callable[[float, float, float], float]:
    """Compile an acceleration expression into ``f(x, y, yp)``."""
    return compile_expr(accel, "x", "y", "yp", params=params)


def _along(candidate: Expr) -> dict[str, Expr]:
    c = normalize(as_expr(candidate))
    d1 = differentiate(c, "x")
    return {"y": c, "yp": d1, "ypp": differentiate(d1, "x")}


def _trace(e: Expr, candidate: Expr, x_lo: float, x_hi: float, n: int,
           params: Mapping[str, float] | None) -> tuple[np.ndarray, np.ndarray]:
    if n < 2:
        raise ValueError("need at least two sample points")
    subs = _along(candidate)
    for name in ("ypp", "yp", "y"):
        e = substitute(e, name, subs[name])
    f = compile_expr(e, "x", params=params)
    xs = np.linspace(x_lo, x_hi, n)
    return xs, np.array([f(float(x)) for x in xs])


def verify_extremal(L: Lagrangian | Expr | str, candidate: Expr | str, x_lo: float,
                    x_hi: float, n: int = 101, params: Mapping[str, float] | None = None
                    ) -> VerificationReport:
    """Evaluate the residual along ``y = candidate(x)`` on ``n`` uniform points."""
    r = euler_lagrange(L)
    xs, vals = _trace(r.residual, as_expr(candidate), x_lo, x_hi, n, params)
    i = int(np.argmax(np.abs(vals)))
    return VerificationReport(float(abs(vals[i])), n, float(xs[i]))


def first_integral_constancy(fi: FirstIntegral | Expr, candidate: Expr | str, x_lo: float,
                             x_hi: float, n: int = 101,
                             params: Mapping[str, float] | None = None
                             ) -> tuple[float, float]:
    """Mean value of the integral along the candidate and its max deviation."""
    phi = fi.phi if isinstance(fi, FirstIntegral) else fi
    _, vals = _trace(phi, as_expr(candidate), x_lo, x_hi, n, params)
    value = float(np.mean(vals))
    return value, float(np.max(np.abs(vals - value)))
