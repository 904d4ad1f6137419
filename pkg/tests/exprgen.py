"""Random expression trees for property tests."""

import random

from varcal.expr import Call, Const, Neg, Power, Product, Sum, Var

NAMES = ("x", "y", "yp")
SAFE_FUNCS = ("sin", "cos", "arctan", "exp")


def random_expr(rng: random.Random, depth: int = 5, names=NAMES) -> object:
    if depth <= 1 or rng.random() < 0.2:
        if rng.random() < 0.3:
            return Const(rng.choice([0.5, 1.0, 2.0, 3.0, -1.5, 0.25]))
        return Var(rng.choice(names))
    kind = rng.choice(["sum", "product", "power", "neg", "call", "recip", "sqrt"])
    sub = lambda: random_expr(rng, depth - 1, names)  # noqa: E731
    if kind == "sum":
        return Sum(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "product":
        return Product(tuple(sub() for _ in range(rng.randint(2, 3))))
    if kind == "power":
        return Power(sub(), Const(rng.choice([2.0, 3.0])))
    if kind == "neg":
        return Neg(sub())
    if kind == "recip":
        # 1/(1 + u^2) has no real poles
        return Power(Sum((Const(1.0), Power(sub(), Const(2.0)))), Const(-1.0))
    if kind == "sqrt":
        return Call("sqrt", Sum((Const(1.0), Power(sub(), Const(2.0)))))
    return Call(rng.choice(SAFE_FUNCS), sub())


def random_bindings(rng: random.Random, names=NAMES, extra=()) -> dict:
    return {n: rng.uniform(-1.5, 1.5) for n in tuple(names) + tuple(extra)}
