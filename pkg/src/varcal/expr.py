"""Immutable expression trees for Lagrangians, curves and residuals.

Trees are built from seven node kinds (:class:`Const`, :class:`Var`,
:class:`Sum`, :class:`Product`, :class:`Power`, :class:`Neg`, :class:`Call`).
Division is ``Product(a, Power(b, -1))`` and subtraction is ``Sum(a, Neg(b))``.

The names ``x``, ``y``, ``yp`` and ``ypp`` are reserved for the independent
variable, the dependent variable and its first two derivatives; every other
identifier is a symbolic parameter.

>>> e = parse("12*x*y - yp^2")
>>> to_string(differentiate(e, "yp"))
'-2*yp'
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Callable, Mapping

__all__ = [
    "Expr", "Const", "Var", "Sum", "Product", "Power", "Neg", "Call",
    "FUNCTIONS", "RESERVED",
    "ExprError", "ParseError", "UnboundVariableError", "DomainError",
    "parse", "to_string", "differentiate", "total_x_derivative", "normalize",
    "substitute", "evaluate", "free_variables", "compile_expr", "as_expr",
]

RESERVED = ("x", "y", "yp", "ypp")


class ExprError(Exception):
    """Base class for expression errors."""


class ParseError(ExprError, ValueError):
    def __init__(self, message: str, offset: int, expected: str | None = None):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class UnboundVariableError(ExprError, LookupError):
    def __init__(self, name: str):
        self.name = name
        super().__init__(f"unbound variable '{name}'")


class DomainError(ExprError, ArithmeticError):
    """Evaluation left the real domain of an operation.

    ``subexpr`` is the offending subexpression and ``point`` the bindings
    at which it was evaluated.
    """

    def __init__(self, reason: str, subexpr: "Expr", point: Mapping[str, float]):
        self.reason = reason
        self.subexpr = subexpr
        self.point = dict(point)
        pt = ", ".join(f"{k}={v!r}" for k, v in sorted(self.point.items()))
        super().__init__(f"{reason} in '{to_string(subexpr)}' at {{{pt}}}")


# ---------------------------------------------------------------------------
# node types


class Expr:
    __slots__ = ()

    def __str__(self) -> str:
        return to_string(self)


@dataclass(frozen=True, slots=True)
class Const(Expr):
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", float(self.value))


@dataclass(frozen=True, slots=True)
class Var(Expr):
    name: str


@dataclass(frozen=True, slots=True)
class Sum(Expr):
    terms: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "terms", tuple(self.terms))
        if len(self.terms) < 2:
            raise ValueError("Sum needs at least two terms")


@dataclass(frozen=True, slots=True)
class Product(Expr):
    factors: tuple[Expr, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if len(self.factors) < 2:
            raise ValueError("Product needs at least two factors")


@dataclass(frozen=True, slots=True)
class Power(Expr):
    base: Expr
    exponent: Expr


@dataclass(frozen=True, slots=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True, slots=True)
class Call(Expr):
    function: str
    arg: Expr

    def __post_init__(self):
        if self.function not in FUNCTIONS:
            raise ValueError(f"unknown function '{self.function}'")


FUNCTIONS = ("sin", "cos", "tan", "cot", "sqrt", "exp", "ln", "arctan", "arccot")

ZERO = Const(0.0)
ONE = Const(1.0)


def as_expr(value: Expr | str | float) -> Expr:
    """Coerce a string (parsed), a number or an Expr to an Expr."""
    if isinstance(value, Expr):
        return value
    if isinstance(value, str):
        return parse(value)
    return Const(value)


def _sum(*terms: Expr) -> Expr:
    return terms[0] if len(terms) == 1 else Sum(terms)


def _product(*factors: Expr) -> Expr:
    return factors[0] if len(factors) == 1 else Product(factors)


# ---------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:"
    r"(?P<num>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)"
    r"|(?P<name>[A-Za-z_][A-Za-z0-9_]*'*)"
    r"|(?P<op>[-+*/^(),])"
    r")"
)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        n = len(text)
        while pos < n:
            m = _TOKEN_RE.match(text, pos)
            if m is None or m.end() == pos or m.lastgroup is None:
                # trailing whitespace only
                if text[pos:].strip() == "":
                    break
                bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
                raise ParseError(f"unexpected character {text[bad]!r}", bad,
                                 "number, name, operator or parenthesis")
            kind = m.lastgroup
            self.tokens.append((kind, m.group(kind), m.start(kind)))
            pos = m.end()
        self.tokens.append(("end", "", len(text)))
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str) -> None:
        kind, val, off = self.peek()
        if val != value or kind != "op":
            raise ParseError(f"unexpected {_describe(kind, val)}", off, f"'{value}'")
        self.advance()

    def parse(self) -> Expr:
        e = self.expr()
        kind, val, off = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {_describe(kind, val)}", off, "operator or end of input")
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.advance()
                rhs = self.term()
                terms.append(rhs if val == "+" else _negate(rhs))
            else:
                break
        return _sum(*terms)

    def term(self) -> Expr:
        factors = [self.unary()]
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "*/":
                self.advance()
                rhs = self.unary()
                factors.append(rhs if val == "*" else Power(rhs, Const(-1.0)))
            else:
                break
        return _product(*factors)

    def unary(self) -> Expr:
        kind, val, _ = self.peek()
        if kind == "op" and val == "-":
            self.advance()
            return _negate(self.unary())
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.advance()
            # exponent may carry its own unary minus; right-associative
            return Power(base, self.unary())
        return base

    def atom(self) -> Expr:
        kind, val, off = self.advance()
        if kind == "num":
            return Const(float(val))
        if kind == "name":
            primes = len(val) - len(val.rstrip("'"))
            name = val.rstrip("'")
            if primes:
                if name != "y" or primes > 2:
                    raise ParseError(f"prime is only allowed on 'y', got {val!r}", off)
                return Var("y" + "p" * primes)
            nkind, nval, _ = self.peek()
            if nkind == "op" and nval == "(":
                if name not in FUNCTIONS:
                    raise ParseError(f"unknown function '{name}'", off, "one of " + ", ".join(FUNCTIONS))
                self.advance()
                arg = self.expr()
                self.expect(")")
                return Call(name, arg)
            return Var(name)
        if kind == "op" and val == "(":
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(f"unexpected {_describe(kind, val)}", off, "number, name or '('")


def _describe(kind: str, val: str) -> str:
    return "end of input" if kind == "end" else f"{val!r}"


def _negate(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(-e.value)
    return Neg(e)


def parse(text: str) -> Expr:
    """Parse infix text into an Expr.

    Precedence, tightest first: ``^`` (right-associative), unary minus,
    ``*`` and ``/``, ``+`` and ``-``. ``y'`` is accepted for ``yp`` and
    ``y''`` for ``ypp``. A unary minus applied to a constant folds into it.
    """
    if not text or not text.strip():
        raise ParseError("empty expression", 0, "expression")
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# printing

_PREC_SUM, _PREC_PRODUCT, _PREC_NEG, _PREC_POWER, _PREC_ATOM = range(1, 6)


def _fmt_number(v: float) -> str:
    if math.isfinite(v) and v.is_integer() and abs(v) < 1e16:
        return str(int(v))
    return repr(v)


def _prec(e: Expr) -> int:
    if isinstance(e, Sum):
        return _PREC_SUM
    if isinstance(e, Product):
        return _PREC_PRODUCT
    if isinstance(e, Neg) or (isinstance(e, Const) and e.value < 0):
        return _PREC_NEG
    if isinstance(e, Power):
        return _PREC_POWER
    return _PREC_ATOM


def _wrap(e: Expr, min_prec: int) -> str:
    s = to_string(e)
    return f"({s})" if _prec(e) < min_prec else s


def _is_negative_term(e: Expr) -> bool:
    if isinstance(e, Neg):
        return True
    if isinstance(e, Const):
        return e.value < 0
    return (isinstance(e, Product) and isinstance(e.factors[0], Const)
            and e.factors[0].value < 0)


def _abs_term(e: Expr) -> str:
    """Printed magnitude of a term for which _is_negative_term holds."""
    if isinstance(e, Neg):
        return _wrap(e.arg, _PREC_PRODUCT)
    if isinstance(e, Const):
        return _fmt_number(-e.value)
    coef = -e.factors[0].value
    rest = e.factors[1:]
    if coef == 1.0:
        return _product_string(rest)
    return _product_string((Const(coef),) + rest)


def _is_reciprocal(f: Expr) -> bool:
    return isinstance(f, Power) and isinstance(f.exponent, Const) and f.exponent.value == -1.0


def _product_string(factors: tuple[Expr, ...]) -> str:
    if (len(factors) > 1 and factors[0] == Const(-1.0) and _prec(factors[1]) >= _PREC_POWER
            and not _is_reciprocal(factors[1])):
        return "-" + _product_string(factors[1:])
    out = []
    for i, f in enumerate(factors):
        if _is_reciprocal(f):
            out.append(("1" if i == 0 else "") + "/" + _wrap(f.base, _PREC_POWER))
            continue
        if i == 0:
            # "-a*b" parses as (-a)*b, so a leading negation needs no parens
            s = _wrap(f, _PREC_NEG if not isinstance(f, Product) else _PREC_ATOM)
        else:
            s = "*" + _wrap(f, _PREC_POWER)
        out.append(s)
    return "".join(out)


def to_string(e: Expr) -> str:
    """Render an Expr in the syntax accepted by :func:`parse`."""
    if isinstance(e, Const):
        return _fmt_number(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Sum):
        parts = [_wrap(e.terms[0], _PREC_SUM + 1) if isinstance(e.terms[0], Sum) else to_string(e.terms[0])]
        for t in e.terms[1:]:
            if _is_negative_term(t):
                parts.append(" - " + _abs_term(t))
            else:
                parts.append(" + " + _wrap(t, _PREC_SUM + 1))
        return "".join(parts)
    if isinstance(e, Product):
        return _product_string(e.factors)
    if isinstance(e, Neg):
        a = e.arg
        if isinstance(a, (Sum, Product, Neg)) or (isinstance(a, Const) and a.value < 0):
            return f"-({to_string(a)})"
        return "-" + to_string(a)
    if isinstance(e, Power):
        base = _wrap(e.base, _PREC_ATOM)
        ex = e.exponent
        if isinstance(ex, Const) or isinstance(ex, (Var, Call, Power)):
            exs = to_string(ex)
        else:
            exs = f"({to_string(ex)})"
        return f"{base}^{exs}"
    if isinstance(e, Call):
        return f"{e.function}({to_string(e.arg)})"
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# normalization


def _sort_key(e: Expr) -> tuple:
    # powers sort next to their base; repr breaks every remaining tie
    if isinstance(e, Const):
        head = (0, "", "", e.value)
    elif isinstance(e, Var):
        head = (1, e.name, "", 0.0)
    elif isinstance(e, Power):
        head = _sort_key(e.base)[:2] + (to_string(e.exponent), 0.0)
    elif isinstance(e, Call):
        head = (2, e.function, to_string(e.arg), 0.0)
    elif isinstance(e, Sum):
        head = (3, to_string(e), "", 0.0)
    else:
        head = (4, to_string(e), "", 0.0)
    return head + (repr(e),)


def _split_coefficient(e: Expr) -> tuple[float, tuple[Expr, ...]]:
    """Split a normalized term into numeric coefficient and remaining factors."""
    if isinstance(e, Const):
        return e.value, ()
    if isinstance(e, Product):
        if isinstance(e.factors[0], Const):
            return e.factors[0].value, e.factors[1:]
        return 1.0, e.factors
    return 1.0, (e,)


def _split_power(e: Expr) -> tuple[Expr, float]:
    if isinstance(e, Power) and isinstance(e.exponent, Const):
        return e.base, e.exponent.value
    return e, 1.0


def _fold_power(b: float, k: float) -> float | None:
    if b == 0.0 and k < 0:
        return None
    if b < 0 and not float(k).is_integer():
        return None
    try:
        v = b ** k
    except (OverflowError, ZeroDivisionError):
        return None
    return v if isinstance(v, float) and math.isfinite(v) else None


def _norm_sum(terms: list[Expr]) -> Expr:
    flat: list[Expr] = []
    for t in terms:
        t = normalize(t)
        if isinstance(t, Sum):
            flat.extend(t.terms)
        else:
            flat.append(t)
    constant = 0.0
    coefs: dict[tuple[Expr, ...], float] = {}
    for t in flat:
        c, rest = _split_coefficient(t)
        if not rest:
            constant += c
        else:
            coefs[rest] = coefs.get(rest, 0.0) + c
    out: list[Expr] = []
    for rest in sorted(coefs, key=lambda r: [_sort_key(f) for f in r]):
        c = coefs[rest]
        if c == 0.0:
            continue
        if c == 1.0:
            out.append(_product(*rest))
        else:
            out.append(Product((Const(c),) + rest))
    if constant != 0.0 or not out:
        out.insert(0, Const(constant))
    return _sum(*out)


def _norm_product(factors: list[Expr]) -> Expr:
    flat: list[Expr] = []
    for f in factors:
        f = normalize(f)
        if isinstance(f, Product):
            flat.extend(f.factors)
        else:
            flat.append(f)
    coef = 1.0
    exps: dict[Expr, float] = {}
    for f in flat:
        if isinstance(f, Const):
            coef *= f.value
            continue
        base, k = _split_power(f)
        exps[base] = exps.get(base, 0.0) + k
    if coef == 0.0:
        return ZERO
    rest: list[Expr] = []
    for base, k in exps.items():
        if k == 0.0:
            continue
        rest.append(base if k == 1.0 else _norm_power(base, Const(k)))
    rest.sort(key=_sort_key)
    if not rest:
        return Const(coef)
    if coef != 1.0 and len(rest) == 1 and isinstance(rest[0], Sum):
        # a bare numeric coefficient is distributed over a single sum
        return _norm_sum([_norm_product([Const(coef), t]) for t in rest[0].terms])
    if coef != 1.0:
        rest.insert(0, Const(coef))
    return _product(*rest)


def _norm_power(base: Expr, exponent: Expr) -> Expr:
    b = normalize(base)
    k = normalize(exponent)
    if isinstance(k, Const):
        if k.value == 0.0:
            return ONE
        if k.value == 1.0:
            return b
        if isinstance(b, Const):
            v = _fold_power(b.value, k.value)
            if v is not None:
                return Const(v)
        if k.value.is_integer():
            if isinstance(b, Power) and isinstance(b.exponent, Const):
                return _norm_power(b.base, Const(b.exponent.value * k.value))
            if isinstance(b, Product):
                return _norm_product([Power(f, k) for f in b.factors])
    if isinstance(b, Const) and b.value == 1.0:
        return ONE
    return Power(b, k)


_FOLDERS: dict[str, Callable[[float], float]] = {
    "sin": math.sin, "cos": math.cos, "tan": math.tan,
    "exp": math.exp, "arctan": math.atan,
}


def normalize(e: Expr) -> Expr:
    """Bounded simplification to a canonical form.

    Flattens nested sums and products, folds constants, removes identity
    elements, collects like terms (numeric coefficients) and like factors
    (numeric exponents), distributes integer powers over products and a
    lone numeric coefficient over a sum, and sorts operands. No trig
    identities and no factoring. Idempotent.
    """
    if isinstance(e, (Const, Var)):
        return e
    if isinstance(e, Sum):
        return _norm_sum(list(e.terms))
    if isinstance(e, Product):
        return _norm_product(list(e.factors))
    if isinstance(e, Neg):
        return _norm_product([Const(-1.0), e.arg])
    if isinstance(e, Power):
        return _norm_power(e.base, e.exponent)
    if isinstance(e, Call):
        a = normalize(e.arg)
        if isinstance(a, Const) and e.function in _FOLDERS:
            v = _FOLDERS[e.function](a.value)
            if math.isfinite(v):
                return Const(v)
        if (isinstance(a, Const) and e.function == "sqrt" and a.value >= 0):
            return Const(math.sqrt(a.value))
        return Call(e.function, a)
    raise TypeError(f"not an Expr: {e!r}")


# ---------------------------------------------------------------------------
# variables and substitution


def free_variables(e: Expr) -> set[str]:
    """Names occurring in ``normalize(e)``."""
    out: set[str] = set()
    _collect_vars(normalize(e), out)
    return out


def _collect_vars(e: Expr, out: set[str]) -> None:
    if isinstance(e, Var):
        out.add(e.name)
    elif isinstance(e, Sum):
        for t in e.terms:
            _collect_vars(t, out)
    elif isinstance(e, Product):
        for f in e.factors:
            _collect_vars(f, out)
    elif isinstance(e, Power):
        _collect_vars(e.base, out)
        _collect_vars(e.exponent, out)
    elif isinstance(e, (Neg, Call)):
        _collect_vars(e.arg, out)


def _replace(e: Expr, var: str, rep: Expr) -> Expr:
    if isinstance(e, Var):
        return rep if e.name == var else e
    if isinstance(e, Const):
        return e
    if isinstance(e, Sum):
        return Sum(tuple(_replace(t, var, rep) for t in e.terms))
    if isinstance(e, Product):
        return Product(tuple(_replace(f, var, rep) for f in e.factors))
    if isinstance(e, Power):
        return Power(_replace(e.base, var, rep), _replace(e.exponent, var, rep))
    if isinstance(e, Neg):
        return Neg(_replace(e.arg, var, rep))
    if isinstance(e, Call):
        return Call(e.function, _replace(e.arg, var, rep))
    raise TypeError(f"not an Expr: {e!r}")


def substitute(e: Expr, var: str, replacement: Expr | str | float) -> Expr:
    """Replace every occurrence of variable ``var`` and normalize."""
    return normalize(_replace(e, var, as_expr(replacement)))


# ---------------------------------------------------------------------------
# differentiation


def _d(e: Expr, v: str) -> Expr:
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == v else ZERO
    if isinstance(e, Sum):
        return Sum(tuple(_d(t, v) for t in e.terms))
    if isinstance(e, Product):
        fs = e.factors
        terms = []
        for i, f in enumerate(fs):
            terms.append(Product(fs[:i] + (_d(f, v),) + fs[i + 1:]))
        return Sum(tuple(terms))
    if isinstance(e, Neg):
        return Neg(_d(e.arg, v))
    if isinstance(e, Power):
        b, k = e.base, e.exponent
        k_has = v in free_variables(k)
        if not k_has:
            return Product((k, Power(b, Sum((k, Const(-1.0)))), _d(b, v)))
        b_has = v in free_variables(b)
        if not b_has:
            return Product((e, Call("ln", b), _d(k, v)))
        return Product((e, Sum((
            Product((_d(k, v), Call("ln", b))),
            Product((k, _d(b, v), Power(b, Const(-1.0)))),
        ))))
    if isinstance(e, Call):
        u = e.arg
        du = _d(u, v)
        outer = _call_derivative(e.function, u, e)
        return Product((outer, du))
    raise TypeError(f"not an Expr: {e!r}")


def _call_derivative(fn: str, u: Expr, whole: Expr) -> Expr:
    one_plus_u2 = Sum((ONE, Power(u, Const(2.0))))
    if fn == "sin":
        return Call("cos", u)
    if fn == "cos":
        return Neg(Call("sin", u))
    if fn == "tan":
        return Sum((ONE, Power(whole, Const(2.0))))
    if fn == "cot":
        return Neg(Sum((ONE, Power(whole, Const(2.0)))))
    if fn == "sqrt":
        return Power(Product((Const(2.0), whole)), Const(-1.0))
    if fn == "exp":
        return whole
    if fn == "ln":
        return Power(u, Const(-1.0))
    if fn == "arctan":
        return Power(one_plus_u2, Const(-1.0))
    if fn == "arccot":
        return Neg(Power(one_plus_u2, Const(-1.0)))
    raise ValueError(f"unknown function '{fn}'")


def differentiate(e: Expr, var: str) -> Expr:
    """Partial derivative with respect to ``var``; other names are constants."""
    return normalize(_d(normalize(e), var))


def total_x_derivative(e: Expr) -> Expr:
    """Derivative along a trajectory: ``de/dx + yp*de/dy + ypp*de/dyp``."""
    if "ypp" in free_variables(e):
        raise ValueError("total_x_derivative takes first-order data only; got 'ypp'")
    return normalize(Sum((
        differentiate(e, "x"),
        Product((Var("yp"), differentiate(e, "y"))),
        Product((Var("ypp"), differentiate(e, "yp"))),
    )))


# ---------------------------------------------------------------------------
# evaluation


def _power(b: float, k: float, node: Expr, env: Mapping[str, float]) -> float:
    if b == 0.0 and k < 0:
        raise DomainError("division by zero", node, env)
    if b < 0.0 and not float(k).is_integer():
        raise DomainError("non-integer power of a negative number", node, env)
    try:
        return b ** k
    except OverflowError:
        odd = float(k).is_integer() and int(k) % 2 == 1
        return -math.inf if (b < 0 and odd) else math.inf


def _apply(fn: str, u: float, node: Expr, env: Mapping[str, float]) -> float:
    if fn == "sin":
        return math.sin(u)
    if fn == "cos":
        return math.cos(u)
    if fn == "tan":
        return math.tan(u)
    if fn == "cot":
        s = math.sin(u)
        if s == 0.0:
            raise DomainError("cot at a multiple of pi", node, env)
        return math.cos(u) / s
    if fn == "sqrt":
        if u < 0.0:
            raise DomainError("sqrt of a negative number", node, env)
        return math.sqrt(u)
    if fn == "exp":
        try:
            return math.exp(u)
        except OverflowError:
            return math.inf
    if fn == "ln":
        if u <= 0.0:
            raise DomainError("ln of a non-positive number", node, env)
        return math.log(u)
    if fn == "arctan":
        return math.atan(u)
    if fn == "arccot":
        # principal branch with range (0, pi)
        return math.pi / 2 - math.atan(u)
    raise ValueError(f"unknown function '{fn}'")


def _eval(e: Expr, env: Mapping[str, float]) -> float:
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        try:
            return env[e.name]
        except KeyError:
            raise UnboundVariableError(e.name) from None
    if isinstance(e, Sum):
        return math.fsum(_eval(t, env) for t in e.terms)
    if isinstance(e, Product):
        r = 1.0
        for f in e.factors:
            r *= _eval(f, env)
        return r
    if isinstance(e, Power):
        return _power(_eval(e.base, env), _eval(e.exponent, env), e, env)
    if isinstance(e, Neg):
        return -_eval(e.arg, env)
    if isinstance(e, Call):
        return _apply(e.function, _eval(e.arg, env), e, env)
    raise TypeError(f"not an Expr: {e!r}")


def evaluate(e: Expr, bindings: Mapping[str, float]) -> float:
    """Evaluate ``e`` in IEEE double precision.

    Raises :class:`UnboundVariableError` for a free variable missing from
    ``bindings`` and :class:`DomainError` for sqrt of a negative, ln of a
    non-positive, division by zero or cot at a multiple of pi.
    """
    return float(_eval(e, bindings))


def compile_expr(e: Expr | str, *names: str, params: Mapping[str, float] | None = None
                 ) -> Callable[..., float]:
    """Return ``f(*values)`` evaluating ``e`` with ``names`` bound positionally.

    ``params`` supplies fixed values for any remaining names.
    """
    e = normalize(as_expr(e))
    fixed = dict(params or {})
    missing = free_variables(e) - set(names) - set(fixed)
    if missing:
        raise UnboundVariableError(sorted(missing)[0])

    def f(*values: float) -> float:
        env = dict(fixed)
        env.update(zip(names, values))
        return _eval(e, env)

    f.expr = e  # type: ignore[attr-defined]
    return f
