import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from exprgen import NAMES, random_bindings, random_expr
from varcal.expr import (
    Call, Const, DomainError, Neg, ParseError, Power, Product, Sum, UnboundVariableError, Var,
    compile_expr, differentiate, evaluate, free_variables, normalize, parse, substitute,
    to_string, total_x_derivative,
)

x, y, yp, ypp = Var("x"), Var("y"), Var("yp"), Var("ypp")
seeds = st.integers(min_value=0, max_value=2**32 - 1)


def N(text):
    return normalize(parse(text))


# -- parse -----------------------------------------------------------------

def test_parse_xy_lagrangian():
    assert parse("12*x*y - yp^2") == Sum((Product((Const(12), x, y)), Neg(Power(yp, Const(2)))))


def test_parse_single_variable():
    assert parse("x") == Var("x")


def test_power_is_right_associative():
    assert evaluate(parse("2^3^2"), {}) == 512.0


def test_unary_minus_binds_looser_than_power():
    assert evaluate(parse("-2^2"), {}) == -4.0
    assert evaluate(parse("(-2)^2"), {}) == 4.0


@pytest.mark.parametrize("text, offset", [("sin(", 4), ("yp^^2", 3), ("x +", 3), ("(x", 2),
                                          ("x $ y", 2), ("x y", 2)])
def test_syntax_error_offsets(text, offset):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert info.value.offset == offset
    assert info.value.expected


def test_unknown_function():
    with pytest.raises(ParseError, match="unknown function 'sinh'"):
        parse("sinh(x)")


def test_empty_text():
    with pytest.raises(ParseError):
        parse("   ")


def test_prime_aliases():
    assert parse("y'") == yp
    assert parse("y''") == ypp
    assert parse("y'*(1 + x^2*y')") == parse("yp*(1 + x^2*yp)")
    with pytest.raises(ParseError):
        parse("x'")


def test_division_and_subtraction_representation():
    assert parse("a/b") == Product((Var("a"), Power(Var("b"), Const(-1))))
    assert parse("a - b") == Sum((Var("a"), Neg(Var("b"))))
    assert parse("a - 3") == Sum((Var("a"), Const(-3)))


def test_scientific_literals():
    assert parse("1.5e-3*x") == Product((Const(0.0015), x))
    assert parse(".5") == Const(0.5)


@pytest.mark.parametrize("text", [
    "12*x*y - yp^2", "yp*(1 + x^2*yp)", "sqrt((1 + yp^2)/(y0 - y))", "-x^2", "a/b/c",
    "x^-1", "x^(-y)", "(x^2)^3", "2^3^2", "-(a + b)", "a - (b - c)", "a*(-b)", "(-2)^x",
    "-(x*y)", "sin(x)*cos(y)/tan(yp)", "arccot(cot(x/2))", "1/x*y", "ln(exp(x)) - 1e-05",
])
def test_printed_form_reparses_identically(text):
    e = parse(text)
    assert parse(to_string(e)) == e


# -- to_string -------------------------------------------------------------

def test_to_string_examples():
    assert to_string(Sum((x, Const(1)))) == "x + 1"
    assert to_string(Power(yp, Const(2))) == "yp^2"
    assert to_string(Product((Const(12), x, y))) == "12*x*y"


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_round_trip_after_normalize(seed):
    e = random_expr(random.Random(seed))
    assert normalize(parse(to_string(e))) == normalize(e)


# -- normalize -------------------------------------------------------------

@pytest.mark.parametrize("text, expected", [
    ("x + 0", "x"), ("2*3*x", "6*x"), ("yp + yp", "2*yp"), ("y - y", "0"), ("x*1", "x"),
    ("x^1", "x"), ("0*sin(x)", "0"), ("x*x^2", "x^3"), ("x/x^2", "x^-1"),
    ("-(a - b)", "-a + b"), ("(2*x*y)^2", "4*x^2*y^2"), ("((x + 1) + (y + 2))", "3 + x + y"),
])
def test_normalize_examples(text, expected):
    assert to_string(N(text)) == expected


def test_normalize_flattens_and_folds():
    e = normalize(Sum((Sum((x, Const(1))), Sum((y, Const(2))))))
    assert isinstance(e, Sum)
    assert not any(isinstance(t, Sum) for t in e.terms)
    assert sum(isinstance(t, Const) for t in e.terms) == 1


def test_normalize_is_order_insensitive():
    assert N("y*x + 3") == N("3 + x*y")
    assert N("ypp*2 + x*12") == N("12*x + 2*ypp")


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_normalize_idempotent_and_evaluation_preserving(seed):
    rng = random.Random(seed)
    e = random_expr(rng)
    n = normalize(e)
    assert normalize(n) == n
    b = random_bindings(rng)
    try:
        v = evaluate(e, b)
    except DomainError:
        assume(False)
    assert math.isclose(evaluate(n, b), v, rel_tol=1e-12, abs_tol=1e-300)


# -- differentiate ---------------------------------------------------------

def test_derivative_of_cube():
    assert differentiate(parse("x^3"), "x") == N("3*x^2")


def test_momentum_derivative():
    assert differentiate(parse("yp*(1 + x^2*yp)"), "yp") == N("1 + 2*x^2*yp")


def test_partial_in_y():
    assert differentiate(parse("12*x*y - yp^2"), "y") == N("12*x")


def test_constant_derivative_is_zero():
    assert differentiate(parse("sin(a)*b"), "x") == Const(0)


@pytest.mark.parametrize("fn, deriv", [
    ("sin(x)", "cos(x)"), ("cos(x)", "-sin(x)"), ("tan(x)", "1 + tan(x)^2"),
    ("cot(x)", "-(1 + cot(x)^2)"), ("sqrt(x)", "1/(2*sqrt(x))"), ("exp(x)", "exp(x)"),
    ("ln(x)", "1/x"), ("arctan(x)", "1/(1 + x^2)"), ("arccot(x)", "-1/(1 + x^2)"),
    ("2^x", "2^x*ln(2)"),
])
def test_function_rules(fn, deriv):
    # compare numerically: normal forms of equivalent derivatives may differ
    got = differentiate(parse(fn), "x")
    want = parse(deriv)
    for v in (0.3, 0.7, 1.2):
        assert evaluate(got, {"x": v}) == pytest.approx(evaluate(want, {"x": v}), rel=1e-14)


def test_x_to_the_x():
    got = differentiate(parse("x^x"), "x")
    assert evaluate(got, {"x": 1.7}) == pytest.approx(1.7**1.7 * (math.log(1.7) + 1), rel=1e-14)


def _fd(e, b, v, h=1e-6):
    up, dn = dict(b), dict(b)
    up[v] += h
    dn[v] -= h
    return (evaluate(e, up) - evaluate(e, dn)) / (2 * h)


@settings(max_examples=300, deadline=None)
@given(seeds)
def test_derivative_matches_central_difference(seed):
    rng = random.Random(seed)
    e = random_expr(rng)
    b = random_bindings(rng)
    v = rng.choice(NAMES)
    try:
        f0 = evaluate(e, b)
        fd = _fd(e, b, v)
    except (DomainError, OverflowError):
        assume(False)
    assume(math.isfinite(f0) and abs(f0) < 1e6 and math.isfinite(fd))
    d = evaluate(differentiate(e, v), b)
    assert math.isclose(d, fd, rel_tol=1e-5, abs_tol=1e-5)


@settings(max_examples=200, deadline=None)
@given(seeds)
def test_differentiation_is_linear(seed):
    rng = random.Random(seed)
    e1, e2 = random_expr(rng, 4), random_expr(rng, 4)
    v = rng.choice(NAMES)
    lhs = differentiate(Sum((e1, e2)), v)
    rhs = normalize(Sum((differentiate(e1, v), differentiate(e2, v))))
    assert lhs == rhs


# -- total_x_derivative ----------------------------------------------------

def test_total_derivative_of_y():
    assert total_x_derivative(y) == yp


def test_total_derivative_of_momentum_integral():
    assert total_x_derivative(parse("1 + 2*x^2*yp")) == N("4*x*yp + 2*x^2*ypp")


def test_total_derivative_of_x_squared():
    assert total_x_derivative(parse("x^2")) == N("2*x")


def test_total_derivative_rejects_ypp():
    with pytest.raises(ValueError):
        total_x_derivative(parse("x*ypp"))


def test_total_derivative_matches_chain_rule_along_curve():
    # y = sin(x): d/dx phi(x, sin x, cos x) by finite differences
    phi = parse("x*y^2 + yp*exp(y)")
    dphi = total_x_derivative(phi)

    def along(t):
        return evaluate(phi, {"x": t, "y": math.sin(t), "yp": math.cos(t)})

    t = 0.4
    fd = (along(t + 1e-6) - along(t - 1e-6)) / 2e-6
    got = evaluate(dphi, {"x": t, "y": math.sin(t), "yp": math.cos(t), "ypp": -math.sin(t)})
    assert got == pytest.approx(fd, rel=1e-8)


# -- substitute ------------------------------------------------------------

def test_substitute_momentum_slope():
    got = substitute(parse("yp^2"), "yp", parse("4/x^2"))
    assert got == N("16/x^4")
    assert evaluate(got, {"x": 1.3}) == pytest.approx(16 / 1.3**4, rel=1e-15)


def test_substitute_absent_variable():
    assert substitute(x, "y", 5) == x


def test_substitute_into_product():
    assert substitute(parse("y*yp"), "y", parse("x^2")) == N("x^2*yp")


# -- evaluate --------------------------------------------------------------

def test_residual_vanishes_on_cubic_extremal():
    assert evaluate(parse("12*x + 2*ypp"), {"x": -1, "ypp": 6}) == 0.0


@pytest.mark.parametrize("text, b, reason", [
    ("sqrt(x)", {"x": -1}, "sqrt"),
    ("ln(x)", {"x": 0}, "ln"),
    ("1/x", {"x": 0}, "division by zero"),
    ("cot(x)", {"x": 0}, "cot"),
    ("x^0.5", {"x": -2}, "negative"),
])
def test_domain_errors(text, b, reason):
    with pytest.raises(DomainError, match=reason) as info:
        evaluate(parse(text), b)
    assert info.value.point == b
    assert to_string(info.value.subexpr) in text or info.value.subexpr is not None


def test_domain_error_names_subexpression():
    with pytest.raises(DomainError) as info:
        evaluate(parse("x + sqrt(y - 3)"), {"x": 1, "y": 1})
    assert to_string(info.value.subexpr) == "sqrt(y - 3)"
    assert "sqrt(y - 3)" in str(info.value) and "y=1" in str(info.value)


def test_unbound_variable():
    with pytest.raises(UnboundVariableError) as info:
        evaluate(parse("x*y"), {"x": 2})
    assert info.value.name == "y"


def test_arccot_principal_branch():
    assert evaluate(parse("arccot(1)"), {}) == pytest.approx(math.pi / 4)
    assert evaluate(parse("arccot(-1)"), {}) == pytest.approx(3 * math.pi / 4)


def test_compile_expr_binds_positionally_and_params():
    f = compile_expr("a*x + y", "x", "y", params={"a": 2.0})
    assert f(3.0, 1.0) == 7.0
    with pytest.raises(UnboundVariableError):
        compile_expr("a*x", "x")


# -- free_variables ----------------------------------------------------------

def test_free_variables_momentum_lagrangian():
    assert free_variables(parse("yp*(1 + x^2*yp)")) == {"x", "yp"}


def test_free_variables_of_constant():
    assert free_variables(Const(3)) == set()


def test_free_variables_after_cancellation():
    assert free_variables(parse("y - y")) == set()


def test_expr_nodes_are_immutable_and_hashable():
    e = parse("x + y")
    with pytest.raises(AttributeError):
        e.terms = ()
    assert {e: 1}[parse("x + y")] == 1
    with pytest.raises(ValueError):
        Call("sinh", x)
    with pytest.raises(ValueError):
        Sum((x,))
