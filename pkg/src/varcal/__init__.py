"""Calculus-of-variations toolkit: symbolic Euler-Lagrange equations,
first integrals, shooting for extremals and the brachistochrone."""

from .expr import (
    Call, Const, DomainError, Expr, Neg, ParseError, Power, Product, Sum,
    UnboundVariableError, Var, differentiate, evaluate, free_variables,
    normalize, parse, substitute, to_string, total_x_derivative,
)

__version__ = "0.1.0"
