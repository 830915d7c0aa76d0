"""
Symbol expression grammar.

An expression is arithmetic over the variables x and k, the constants i, pi
and numbers, the functions exp, sin, cos, abs, sqrt, and the Japanese bracket
written <...> (so "<k>" is (1+k^2)^(1/2)). Both ^ and ** denote powers.

Examples:
    "1"                    identity
    "exp(i*x)"             shift
    "<k>^(-1)"             order -1 multiplier
    "k^2 + exp(i*x)/4"     alpha(k) + V(x)

Expressions are parsed with sympy and compiled to numpy with lambdify.
"""
from typing import Callable

import numpy as np
import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    parse_expr,
    standard_transformations,
)

from toruspdo.helper.errors import ParseError

X, K = sympy.symbols("x k", real=True)

_ALLOWED_FUNCTIONS = {sympy.exp, sympy.sin, sympy.cos, sympy.Abs}
_TRANSFORMS = standard_transformations + (convert_xor,)


def _bracket(arg):
    return sympy.sqrt(1 + arg ** 2)


_LOCALS = {
    "x": X,
    "k": K,
    "i": sympy.I,
    "I": sympy.I,
    "pi": sympy.pi,
    "exp": sympy.exp,
    "sin": sympy.sin,
    "cos": sympy.cos,
    "abs": sympy.Abs,
    "sqrt": sympy.sqrt,
    "jbracket": _bracket,
}


def _rewrite_brackets(text: str) -> str:
    """Turn <...> into jbracket(...); angle brackets never mean comparison here."""
    out = []
    depth = 0
    for ch in text:
        if ch == "<":
            out.append("jbracket(")
            depth += 1
        elif ch == ">":
            if depth == 0:
                raise ParseError(f"Unbalanced '>' in expression {text!r}")
            out.append(")")
            depth -= 1
        else:
            out.append(ch)
    if depth != 0:
        raise ParseError(f"Unbalanced '<' in expression {text!r}")
    return "".join(out)


def parse_expression(text: str, allow_x: bool = True) -> sympy.Expr:
    """
    Parse an expression of the grammar into a sympy expression.

    Raises:
        ParseError: on syntax errors, unknown names or disallowed functions
    """
    if not isinstance(text, str) or not text.strip():
        raise ParseError("Expression must be a non-empty string")
    source = _rewrite_brackets(text.strip())
    if "__" in source or "lambda" in source:
        raise ParseError(f"Expression {text!r} contains forbidden tokens")
    try:
        expr = parse_expr(source, local_dict=dict(_LOCALS), global_dict={"Integer": sympy.Integer,
                                                                          "Float": sympy.Float,
                                                                          "Rational": sympy.Rational,
                                                                          "Symbol": sympy.Symbol,
                                                                          "Function": sympy.Function},
                          transformations=_TRANSFORMS, evaluate=True)
    except (SyntaxError, TypeError, NameError, AttributeError, ValueError, sympy.SympifyError) as e:
        raise ParseError(f"Cannot parse expression {text!r}: {e}")

    if not isinstance(expr, sympy.Expr):
        raise ParseError(f"Expression {text!r} does not evaluate to a number")
    allowed_symbols = {X, K} if allow_x else {K}
    stray = expr.free_symbols - allowed_symbols
    if stray:
        names = sorted(str(s) for s in stray)
        raise ParseError(f"Expression {text!r} uses unknown or disallowed variables {names}")
    for fn in expr.atoms(sympy.Function):
        if fn.func not in _ALLOWED_FUNCTIONS:
            raise ParseError(f"Expression {text!r} uses unsupported function {fn.func}")
    return expr


def _vectorize(fn: Callable, *args) -> np.ndarray:
    with np.errstate(all="ignore"):
        return np.asarray(fn(*args), dtype=complex)


def compile_closed_form(text: str) -> Callable:
    """Compile an (x, k) expression to a numpy evaluator f(x, k)."""
    expr = parse_expression(text, allow_x=True)
    fn = sympy.lambdify((X, K), expr, modules="numpy")
    return lambda x, k: _vectorize(fn, np.asarray(x, dtype=float), np.asarray(k, dtype=float))


def compile_multiplier(text: str) -> Callable:
    """Compile a k-only expression to a numpy evaluator f(k)."""
    expr = parse_expression(text, allow_x=False)
    fn = sympy.lambdify((K,), expr, modules="numpy")
    return lambda k: _vectorize(fn, np.asarray(k, dtype=float))


def compile_function(text: str) -> Callable:
    """Compile an x-only expression (a periodic function) to f(x)."""
    expr = parse_expression(text, allow_x=True)
    if K in expr.free_symbols:
        raise ParseError(f"Function expression {text!r} must not depend on k")
    fn = sympy.lambdify((X,), expr, modules="numpy")
    return lambda x: _vectorize(fn, np.asarray(x, dtype=float))


def depends_on_x(text: str) -> bool:
    return X in parse_expression(text).free_symbols
