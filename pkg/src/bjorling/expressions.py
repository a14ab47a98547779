"""Small expression grammar for analytic jets in problem files.

Allowed: numbers, named parameters, the variable u (or x1, x2, x3 for frame
matrix entries), +, -, *, /, unary minus, integer powers, and calls to exp,
sin, cos, sinh, cosh.  That is enough to state every shipped example jet
exactly; anything else is rejected up front.
"""

from __future__ import annotations

import ast
import math

from .errors import ExpressionError
from .series import USeries

_FUNCS = ("exp", "sin", "cos", "sinh", "cosh")

_BINOPS = {
    ast.Add: lambda a, b: a + b,
    ast.Sub: lambda a, b: a - b,
    ast.Mult: lambda a, b: a * b,
    ast.Div: lambda a, b: a / b,
}


def _eval_node(node, env, text):
    if isinstance(node, ast.Expression):
        return _eval_node(node.body, env, text)
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float)):
            return float(node.value)
        raise ExpressionError(f"non-numeric constant in {text!r}")
    if isinstance(node, ast.Name):
        try:
            return env[node.id]
        except KeyError:
            raise ExpressionError(
                f"unknown name {node.id!r} in {text!r}"
            ) from None
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        val = _eval_node(node.operand, env, text)
        return -val if isinstance(node.op, ast.USub) else val
    if isinstance(node, ast.BinOp):
        fn = _BINOPS.get(type(node.op))
        if fn is not None:
            return fn(
                _eval_node(node.left, env, text), _eval_node(node.right, env, text)
            )
        if isinstance(node.op, ast.Pow):
            base = _eval_node(node.left, env, text)
            expo = _eval_node(node.right, env, text)
            if not isinstance(expo, float) or expo != int(expo):
                raise ExpressionError(f"powers must be integer literals in {text!r}")
            if isinstance(base, float):
                return base ** int(expo)
            return base ** int(expo)
        raise ExpressionError(f"operator not allowed in {text!r}")
    if isinstance(node, ast.Call):
        if (
            not isinstance(node.func, ast.Name)
            or node.func.id not in _FUNCS
            or len(node.args) != 1
            or node.keywords
        ):
            raise ExpressionError(f"only {_FUNCS} calls are allowed in {text!r}")
        arg = _eval_node(node.args[0], env, text)
        if isinstance(arg, USeries):
            return getattr(arg, node.func.id)()
        return getattr(math, node.func.id)(arg)
    raise ExpressionError(f"unsupported syntax in {text!r}")


def evaluate_series(text: str, env: dict):
    """Evaluate an expression over an environment of jets and numbers.

    Returns a USeries when any variable in the environment is one,
    otherwise a float.
    """
    try:
        tree = ast.parse(text, mode="eval")
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse {text!r}: {exc.msg}") from None
    try:
        return _eval_node(tree, env, text)
    except ZeroDivisionError:
        raise ExpressionError(f"division by zero in {text!r}") from None


def evaluate_jet(text: str, order: int, center: float, params: dict | None = None) -> USeries:
    """Jet of an expression in u (plus named parameters) about the center."""
    env = dict(params or {})
    env["u"] = USeries.variable(order, center)
    out = evaluate_series(text, env)
    if isinstance(out, USeries):
        return out
    return USeries.constant(float(out), order, center)
