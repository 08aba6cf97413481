"""Restricted expression language of problem files, compiled to numpy callables with sympy."""
from typing import Callable, Dict, List, Sequence

import numpy as np
import sympy as sp
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from greensfn.utils.errors import ConfigurationError

ALLOWED_FUNCTIONS = {
    "exp": sp.exp,
    "sin": sp.sin,
    "cos": sp.cos,
    "sinh": sp.sinh,
    "cosh": sp.cosh,
}
CONSTANTS = {"pi": sp.pi, "E": sp.E}
TRANSFORMATIONS = standard_transformations + (convert_xor,)
T = sp.Symbol("t", real=True)

# Only the number constructors the tokenizer emits are reachable from parsed text
_GLOBALS = {
    "__builtins__": {},
    "Integer": sp.Integer,
    "Float": sp.Float,
    "Rational": sp.Rational,
    "Symbol": sp.Symbol,
}


def state_symbols(dim: int) -> List[sp.Symbol]:
    return [sp.Symbol(f"x{k}", real=True) for k in range(1, dim + 1)]


def parse_expression(text: str, dim: int = 0) -> sp.Expr:
    """Parse ``text`` in the variables t, x1..x<dim> (``x`` aliases x1 when dim == 1).

    Raises:
        ConfigurationError: syntax errors, unknown names or functions outside
            exp, sin, cos, sinh, cosh.
    """
    if not isinstance(text, str) or not text.strip():
        raise ConfigurationError("empty expression")
    xs = state_symbols(dim)
    local: Dict[str, object] = {"t": T, **{str(s): s for s in xs}, **ALLOWED_FUNCTIONS, **CONSTANTS}
    if dim == 1:
        local["x"] = xs[0]
    try:
        expr = parse_expr(text.strip(), local_dict=local, global_dict=dict(_GLOBALS),
                          transformations=TRANSFORMATIONS)
    except Exception as e:
        raise ConfigurationError(f"cannot parse expression {text!r}: {e}") from e

    if not isinstance(expr, sp.Expr):
        raise ConfigurationError(f"expression {text!r} is not arithmetic")
    unknown = expr.free_symbols - {T, *xs}
    if unknown:
        names = ", ".join(sorted(str(s) for s in unknown))
        raise ConfigurationError(f"unknown name(s) {names} in {text!r}")
    allowed = tuple(ALLOWED_FUNCTIONS.values())
    for fn in expr.atoms(sp.Function):
        if not isinstance(fn, allowed):
            raise ConfigurationError(f"function {fn.func} is not allowed in {text!r}")
    return expr


def compile_scalar(text: str) -> Callable[[np.ndarray], np.ndarray]:
    """Callable t -> values for an expression in t alone."""
    expr = parse_expression(text, 0)
    fn = sp.lambdify([T], expr, modules="numpy")

    def evaluate(t: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        return np.broadcast_to(np.asarray(fn(t), dtype=float), t.shape).copy()

    return evaluate


def is_constant(text: str, value: float) -> bool:
    expr = parse_expression(text, 0)
    return bool(expr.is_number and sp.simplify(expr - value) == 0)


def compile_field(components: Sequence[str], dim: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Callable (t, x) -> (k, dim) from one expression per state component."""
    if len(components) != dim:
        raise ConfigurationError(f"f0 needs {dim} component(s) separated by ';', got {len(components)}")
    xs = state_symbols(dim)
    fns = [sp.lambdify([T, *xs], parse_expression(c, dim), modules="numpy") for c in components]

    def evaluate(t: np.ndarray, x: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float).reshape(t.shape[0], dim)
        cols = [np.broadcast_to(np.asarray(fn(t, *x.T), dtype=float), t.shape) for fn in fns]
        return np.stack(cols, axis=1)

    return evaluate


def compile_radius(text: str, dim: int) -> Callable[[np.ndarray, np.ndarray], np.ndarray]:
    """Callable (t, x) -> (k,) for a box radius rho(t, x)."""
    xs = state_symbols(dim)
    fn = sp.lambdify([T, *xs], parse_expression(text, dim), modules="numpy")

    def evaluate(t: np.ndarray, x: np.ndarray) -> np.ndarray:
        t = np.asarray(t, dtype=float)
        x = np.asarray(x, dtype=float).reshape(t.shape[0], dim)
        return np.broadcast_to(np.asarray(fn(t, *x.T), dtype=float), t.shape).copy()

    return evaluate


def split_components(text: str) -> List[str]:
    return [part.strip() for part in text.split(";") if part.strip()]


def parse_floats(text: str) -> List[float]:
    """Comma-separated numeric literals, each evaluated through the expression language."""
    values = []
    for part in text.split(","):
        expr = parse_expression(part, 0)
        if not expr.is_number:
            raise ConfigurationError(f"expected a number, got {part.strip()!r}")
        values.append(float(expr))
    return values
