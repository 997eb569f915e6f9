"""Built-in named test functions and expression-to-function plumbing.

The named entries are direct callables (not parsed strings) so documentation
examples and acceptance runs do not depend on the expression parser. The
positive flag of a resolved function is decided per rectangle from the
sample-grid minimum.
"""

from __future__ import annotations

import numpy as np

from .errors import DomainError
from .expr import Node, eval_ast, parse
from .rect import Fn2D, Rect, spot_minimum

_NAMED = {
    "xy": lambda x, y: x * y,
    "sumsq": lambda x, y: x * x + y * y,
    "expsum": lambda x, y: np.exp(x + y),
    "absdist": lambda x, y: np.abs(x - 0.5) + np.abs(y - 0.5),
    "const1": lambda x, y: 1.0 + 0.0 * x + 0.0 * y,
}

NAMED_FUNCTIONS = tuple(sorted(_NAMED))


def _with_positivity(ev, rect: Rect) -> Fn2D:
    fn = Fn2D(eval=ev)
    return Fn2D(eval=ev, positive=spot_minimum(fn, rect) > 0.0)


def function_from_ast(ast: Node, rect: Rect) -> Fn2D:
    return _with_positivity(lambda x, y: eval_ast(ast, x, y), rect)


def resolve_function(name_or_expr: str, rect: Rect) -> Fn2D:
    """Resolve a named corpus entry, or else parse the string as an expression."""
    if name_or_expr in _NAMED:
        return _with_positivity(_NAMED[name_or_expr], rect)
    return function_from_ast(parse(name_or_expr), rect)


def named_source(name: str) -> str:
    """Expression-equivalent source of a named entry (for reports)."""
    sources = {
        "xy": "x*y",
        "sumsq": "x^2+y^2",
        "expsum": "exp(x+y)",
        "absdist": "abs(x-0.5)+abs(y-0.5)",
        "const1": "1",
    }
    if name not in sources:
        raise DomainError(f"unknown named function {name!r}")
    return sources[name]
