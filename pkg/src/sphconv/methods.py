"""Single dispatch surface over the seven evaluators.

Monomial routes accept an explicit precision context; the spectral and
asymptotic routes run in plain doubles and ignore precision knobs.
"""

from __future__ import annotations

from . import hiprec
from .asympt import eval_asymptotic
from .core import Method, MethodResult, Problem
from .gegenbauer import eval_method_6
from .monomial import eval_method_1_2, eval_method_3
from .spectral import eval_method_4, eval_method_5


def evaluate(problem: Problem, method: Method | str, *,
             ctx: hiprec.PrecisionContext | None = None,
             target_digits: int = hiprec.TARGET_DIGITS) -> MethodResult:
    """Evaluate I(N, alpha) by the named method.

    ctx applies only to the monomial methods (1-3); when omitted they run
    at certified precision for the problem's N.
    """
    method = Method.parse(method)
    if method is Method.METHOD1 or method is Method.METHOD2:
        return eval_method_1_2(problem, ctx, target_digits, label=method)
    if method is Method.METHOD3:
        return eval_method_3(problem, ctx, target_digits)
    if method is Method.GALERKIN:
        return eval_method_4(problem)
    if method is Method.VOLTERRA:
        return eval_method_5(problem)
    if method is Method.GEGENBAUER:
        return eval_method_6(problem)
    return eval_asymptotic(problem)
