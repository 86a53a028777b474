"""
Inequalities package.

This imports every concrete inequality and maps inequality ids onto them.
"""

from typing import Dict, Type

from inequalities.reports import InequalityId

from .base import BaseInequality
from .chernoff import (
    ChernoffAreaInequality,
    DualIsoperimetricInequality,
    UpperStabilityInequality,
    LowerStabilityInequality,
    ChernoffUpperInequality,
    ChernoffLowerInequality,
    deficit_phi,
    deficit_psi,
    slack_corollary31,
    slack_dual_isoperimetric,
    slack_theorem1,
    slack_theorem2,
    stability_margin_35,
    stability_margin_37,
)
from .mixed import MixedIsoperimetricInequality, MixedChernoffInequality, slack_mixed_isoperimetric, slack_theorem3

INEQUALITIES: Dict[InequalityId, Type[BaseInequality]] = {
    cls.inequality_id: cls
    for cls in (
        ChernoffUpperInequality,
        ChernoffLowerInequality,
        MixedChernoffInequality,
        ChernoffAreaInequality,
        UpperStabilityInequality,
        LowerStabilityInequality,
        DualIsoperimetricInequality,
        MixedIsoperimetricInequality,
    )
}


def get_inequality(inequality_id, **params) -> BaseInequality:
    """
    Instantiate the inequality registered under an id.

    Args:
        inequality_id: InequalityId or its value ('T1', 'stab35', ...)
        **params: Constructor arguments (k, lam, mu, alpha, allow_out_of_range, ...)

    Returns:
        Configured inequality; parameters outside the ones it uses are dropped
    """
    cls = INEQUALITIES[InequalityId(inequality_id)]
    if not cls.uses_lambda:
        params.pop('lam', None)
    if not cls.uses_mu:
        params.pop('mu', None)
    if not cls.uses_alpha:
        params.pop('alpha', None)
    return cls(**params)


__all__ = [
    'BaseInequality',
    'INEQUALITIES',
    'get_inequality',

    # Single body
    'ChernoffUpperInequality',
    'ChernoffLowerInequality',
    'ChernoffAreaInequality',
    'UpperStabilityInequality',
    'LowerStabilityInequality',
    'DualIsoperimetricInequality',
    'slack_theorem1',
    'slack_theorem2',
    'slack_corollary31',
    'stability_margin_35',
    'stability_margin_37',
    'slack_dual_isoperimetric',
    'deficit_phi',
    'deficit_psi',

    # Two bodies
    'MixedChernoffInequality',
    'MixedIsoperimetricInequality',
    'slack_theorem3',
    'slack_mixed_isoperimetric',
]
