"""
Behaviour of the normalised mixed chord integral as k grows.

(1 / 2k^2) I_k(S, T, alpha) tends to (1/pi) A(S,B) A(T,B) = pi a0S a0T / 4.
For truncated profiles the deviation is exactly zero once k exceeds both
truncation orders, since rho_k keeps no harmonic.
"""

import logging
import math
from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional

import numpy as np
import pandas as pd

from bodies.exceptions import ParameterRangeError
from bodies.functionals import Method, chord_mixed_integral, dual_mixed_area_disk
from bodies.profiles import BodyLike, as_profile, canonical_angle, check_order
from bodies.quadrature import QuadratureSpec

logger = logging.getLogger(__name__)

LIMIT_COLUMNS = ['k', 'value', 'limit', 'deviation', 'predicted_deviation', 'oracle_residual']


@dataclass(frozen=True)
class LimitRow:
    k: int
    value: float
    limit: float
    deviation: float
    predicted_deviation: float
    oracle_residual: Optional[float] = None

    def to_dict(self):
        return asdict(self)


def limit_value(S: BodyLike, T: BodyLike) -> float:
    """(1/pi) A(S,B) A(T,B)."""
    return dual_mixed_area_disk(S).value * dual_mixed_area_disk(T).value / math.pi


def predicted_deviation(S: BodyLike, T: BodyLike, k: int, alpha: float) -> float:
    """
    (pi/2) |sum over n = k, 2k, ... of (aS aT + bS bT) cos(n alpha) + (aS bT - bS aT) sin(n alpha)|.
    """
    k = check_order(k)
    f, g = as_profile(S), as_profile(T)
    n_common = min(f.n_max, g.n_max)
    if k > n_common:
        return 0.0
    n = np.arange(k, n_common + 1, k)
    fa, fb = f.padded(n_common)
    ga, gb = g.padded(n_common)
    idx = n - 1
    phase = n * alpha
    total = ((fa[idx] * ga[idx] + fb[idx] * gb[idx]) * np.cos(phase)
             + (fa[idx] * gb[idx] - fb[idx] * ga[idx]) * np.sin(phase)).sum()
    return 0.5 * math.pi * abs(float(total))


def check_k_values(k_values: Iterable[int]) -> List[int]:
    """
    Raises:
        ParameterRangeError: Empty, not strictly increasing, or an order below 2
    """
    values = [check_order(k) for k in k_values]
    if not values:
        raise ParameterRangeError("limit study needs at least one k")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ParameterRangeError(f"k values must be strictly increasing, got {values}")
    return values


def limit_sequence(
    S: BodyLike,
    T: BodyLike,
    alpha: float,
    k_values: Iterable[int],
    oracle: bool = True,
    quadrature: Optional[QuadratureSpec] = None,
) -> List[LimitRow]:
    """
    Tabulate the normalised mixed chord integral along increasing k.

    Args:
        S: First body
        T: Second body
        alpha: Shift applied to T
        k_values: Strictly increasing orders, e.g. 2, 4, 8, ..., 256
        oracle: Also compute each value by quadrature and record the residual
        quadrature: Node spec for the oracle

    Returns:
        One LimitRow per k
    """
    alpha = canonical_angle(alpha)
    limit = limit_value(S, T)
    rows = []
    for k in check_k_values(k_values):
        scale = 2 * k ** 2
        value = chord_mixed_integral(S, T, k, alpha).value / scale
        residual = None
        if oracle:
            by_quadrature = chord_mixed_integral(S, T, k, alpha, Method.QUADRATURE, quadrature=quadrature).value / scale
            residual = abs(value - by_quadrature)
        rows.append(LimitRow(k, value, limit, abs(value - limit), predicted_deviation(S, T, k, alpha), residual))
        logger.debug(f"k={k}: value {value!r}, deviation {rows[-1].deviation:.3e}")
    return rows


def limit_frame(rows: Iterable[LimitRow]) -> pd.DataFrame:
    frame = pd.DataFrame([row.to_dict() for row in rows], columns=LIMIT_COLUMNS)
    frame['k'] = frame['k'].astype('Int64')
    return frame
