"""
Periodic trapezoid oracle.

On a P-periodic trigonometric polynomial of degree < M (in the variable
2*pi*theta/P) the M-node trapezoid rule is exact up to rounding, which makes
it an independent check on every closed-form functional.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from bodies.exceptions import ParameterRangeError
from bodies.profiles import TWO_PI, BodyLike, as_profile, check_order, k_order_radial

MIN_NODES = 4

Evaluator = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True)
class QuadratureSpec:
    """
    Attributes:
        nodes: Number of equispaced nodes M
        period: Integration period P
    """

    nodes: int
    period: float = TWO_PI

    def __post_init__(self):
        if isinstance(self.nodes, bool) or int(self.nodes) != self.nodes or self.nodes < MIN_NODES:
            raise ParameterRangeError(f"quadrature needs an integer node count >= {MIN_NODES}, got {self.nodes!r}")
        if not (math.isfinite(self.period) and self.period > 0.0):
            raise ParameterRangeError(f"quadrature period must be positive, got {self.period!r}")
        object.__setattr__(self, "nodes", int(self.nodes))
        object.__setattr__(self, "period", float(self.period))

    @property
    def weight(self) -> float:
        return self.period / self.nodes

    def abscissae(self) -> np.ndarray:
        return self.period * np.arange(self.nodes) / self.nodes

    def with_period(self, period: float) -> "QuadratureSpec":
        return QuadratureSpec(self.nodes, period)


def default_spec(n_max: int) -> QuadratureSpec:
    """4*N + 16 nodes over [0, 2*pi): exact for products of two degree-N series."""
    return QuadratureSpec(4 * n_max + 16, TWO_PI)


def doubled(spec: QuadratureSpec) -> QuadratureSpec:
    return QuadratureSpec(2 * spec.nodes, spec.period)


def periodic_trapezoid(evaluator: Evaluator, spec: QuadratureSpec) -> float:
    """
    (P/M) * sum_j f(j*P/M).

    Args:
        evaluator: Vectorized rule mapping an array of angles to values, P-periodic
        spec: Node count and period

    Returns:
        Integral of the evaluator over one period
    """
    values = np.asarray(evaluator(spec.abscissae()), dtype=float)
    if values.shape != (spec.nodes,):
        values = np.broadcast_to(values, (spec.nodes,))
    return spec.weight * math.fsum(values)


def _spec_for(spec: Optional[QuadratureSpec], *bodies: BodyLike) -> QuadratureSpec:
    if spec is not None:
        return spec
    return default_spec(max(as_profile(body).n_max for body in bodies))


def correlation_integral(
    S: BodyLike,
    T: BodyLike,
    k: int,
    alpha: float,
    spec: Optional[QuadratureSpec] = None,
) -> float:
    """Integral over [0, 2*pi) of rho_k(S, theta) * rho_k(T, theta + alpha)."""
    k = check_order(k)
    f, g = as_profile(S), as_profile(T)
    spec = _spec_for(spec, f, g).with_period(TWO_PI)
    return periodic_trapezoid(
        lambda theta: k_order_radial(f, k, theta) * k_order_radial(g, k, theta + alpha),
        spec,
    )


def self_chord_quadrature(
    S: BodyLike,
    k: int,
    spec: Optional[QuadratureSpec] = None,
    half_period: bool = False,
) -> float:
    """
    Integral over [0, pi/k] of g(theta) = rho_k(theta) * rho_k(theta + pi/k).

    g is (pi/k)-periodic, so by default the oracle integrates it over
    [0, 2*pi) and scales by 1/(2k). With half_period=True it integrates g
    directly over one period of length pi/k instead.
    """
    k = check_order(k)
    f = as_profile(S)
    spec = _spec_for(spec, f)
    shift = math.pi / k

    def g(theta):
        return k_order_radial(f, k, theta) * k_order_radial(f, k, theta + shift)

    if half_period:
        return periodic_trapezoid(g, spec.with_period(shift))
    return periodic_trapezoid(g, spec.with_period(TWO_PI)) / (2 * k)
