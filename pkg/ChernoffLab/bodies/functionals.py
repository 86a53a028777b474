"""
Geometric functionals of star bodies.

Each functional has a closed form (a quadratic form in the Fourier
coefficients obtained from Parseval) and an independent quadrature path.
Callers choose the primary method and may ask for the other one to run as a
cross-check; the residual is carried on the returned FunctionalValue.
"""

import logging
import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Callable, Dict, Optional

import numpy as np

from bodies.exceptions import OracleMismatchError, ParameterRangeError
from bodies.profiles import (
    TWO_PI,
    BodyLike,
    FourierProfile,
    as_profile,
    check_order,
    eval_radial,
    eval_radial_derivative,
    k_order_radial,
)
from bodies.quadrature import (
    QuadratureSpec,
    correlation_integral,
    default_spec,
    periodic_trapezoid,
    self_chord_quadrature,
)

logger = logging.getLogger(__name__)

CROSS_CHECK_RTOL = 1e-9


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"


class Lemma(str, Enum):
    LEMMA1 = "lemma1"
    LEMMA2 = "lemma2"


@dataclass(frozen=True)
class FunctionalValue:
    """
    Attributes:
        value: Value computed by the primary method
        method: Primary method
        cross_check_residual: |closed form - quadrature| when both ran
    """

    value: float
    method: Method
    cross_check_residual: Optional[float] = None

    def agrees(self, rtol: float = CROSS_CHECK_RTOL) -> bool:
        if self.cross_check_residual is None:
            return True
        return self.cross_check_residual <= rtol * max(1.0, abs(self.value))

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["method"] = self.method.value
        return data

    def __float__(self) -> float:
        return self.value


def _evaluate(
    name: str,
    closed_form: Callable[[], float],
    quadrature: Callable[[], float],
    method: Method,
    cross_check: bool,
    strict: bool,
) -> FunctionalValue:
    method = Method(method)
    primary, secondary = (closed_form, quadrature) if method is Method.CLOSED_FORM else (quadrature, closed_form)
    value = float(primary())

    residual = None
    if cross_check:
        residual = abs(value - float(secondary()))
        if residual > CROSS_CHECK_RTOL * max(1.0, abs(value)):
            logger.error(f"Oracle disagreement in {name}: value {value!r}, residual {residual:.3e}")
            if strict:
                raise OracleMismatchError(f"{name}: closed form and quadrature differ by {residual:.3e}")
    return FunctionalValue(value, method, residual)


def _spec(spec: Optional[QuadratureSpec], *profiles: FourierProfile) -> QuadratureSpec:
    if spec is not None:
        return spec.with_period(TWO_PI)
    return default_spec(max(p.n_max for p in profiles))


def area(
    S: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """
    Area A(S) = 1/2 * integral of rho^2.

    Closed form: pi*a0^2/4 + (pi/2) * sum_n (a_n^2 + b_n^2).
    """
    f = as_profile(S)
    return _evaluate(
        "area",
        lambda: math.pi * f.a0 ** 2 / 4.0 + 0.5 * math.pi * float(f.harmonic_energies().sum()),
        lambda: 0.5 * periodic_trapezoid(lambda t: eval_radial(f, t) ** 2, _spec(quadrature, f)),
        method, cross_check, strict,
    )


def oriented_area(
    S: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """Oriented area 1/2 * integral of rho'^2; closed form (pi/2) * sum_n n^2 (a_n^2 + b_n^2)."""
    f = as_profile(S)
    return _evaluate(
        "oriented_area",
        lambda: 0.5 * math.pi * float((f.orders ** 2 * f.harmonic_energies()).sum()),
        lambda: 0.5 * periodic_trapezoid(lambda t: eval_radial_derivative(f, t) ** 2, _spec(quadrature, f)),
        method, cross_check, strict,
    )


def dual_mixed_area_disk(
    S: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """Dual mixed area against the unit disc, 1/2 * integral of rho = pi*a0/2."""
    f = as_profile(S)
    return _evaluate(
        "dual_mixed_area_disk",
        lambda: 0.5 * math.pi * f.a0,
        lambda: 0.5 * periodic_trapezoid(lambda t: eval_radial(f, t), _spec(quadrature, f)),
        method, cross_check, strict,
    )


def dual_l2_distance(
    S: BodyLike,
    T: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """
    Dual L2 metric, the L2 norm of rho_S - rho_T over [0, 2*pi).

    Args:
        S: First body
        T: Second body
        method: Primary method
        cross_check: Also run the other method and record the residual
        quadrature: Node spec for the quadrature path (default 4*N + 16)
        strict: Raise OracleMismatchError when the cross-check disagrees

    Returns:
        FunctionalValue of the distance
    """
    f, g = as_profile(S), as_profile(T)
    n = max(f.n_max, g.n_max)

    def closed_form():
        fa, fb = f.padded(n)
        ga, gb = g.padded(n)
        squared = 0.5 * math.pi * (f.a0 - g.a0) ** 2 + math.pi * float(((fa - ga) ** 2 + (fb - gb) ** 2).sum())
        return math.sqrt(squared)

    def by_quadrature():
        squared = periodic_trapezoid(lambda t: (eval_radial(f, t) - eval_radial(g, t)) ** 2, _spec(quadrature, f, g))
        return math.sqrt(max(squared, 0.0))

    return _evaluate("dual_l2_distance", closed_form, by_quadrature, method, cross_check, strict)


def dual_l2_distance_to_mean_disc(
    S: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """Distance to the disc of radius a0/2; its square is pi * sum_n (a_n^2 + b_n^2)."""
    f = as_profile(S)
    return dual_l2_distance(f, FourierProfile(f.a0), method, cross_check, quadrature, strict)


def isoperimetric_deficit(
    S: BodyLike,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """pi*A(S) - A(S,B)^2, non-negative and zero exactly on discs."""
    f = as_profile(S)

    def by_quadrature():
        a = area(f, Method.QUADRATURE, quadrature=quadrature).value
        d = dual_mixed_area_disk(f, Method.QUADRATURE, quadrature=quadrature).value
        return math.pi * a - d ** 2

    return _evaluate(
        "isoperimetric_deficit",
        lambda: 0.5 * math.pi ** 2 * float(f.harmonic_energies().sum()),
        by_quadrature,
        method, cross_check, strict,
    )


def _alternating_signs(n_max: int, k: int) -> np.ndarray:
    """s_n = (-1)^(n/k) when k divides n, else 0, for n = 1..n_max."""
    n = np.arange(1, n_max + 1)
    signs = np.zeros(n_max)
    multiples = n % k == 0
    signs[multiples] = np.where((n[multiples] // k) % 2 == 0, 1.0, -1.0)
    return signs


def chord_self_integral(
    S: BodyLike,
    k: int,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """
    Integral over [0, pi/k] of rho_k(theta) * rho_k(theta + pi/k).

    Closed form: k*pi*a0^2/4 + (k*pi/2) * sum_l (-1)^l (a_kl^2 + b_kl^2).
    """
    k = check_order(k)
    f = as_profile(S)
    return _evaluate(
        "chord_self_integral",
        lambda: k * math.pi * f.a0 ** 2 / 4.0
        + 0.5 * k * math.pi * float((_alternating_signs(f.n_max, k) * f.harmonic_energies()).sum()),
        lambda: self_chord_quadrature(f, k, _spec(quadrature, f)),
        method, cross_check, strict,
    )


def chord_mixed_integral(
    S: BodyLike,
    T: BodyLike,
    k: int,
    alpha: float,
    method: Method = Method.CLOSED_FORM,
    cross_check: bool = False,
    quadrature: Optional[QuadratureSpec] = None,
    strict: bool = False,
) -> FunctionalValue:
    """
    Integral over [0, 2*pi) of rho_k(S, theta) * rho_k(T, theta + alpha).

    Closed form, summed over n = k*l:
        pi*k^2*a0S*a0T/2 + pi*k^2 * sum [(aS aT + bS bT) cos(n alpha) + (aS bT - bS aT) sin(n alpha)]
    """
    k = check_order(k)
    f, g = as_profile(S), as_profile(T)

    def closed_form():
        n_common = min(f.n_max, g.n_max)
        n = np.arange(k, n_common + 1, k)
        fa, fb = f.padded(n_common)
        ga, gb = g.padded(n_common)
        idx = n - 1
        cosine = fa[idx] * ga[idx] + fb[idx] * gb[idx]
        sine = fa[idx] * gb[idx] - fb[idx] * ga[idx]
        phase = n * alpha
        harmonic_part = float((cosine * np.cos(phase) + sine * np.sin(phase)).sum())
        return math.pi * k ** 2 * (0.5 * f.a0 * g.a0 + harmonic_part)

    return _evaluate(
        "chord_mixed_integral",
        closed_form,
        lambda: correlation_integral(f, g, k, alpha, _spec(quadrature, f, g)),
        method, cross_check, strict,
    )


def lemma_identity_residual(
    S: BodyLike,
    k: int,
    which: Lemma = Lemma.LEMMA1,
    alpha: Optional[float] = None,
    g: Optional[BodyLike] = None,
    quadrature: Optional[QuadratureSpec] = None,
) -> float:
    """
    Absolute difference of the two sides of a k-order radial identity, both by quadrature.

    lemma1: integral over [0, pi/k] of rho_k(t) rho_k(t + pi/k) against
            1/2 * sum_{m=1..k} integral of rho(t) rho(t + (2m-1) pi/k).
    lemma2: integral of f_k(t) g_k(t + alpha) against
            (k/2) * sum_{m=1..k} integral of [f(t + 2m pi/k) g(t + alpha) + f(t) g(t + alpha + 2m pi/k)].

    Raises:
        ParameterRangeError: lemma2 without g or alpha
    """
    k = check_order(k)
    which = Lemma(which)
    f = as_profile(S)

    if which is Lemma.LEMMA1:
        spec = _spec(quadrature, f)
        lhs = self_chord_quadrature(f, k, spec, half_period=True)
        rhs = 0.5 * sum(
            periodic_trapezoid(lambda t, m=m: eval_radial(f, t) * eval_radial(f, t + (2 * m - 1) * math.pi / k), spec)
            for m in range(1, k + 1)
        )
        return abs(lhs - rhs)

    if g is None or alpha is None:
        raise ParameterRangeError("lemma2 needs both a second body g and a shift alpha")
    h = as_profile(g)
    spec = _spec(quadrature, f, h)
    lhs = periodic_trapezoid(lambda t: k_order_radial(f, k, t) * k_order_radial(h, k, t + alpha), spec)
    rhs = 0.5 * k * sum(
        periodic_trapezoid(
            lambda t, m=m: eval_radial(f, t + TWO_PI * m / k) * eval_radial(h, t + alpha)
            + eval_radial(f, t) * eval_radial(h, t + alpha + TWO_PI * m / k),
            spec,
        )
        for m in range(1, k + 1)
    )
    return abs(lhs - rhs)
