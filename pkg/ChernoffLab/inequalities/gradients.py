"""
Closed-form functionals as functions of the coefficient vector.

Every functional is a quadratic (or a square root of a product of
quadratics) in x = [a0, a1, b1, a2, b2, ...]. A Term carries its value,
gradient and the diagonal of its Hessian, which the extremal search uses as
a preconditioner.
"""

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Term:
    value: float
    grad: np.ndarray
    curvature: np.ndarray

    def __add__(self, other: 'Term') -> 'Term':
        return Term(self.value + other.value, self.grad + other.grad, self.curvature + other.curvature)

    def __sub__(self, other: 'Term') -> 'Term':
        return Term(self.value - other.value, self.grad - other.grad, self.curvature - other.curvature)

    def __neg__(self) -> 'Term':
        return Term(-self.value, -self.grad, -self.curvature)

    def __mul__(self, c: float) -> 'Term':
        return Term(c * self.value, c * self.grad, c * self.curvature)

    __rmul__ = __mul__


def harmonic_orders(size: int) -> np.ndarray:
    """Harmonic index of every coordinate after a0: [1, 1, 2, 2, ...]."""
    return np.repeat(np.arange(1, (size - 1) // 2 + 1), 2).astype(float)


def alternating_signs(size: int, k: int) -> np.ndarray:
    """(-1)^(n/k) for coordinates whose index n is a multiple of k, else 0."""
    n = harmonic_orders(size).astype(int)
    signs = np.zeros(n.size)
    multiples = n % k == 0
    signs[multiples] = np.where((n[multiples] // k) % 2 == 0, 1.0, -1.0)
    return signs


def _term(value, grad_a0, grad_h, curv_a0, curv_h) -> Term:
    return Term(float(value), np.concatenate(([grad_a0], grad_h)), np.concatenate(([curv_a0], curv_h)))


def area_term(x: np.ndarray) -> Term:
    """pi*a0^2/4 + (pi/2) * sum h^2."""
    h = x[1:]
    return _term(
        math.pi * x[0] ** 2 / 4 + 0.5 * math.pi * float(h @ h),
        0.5 * math.pi * x[0], math.pi * h,
        0.5 * math.pi, np.full(h.size, math.pi),
    )


def oriented_area_term(x: np.ndarray) -> Term:
    """(pi/2) * sum n^2 h^2."""
    h = x[1:]
    n2 = harmonic_orders(x.size) ** 2
    return _term(0.5 * math.pi * float(n2 @ h ** 2), 0.0, math.pi * n2 * h, 0.0, math.pi * n2)


def dual_mixed_area_term(x: np.ndarray) -> Term:
    """pi*a0/2."""
    zeros = np.zeros(x.size - 1)
    return _term(0.5 * math.pi * x[0], 0.5 * math.pi, zeros, 0.0, zeros)


def dual_mixed_area_squared_term(x: np.ndarray) -> Term:
    """(pi*a0/2)^2."""
    zeros = np.zeros(x.size - 1)
    return _term((0.5 * math.pi * x[0]) ** 2, 0.5 * math.pi ** 2 * x[0], zeros, 0.5 * math.pi ** 2, zeros)


def mean_disc_distance_squared_term(x: np.ndarray) -> Term:
    """pi * sum h^2."""
    h = x[1:]
    return _term(math.pi * float(h @ h), 0.0, 2 * math.pi * h, 0.0, np.full(h.size, 2 * math.pi))


def chord_self_term(x: np.ndarray, k: int) -> Term:
    """k*pi*a0^2/4 + (k*pi/2) * sum s_n h^2."""
    h = x[1:]
    s = alternating_signs(x.size, k)
    return _term(
        k * math.pi * x[0] ** 2 / 4 + 0.5 * k * math.pi * float(s @ h ** 2),
        0.5 * k * math.pi * x[0], k * math.pi * s * h,
        0.5 * k * math.pi, k * math.pi * s,
    )


def chord_mixed_term(x: np.ndarray, y: np.ndarray, k: int, alpha: float) -> Term:
    """
    Mixed chord integral as a linear function of x with the partner y held fixed.
    """
    n_common = min(x.size, y.size) // 2
    grad = np.zeros(x.size)
    grad[0] = 0.5 * math.pi * k ** 2 * y[0]
    for n in range(k, n_common + 1, k):
        ya, yb = y[2 * n - 1], y[2 * n]
        c, s = math.cos(n * alpha), math.sin(n * alpha)
        grad[2 * n - 1] = math.pi * k ** 2 * (ya * c + yb * s)
        grad[2 * n] = math.pi * k ** 2 * (yb * c - ya * s)
    return Term(float(grad @ x), grad, np.zeros(x.size))


def scaled_sqrt_term(term: Term, c: float) -> Term:
    """
    sqrt(c * term) for a constant c > 0.

    The curvature keeps only the term's own curvature scaled by the chain-rule
    factor; the negative outer-product part is dropped so the diagonal stays
    usable as a preconditioner.
    """
    root = math.sqrt(c * term.value)
    factor = 0.5 * math.sqrt(c / term.value)
    return Term(root, factor * term.grad, factor * term.curvature)
