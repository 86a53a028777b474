"""
Fourier radial profiles of planar star bodies.

A profile stores the truncated expansion

    rho(theta) = a0/2 + sum_n (a_n cos(n theta) + b_n sin(n theta)),  n = 1..N

and a StarBody is a profile whose radial function has been certified
strictly positive. All types here are immutable and every function is pure.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from bodies.exceptions import ParameterRangeError, PositivityError, ProfileError

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi

DEFAULT_N_MAX = 64
MIN_POSITIVITY_NODES = 1024

# Coefficients at or below this magnitude count as zero for support and hypothesis checks.
COEFFICIENT_TOL = 1e-12


def canonical_angle(theta: float) -> float:
    """Map an angle in radians onto [0, 2*pi)."""
    value = math.fmod(float(theta), TWO_PI)
    if value < 0.0:
        value += TWO_PI
    # -tiny + 2*pi rounds up to 2*pi
    if value >= TWO_PI:
        value = 0.0
    return value


class Angle(float):
    """A float in radians, canonicalized to [0, 2*pi) on construction."""

    def __new__(cls, value: float):
        return super().__new__(cls, canonical_angle(value))

    def __repr__(self) -> str:
        return f"Angle({float(self)!r})"


AngleLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class FourierProfile:
    """
    Truncated radial Fourier expansion.

    Attributes:
        a0: Constant-term coefficient; the mean of rho is a0/2.
        harmonics: Pairs (a_n, b_n) for n = 1..N, index n stored at position n-1.
    """

    a0: float
    harmonics: Tuple[Tuple[float, float], ...] = ()

    def __post_init__(self):
        try:
            a0 = float(self.a0)
            harmonics = tuple((float(a), float(b)) for a, b in self.harmonics)
        except (TypeError, ValueError) as exc:
            raise ProfileError(f"coefficients must be real numbers: {exc}") from exc

        if not math.isfinite(a0):
            raise ProfileError("a0 must be finite", location="a0")
        for n, (a, b) in enumerate(harmonics, start=1):
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ProfileError("harmonic coefficients must be finite", location=f"harmonics[{n - 1}]")

        object.__setattr__(self, "a0", a0)
        object.__setattr__(self, "harmonics", harmonics)

    @classmethod
    def from_arrays(cls, a0: float, a: Sequence[float], b: Sequence[float]) -> "FourierProfile":
        """Build a profile from separate cosine and sine coefficient arrays (index n at n-1)."""
        a = np.asarray(a, dtype=float).ravel()
        b = np.asarray(b, dtype=float).ravel()
        if a.shape != b.shape:
            raise ProfileError(f"cosine and sine arrays differ in length ({a.size} vs {b.size})")
        return cls(a0, tuple(zip(a.tolist(), b.tolist())))

    @classmethod
    def from_coefficients(cls, a0: float, coefficients: Mapping[int, Tuple[float, float]]) -> "FourierProfile":
        """Build a profile from a sparse mapping n -> (a_n, b_n)."""
        n_max = max(coefficients, default=0)
        a = np.zeros(n_max)
        b = np.zeros(n_max)
        for n, (a_n, b_n) in coefficients.items():
            if int(n) != n or n < 1:
                raise ProfileError(f"harmonic index must be a positive integer, got {n!r}")
            a[n - 1] = a_n
            b[n - 1] = b_n
        return cls.from_arrays(a0, a, b)

    @classmethod
    def from_vector(cls, x: Sequence[float]) -> "FourierProfile":
        """Inverse of as_vector: layout [a0, a1, b1, a2, b2, ...]."""
        x = np.asarray(x, dtype=float).ravel()
        if x.size % 2 != 1:
            raise ProfileError(f"coefficient vector must have odd length, got {x.size}")
        return cls.from_arrays(x[0], x[1::2], x[2::2])

    @property
    def n_max(self) -> int:
        return len(self.harmonics)

    @cached_property
    def orders(self) -> np.ndarray:
        return np.arange(1, self.n_max + 1, dtype=float)

    @cached_property
    def cos_coefficients(self) -> np.ndarray:
        """a_n for n = 1..N (read-only)."""
        values = np.array([a for a, _ in self.harmonics], dtype=float)
        values.setflags(write=False)
        return values

    @cached_property
    def sin_coefficients(self) -> np.ndarray:
        """b_n for n = 1..N (read-only)."""
        values = np.array([b for _, b in self.harmonics], dtype=float)
        values.setflags(write=False)
        return values

    def coefficient(self, n: int) -> Tuple[float, float]:
        """(a_n, b_n), zero beyond the truncation order."""
        if 1 <= n <= self.n_max:
            return self.harmonics[n - 1]
        return (0.0, 0.0)

    def padded(self, n_max: int) -> Tuple[np.ndarray, np.ndarray]:
        """Cosine and sine arrays zero-padded (or cut) to length n_max."""
        a = np.zeros(n_max)
        b = np.zeros(n_max)
        m = min(n_max, self.n_max)
        a[:m] = self.cos_coefficients[:m]
        b[:m] = self.sin_coefficients[:m]
        return a, b

    def as_vector(self) -> np.ndarray:
        """Coefficients in the layout [a0, a1, b1, a2, b2, ...]."""
        x = np.empty(2 * self.n_max + 1)
        x[0] = self.a0
        x[1::2] = self.cos_coefficients
        x[2::2] = self.sin_coefficients
        return x

    def harmonic_energies(self) -> np.ndarray:
        """e_n = a_n^2 + b_n^2 for n = 1..N."""
        return self.cos_coefficients ** 2 + self.sin_coefficients ** 2

    def support(self, tol: float = COEFFICIENT_TOL) -> List[int]:
        """Sorted harmonic indices whose coefficients exceed tol in magnitude."""
        a = np.abs(self.cos_coefficients)
        b = np.abs(self.sin_coefficients)
        return [int(n) for n in np.flatnonzero(np.maximum(a, b) > tol) + 1]

    def scaled(self, c: float) -> "FourierProfile":
        """Profile of c*rho."""
        return FourierProfile.from_vector(c * self.as_vector())

    def with_coefficient(self, n: int, a: float, b: float = 0.0) -> "FourierProfile":
        """Copy with (a_n, b_n) replaced, extending the truncation order if needed."""
        if n < 1:
            raise ProfileError(f"harmonic index must be >= 1, got {n}")
        cos_part, sin_part = self.padded(max(n, self.n_max))
        cos_part[n - 1] = a
        sin_part[n - 1] = b
        return FourierProfile.from_arrays(self.a0, cos_part, sin_part)

    def __call__(self, theta: AngleLike):
        return eval_radial(self, theta)


class PositivityCertificate(str, Enum):
    SUFFICIENT_CONDITION = "sufficient_condition"
    GRID_VERIFIED = "grid_verified"


@dataclass(frozen=True)
class StarBody:
    """A profile whose radial function is certified strictly positive."""

    profile: FourierProfile
    min_radial: float
    positivity_certificate: PositivityCertificate
    name: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.min_radial > 0.0:
            raise ProfileError(f"star body requires min_radial > 0, got {self.min_radial!r}")
        object.__setattr__(self, "positivity_certificate", PositivityCertificate(self.positivity_certificate))

    @property
    def a0(self) -> float:
        return self.profile.a0

    @property
    def n_max(self) -> int:
        return self.profile.n_max

    def __call__(self, theta: AngleLike):
        return eval_radial(self.profile, theta)


BodyLike = Union[StarBody, FourierProfile]


def as_profile(body: BodyLike) -> FourierProfile:
    """Accept either a StarBody or a bare FourierProfile."""
    if isinstance(body, StarBody):
        return body.profile
    if isinstance(body, FourierProfile):
        return body
    raise TypeError(f"expected StarBody or FourierProfile, got {type(body).__name__}")


def _as_result(values: np.ndarray):
    return float(values) if np.ndim(values) == 0 else values


def eval_radial(profile: FourierProfile, theta: AngleLike):
    """
    Evaluate rho at one angle or an array of angles.

    Args:
        profile: Fourier profile
        theta: Angle(s) in radians; reduced modulo 2*pi before evaluation

    Returns:
        float for a scalar angle, otherwise an array shaped like theta
    """
    theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    if profile.n_max == 0:
        return _as_result(np.full(theta.shape, 0.5 * profile.a0))
    phase = np.multiply.outer(theta, profile.orders)
    values = 0.5 * profile.a0 + np.cos(phase) @ profile.cos_coefficients + np.sin(phase) @ profile.sin_coefficients
    return _as_result(values)


def eval_radial_derivative(profile: FourierProfile, theta: AngleLike):
    """Term-by-term derivative sum_n n(-a_n sin(n theta) + b_n cos(n theta))."""
    theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    if profile.n_max == 0:
        return _as_result(np.zeros(theta.shape))
    phase = np.multiply.outer(theta, profile.orders)
    n = profile.orders
    values = np.cos(phase) @ (n * profile.sin_coefficients) - np.sin(phase) @ (n * profile.cos_coefficients)
    return _as_result(values)


def check_order(k: int) -> int:
    """Validate the order k of a k-order radial function."""
    if isinstance(k, bool) or int(k) != k or k < 2:
        raise ParameterRangeError(f"k must be an integer >= 2, got {k!r}")
    return int(k)


def k_order_radial(profile: FourierProfile, k: int, theta: AngleLike):
    """
    k-order radial function by direct summation over k rotations.

    Args:
        profile: Fourier profile
        k: Order, k >= 2
        theta: Angle(s) in radians

    Returns:
        sum_{m=0}^{k-1} rho(theta + 2*m*pi/k)
    """
    k = check_order(k)
    theta = np.asarray(theta, dtype=float)
    total = np.zeros(theta.shape)
    for m in range(k):
        total = total + np.asarray(eval_radial(profile, theta + TWO_PI * m / k))
    return _as_result(total)


def k_order_radial_closed_form(profile: FourierProfile, k: int, theta: AngleLike):
    """k-order radial function through the harmonic filter: only indices n = k*l survive, scaled by k."""
    k = check_order(k)
    theta = np.mod(np.asarray(theta, dtype=float), TWO_PI)
    kept = np.arange(k, profile.n_max + 1, k)
    if kept.size == 0:
        return _as_result(np.full(theta.shape, 0.5 * k * profile.a0))
    phase = np.multiply.outer(theta, kept.astype(float))
    a = profile.cos_coefficients[kept - 1]
    b = profile.sin_coefficients[kept - 1]
    values = k * (0.5 * profile.a0 + np.cos(phase) @ a + np.sin(phase) @ b)
    return _as_result(values)


def positivity_lower_bound(profile: FourierProfile) -> float:
    """a0/2 - sum_n sqrt(a_n^2 + b_n^2), a lower bound of rho."""
    return 0.5 * profile.a0 - float(np.sqrt(profile.harmonic_energies()).sum())


def positivity_grid_nodes(n_max: int) -> int:
    return max(MIN_POSITIVITY_NODES, 8 * n_max)


def min_radial_on_grid(profile: FourierProfile, nodes: Optional[int] = None) -> Tuple[float, float]:
    """
    Minimum of rho over the uniform grid theta_j = 2*pi*j/nodes.

    Returns:
        (argmin angle, minimum value)
    """
    nodes = nodes or positivity_grid_nodes(profile.n_max)
    theta = TWO_PI * np.arange(nodes) / nodes
    values = eval_radial(profile, theta)
    j = int(np.argmin(values))
    return float(theta[j]), float(values[j])


def validate_positivity(
    profile: FourierProfile,
    grid_nodes: Optional[int] = None,
    name: Optional[str] = None,
) -> StarBody:
    """
    Certify that rho is strictly positive and wrap the profile as a StarBody.

    Tries the sufficient condition a0/2 > sum_n |c_n| first, then scans a
    uniform grid of max(1024, 8*N) nodes.

    Args:
        profile: Candidate profile
        grid_nodes: Grid size for the fallback scan (at least max(1024, 8*N))
        name: Optional label carried by the body

    Returns:
        StarBody with min_radial and certificate set

    Raises:
        ParameterRangeError: grid_nodes below the required minimum
        PositivityError: the grid minimum is not positive
    """
    required = positivity_grid_nodes(profile.n_max)
    if grid_nodes is None:
        grid_nodes = required
    elif grid_nodes < required:
        raise ParameterRangeError(f"positivity grid needs at least {required} nodes, got {grid_nodes}")

    bound = positivity_lower_bound(profile)
    if bound > 0.0:
        return StarBody(profile, bound, PositivityCertificate.SUFFICIENT_CONDITION, name=name)

    logger.debug(f"Sufficient condition failed (bound {bound:.6g}), scanning {grid_nodes} nodes")
    argmin, minimum = min_radial_on_grid(profile, grid_nodes)
    if minimum > 0.0:
        return StarBody(profile, minimum, PositivityCertificate.GRID_VERIFIED, name=name)

    logger.info(f"Positivity rejected: rho({argmin:.6g}) = {minimum:.6g}")
    raise PositivityError(argmin, minimum)


def hypothesis_violations(profile: FourierProfile, k: int, tol: float = COEFFICIENT_TOL) -> List[int]:
    """Indices n with n/k an even integer whose coefficients are nonzero."""
    k = check_order(k)
    return [n for n in profile.support(tol) if n % (2 * k) == 0]


def project_even_k_harmonics(profile: FourierProfile, k: int) -> FourierProfile:
    """
    Zero every harmonic whose index is a multiple of 2k.

    Other coefficients are copied unchanged, so the projection is idempotent.
    """
    k = check_order(k)
    a = np.array(profile.cos_coefficients)
    b = np.array(profile.sin_coefficients)
    a[2 * k - 1::2 * k] = 0.0
    b[2 * k - 1::2 * k] = 0.0
    return FourierProfile.from_arrays(profile.a0, a, b)


class FamilyKind(str, Enum):
    DISC = "disc"
    FIRST_HARMONIC = "first_harmonic"
    K_MULTIPLES = "k_multiples"
    EVEN_K_MULTIPLES = "even_k_multiples"
    NON_K_MULTIPLES = "non_k_multiples"

    @property
    def needs_order(self) -> bool:
        return self in (FamilyKind.K_MULTIPLES, FamilyKind.EVEN_K_MULTIPLES, FamilyKind.NON_K_MULTIPLES)


@dataclass(frozen=True)
class EqualityFamily:
    """
    A sparsity pattern on harmonic indices that attains equality in a sharp inequality.

    Attributes:
        kind: Family kind
        k: Order for the k-dependent kinds, None otherwise
    """

    kind: FamilyKind
    k: Optional[int] = None

    def __post_init__(self):
        kind = FamilyKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if kind.needs_order:
            if self.k is None:
                raise ParameterRangeError(f"family {kind.value} needs an order k")
            object.__setattr__(self, "k", check_order(self.k))
        elif self.k is not None:
            object.__setattr__(self, "k", None)

    @classmethod
    def parse(cls, label: str) -> "EqualityFamily":
        """Parse labels such as 'disc' or 'k_multiples(3)'."""
        label = label.strip()
        if label.endswith(")") and "(" in label:
            kind, _, order = label[:-1].partition("(")
            try:
                return cls(FamilyKind(kind.strip()), int(order))
            except ValueError as exc:
                raise ProfileError(f"unknown equality family {label!r}") from exc
        try:
            return cls(FamilyKind(label))
        except ValueError as exc:
            raise ProfileError(f"unknown equality family {label!r}") from exc

    @property
    def label(self) -> str:
        if self.kind.needs_order:
            return f"{self.kind.value}({self.k})"
        return self.kind.value

    def __str__(self) -> str:
        return self.label

    def allows(self, n: int) -> bool:
        """Whether harmonic index n may be nonzero in this family."""
        if self.kind is FamilyKind.DISC:
            return False
        if self.kind is FamilyKind.FIRST_HARMONIC:
            return n == 1
        if self.kind is FamilyKind.K_MULTIPLES:
            return n % self.k == 0
        if self.kind is FamilyKind.EVEN_K_MULTIPLES:
            return n % (2 * self.k) == 0
        return n % self.k != 0

    def forbidden_indices(self, n_max: int) -> List[int]:
        return [n for n in range(1, n_max + 1) if not self.allows(n)]

    def forbidden_mass(self, profile: FourierProfile) -> float:
        """Euclidean norm of the coefficients the family forbids."""
        forbidden = np.array(self.forbidden_indices(profile.n_max), dtype=int)
        if forbidden.size == 0:
            return 0.0
        return float(np.sqrt(profile.harmonic_energies()[forbidden - 1].sum()))

    def contains(self, profile: FourierProfile, tol: float = COEFFICIENT_TOL) -> bool:
        return all(self.allows(n) for n in profile.support(tol))


def make_equality_family(
    family: Union[EqualityFamily, FamilyKind, str],
    a0: float,
    harmonics: Optional[Mapping[int, Tuple[float, float]]] = None,
    k: Optional[int] = None,
    grid_nodes: Optional[int] = None,
) -> StarBody:
    """
    Construct a body with exactly the sparsity pattern of an equality family.

    Args:
        family: EqualityFamily, kind or label ('disc', 'k_multiples(3)', ...)
        a0: Constant-term coefficient
        harmonics: Sparse mapping n -> (a_n, b_n); every index must be allowed by the family
        k: Order when family is given as a bare kind
        grid_nodes: Forwarded to validate_positivity

    Returns:
        Certified StarBody

    Raises:
        ProfileError: a coefficient sits on an index the family forbids
        PositivityError: the resulting radial function is not positive
    """
    if isinstance(family, str) and not isinstance(family, FamilyKind) and "(" in family:
        family = EqualityFamily.parse(family)
    elif not isinstance(family, EqualityFamily):
        family = EqualityFamily(FamilyKind(family), k)

    harmonics = dict(harmonics or {})
    for n in sorted(harmonics):
        if not family.allows(n):
            raise ProfileError(f"family {family.label} does not allow a harmonic at n={n}")

    profile = FourierProfile.from_coefficients(a0, harmonics)
    return validate_positivity(profile, grid_nodes, name=family.label)


def disc(radius: float = 1.0) -> StarBody:
    """Origin-centred disc of the given radius."""
    return make_equality_family(FamilyKind.DISC, 2.0 * radius)
