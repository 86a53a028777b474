"""
Seeded random star bodies.

Body `index` of an ensemble draws from its own stream
default_rng(SeedSequence([seed, index])), so a body does not depend on how
many workers generated the ensemble or in which order.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

import numpy as np

from bodies.exceptions import ParameterRangeError
from bodies.profiles import (
    DEFAULT_N_MAX,
    TWO_PI,
    FourierProfile,
    StarBody,
    check_order,
    positivity_grid_nodes,
    project_even_k_harmonics,
    validate_positivity,
)

logger = logging.getLogger(__name__)

DEFAULT_A0_RANGE = (1.0, 3.0)
DEFAULT_SIGMA = 0.5
DEFAULT_DECAY = 2.0
DEFAULT_FLOOR = 0.05
SHRINK_STEP = 0.9

ProgressCallback = Callable[[int, int], None]
T = TypeVar('T')
R = TypeVar('R')


@dataclass(frozen=True)
class EnsembleSpec:
    """
    Attributes:
        count: Number of bodies
        seed: Non-negative seed shared by the ensemble
        n_max: Truncation order of every body
        a0_range: Interval a0 is drawn from
        decay_exponent: p in the harmonic scale sigma / n^p
        sigma: Harmonic scale at n = 1
        hypothesis_orders: Orders k whose even multiples are projected out
        positivity_floor: Lower bound of rho as a fraction of a0/2
    """

    count: int
    seed: int = 0
    n_max: int = DEFAULT_N_MAX
    a0_range: Tuple[float, float] = DEFAULT_A0_RANGE
    decay_exponent: float = DEFAULT_DECAY
    sigma: float = DEFAULT_SIGMA
    hypothesis_orders: Tuple[int, ...] = field(default_factory=tuple)
    positivity_floor: float = DEFAULT_FLOOR

    def __post_init__(self):
        if self.count < 1:
            raise ParameterRangeError(f"ensemble count must be >= 1, got {self.count}")
        if self.seed < 0:
            raise ParameterRangeError(f"seed must be non-negative, got {self.seed}")
        if self.n_max < 0:
            raise ParameterRangeError(f"n_max must be >= 0, got {self.n_max}")
        low, high = self.a0_range
        if not 0.0 < low <= high:
            raise ParameterRangeError(f"a0_range must satisfy 0 < low <= high, got {self.a0_range}")
        if self.decay_exponent < 0.0:
            raise ParameterRangeError(f"decay exponent must be >= 0, got {self.decay_exponent}")
        if self.sigma < 0.0:
            raise ParameterRangeError(f"sigma must be >= 0, got {self.sigma}")
        if not 0.0 < self.positivity_floor < 1.0:
            raise ParameterRangeError(f"positivity floor must lie in (0, 1), got {self.positivity_floor}")
        object.__setattr__(self, 'a0_range', (float(low), float(high)))
        object.__setattr__(self, 'hypothesis_orders', tuple(sorted({check_order(k) for k in self.hypothesis_orders})))


def _grid_minimum(values: np.ndarray) -> float:
    return float(values.min()) if values.size else 0.0


def shrink_to_floor(profile: FourierProfile, floor: float) -> FourierProfile:
    """
    Scale every harmonic by a common factor until min rho >= floor * a0/2 on the positivity grid.

    The factor (1 - floor)(a0/2) / (-min h), with h the harmonic part, lands
    exactly on the floor; rounding is absorbed by further factors of 0.9.
    """
    if profile.n_max == 0:
        return profile
    nodes = positivity_grid_nodes(profile.n_max)
    theta = TWO_PI * np.arange(nodes) / nodes
    half = 0.5 * profile.a0
    target = floor * half

    harmonic = profile(theta) - half
    lowest = _grid_minimum(harmonic)
    if half + lowest >= target:
        return profile

    factor = min(1.0, (1.0 - floor) * half / -lowest)
    x = profile.as_vector()
    x[1:] *= factor
    shrunk = FourierProfile.from_vector(x)
    while _grid_minimum(shrunk(theta)) < target * (1.0 - 1e-9):
        factor *= SHRINK_STEP
        x[1:] *= SHRINK_STEP
        shrunk = FourierProfile.from_vector(x)
    logger.debug(f"Shrunk harmonics by {factor:.6g} to keep rho >= {target:.6g}")
    return shrunk


def sample_star_body(spec: EnsembleSpec, index: int) -> StarBody:
    """
    Draw body `index` of the ensemble.

    a0 is uniform in a0_range, a_n and b_n are gaussian with standard
    deviation sigma / n^p. Harmonics at even multiples of each hypothesis
    order are zeroed, then harmonics shrink until rho clears the floor.

    Raises:
        ParameterRangeError: index outside [0, count)
    """
    if not 0 <= index < spec.count:
        raise ParameterRangeError(f"index {index} outside [0, {spec.count})")
    rng = np.random.default_rng(np.random.SeedSequence([spec.seed, index]))

    a0 = rng.uniform(*spec.a0_range)
    n = np.arange(1, spec.n_max + 1, dtype=float)
    scale = spec.sigma / n ** spec.decay_exponent
    a = rng.standard_normal(spec.n_max) * scale
    b = rng.standard_normal(spec.n_max) * scale
    profile = FourierProfile.from_arrays(a0, a, b)

    for k in spec.hypothesis_orders:
        profile = project_even_k_harmonics(profile, k)
    profile = shrink_to_floor(profile, spec.positivity_floor)
    return validate_positivity(profile, name=f"sample-{spec.seed}-{index}")


def map_in_order(
    func: Callable[[T], R],
    items: Sequence[T],
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[R]:
    """
    Apply func to every item, results in item order.

    Args:
        func: Pure function of one item
        items: Work items
        workers: Thread cap; 1 runs inline
        progress: Called as progress(done, total) after every item
    """
    total = len(items)
    workers = max(1, min(int(workers or 1), total or 1))
    results = []
    if workers == 1:
        for result in map(func, items):
            results.append(result)
            if progress:
                progress(len(results), total)
        return results

    with ThreadPoolExecutor(max_workers=workers) as executor:
        for result in executor.map(func, items):
            results.append(result)
            if progress:
                progress(len(results), total)
    return results


def sample_ensemble(
    spec: EnsembleSpec,
    workers: int = 1,
    progress: Optional[ProgressCallback] = None,
) -> List[StarBody]:
    """All bodies of the ensemble in index order."""
    bodies = map_in_order(lambda index: sample_star_body(spec, index), list(range(spec.count)), workers, progress)
    logger.info(f"Sampled {len(bodies)} bodies (seed {spec.seed}, N={spec.n_max})")
    return bodies
