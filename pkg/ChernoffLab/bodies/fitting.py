"""
Recover Fourier coefficients from sampled radial data.
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from bodies.exceptions import ParameterRangeError, UnderdeterminedFitError
from bodies.profiles import TWO_PI, FourierProfile

logger = logging.getLogger(__name__)

# Angles closer than this are the same sample direction.
ANGLE_RESOLUTION = 1e-12
UNIFORM_GRID_TOL = 1e-9


def _is_uniform_grid(theta: np.ndarray) -> bool:
    """True when theta (sorted, canonical) is exactly the grid 2*pi*j/M, j = 0..M-1."""
    m = theta.size
    expected = TWO_PI * np.arange(m) / m
    return bool(np.max(np.abs(theta - expected)) <= UNIFORM_GRID_TOL)


def _fit_uniform(rho: np.ndarray, n_max: int) -> FourierProfile:
    m = rho.size
    spectrum = np.fft.rfft(rho)
    a0 = 2.0 * spectrum[0].real / m
    a = 2.0 * spectrum[1:n_max + 1].real / m
    b = -2.0 * spectrum[1:n_max + 1].imag / m
    return FourierProfile.from_arrays(a0, a, b)


def _fit_least_squares(theta: np.ndarray, rho: np.ndarray, n_max: int) -> FourierProfile:
    n = np.arange(1, n_max + 1, dtype=float)
    phase = np.multiply.outer(theta, n)
    design = np.column_stack([np.full(theta.size, 0.5), np.cos(phase), np.sin(phase)])
    solution, _, rank, _ = np.linalg.lstsq(design, rho, rcond=None)
    if rank < design.shape[1]:
        raise UnderdeterminedFitError(
            f"sample angles determine only {rank} of {design.shape[1]} coefficients"
        )
    return FourierProfile.from_arrays(solution[0], solution[1:n_max + 1], solution[n_max + 1:])


def fit_profile(samples: Sequence[Tuple[float, float]], n_max: int) -> FourierProfile:
    """
    Fit a degree-n_max Fourier profile to (theta, rho) samples.

    Uniform samples on [0, 2*pi) go through the discrete Fourier transform;
    anything else is solved by least squares.

    Args:
        samples: Pairs (theta in radians, rho)
        n_max: Truncation order of the fitted profile

    Returns:
        Fitted FourierProfile (not positivity-checked)

    Raises:
        UnderdeterminedFitError: fewer than 2*n_max + 1 distinct sample angles
    """
    if n_max < 0 or int(n_max) != n_max:
        raise ParameterRangeError(f"n_max must be a non-negative integer, got {n_max!r}")
    n_max = int(n_max)

    data = np.asarray(samples, dtype=float)
    if data.size == 0:
        raise UnderdeterminedFitError("no samples given")
    if data.ndim != 2 or data.shape[1] != 2:
        raise ParameterRangeError(f"samples must be (theta, rho) pairs, got shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise ParameterRangeError("samples contain non-finite values")

    theta = np.mod(data[:, 0], TWO_PI)
    rho = data[:, 1]
    order = np.argsort(theta, kind="stable")
    theta, rho = theta[order], rho[order]

    distinct = 1 + int(np.count_nonzero(np.diff(theta) > ANGLE_RESOLUTION))
    # 0 and 2*pi - tiny are the same direction
    if theta.size > 1 and TWO_PI - theta[-1] + theta[0] <= ANGLE_RESOLUTION:
        distinct -= 1
    needed = 2 * n_max + 1
    if distinct < needed:
        raise UnderdeterminedFitError(
            f"{distinct} distinct sample angles cannot determine {needed} coefficients (n_max={n_max})"
        )

    if distinct == theta.size and _is_uniform_grid(theta):
        logger.debug(f"Uniform grid of {theta.size} samples, fitting by FFT")
        return _fit_uniform(rho, n_max)

    logger.debug(f"Non-uniform samples ({theta.size}), fitting by least squares")
    return _fit_least_squares(theta, rho, n_max)
