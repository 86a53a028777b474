"""
Near-equality extremal search.

Descends the closed-form slack over the coefficient vector
x = [a0, a1, b1, a2, b2, ...] with a diagonally preconditioned step and a
logarithmic barrier on the grid minimum of rho, so every iterate stays a
valid star body. The terminal body is compared against the equality family
the closed forms predict.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple

import numpy as np

from bodies.exceptions import ParameterRangeError
from bodies.profiles import (
    TWO_PI,
    EqualityFamily,
    FourierProfile,
    StarBody,
    as_profile,
    positivity_grid_nodes,
    project_even_k_harmonics,
    validate_positivity,
)
from bodies.serializers import body_to_dict
from inequalities import classification
from inequalities.gradients import Term, harmonic_orders
from inequalities.inequalities import BaseInequality, get_inequality
from inequalities.reports import InequalityId, SlackReport

logger = logging.getLogger(__name__)

DEFAULT_MAX_ITERS = 500
DEFAULT_CONVERGENCE_TOL = 1e-12
DEFAULT_BARRIER_WEIGHT = 1e-3
DEFAULT_FAMILY_TOL = 1e-3
ARMIJO = 1e-4
MONOTONE_TOL = 1e-12
MAX_HALVINGS = 60


class SearchStatus(str, Enum):
    CONVERGED = 'converged'
    STALLED = 'stalled'
    BUDGET_EXHAUSTED = 'budget_exhausted'


@dataclass(frozen=True)
class SearchSpec:
    """
    Attributes:
        inequality_id: Inequality whose slack is minimised
        start: Starting body
        k, lam, mu, alpha: Inequality parameters
        partner: Fixed partner body for T3 and mixed_iso
        max_iters: Iteration budget
        convergence_tol: Stop once slack <= this
        barrier_weight: tau = barrier_weight * slack
        project: Zero harmonics at even multiples of k in the start body (T1, stab35)
        family_tol: Coefficient tolerance when matching the terminal body to its family
        grid_nodes: Positivity grid size (default max(1024, 8N))
    """

    inequality_id: InequalityId
    start: StarBody
    k: Optional[int] = None
    lam: Optional[float] = None
    mu: Optional[float] = None
    alpha: Optional[float] = None
    partner: Optional[StarBody] = None
    max_iters: int = DEFAULT_MAX_ITERS
    convergence_tol: float = DEFAULT_CONVERGENCE_TOL
    barrier_weight: float = DEFAULT_BARRIER_WEIGHT
    project: bool = True
    family_tol: float = DEFAULT_FAMILY_TOL
    grid_nodes: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, 'inequality_id', InequalityId(self.inequality_id))
        if self.max_iters < 0:
            raise ParameterRangeError(f"max_iters must be >= 0, got {self.max_iters}")
        if self.convergence_tol < 0.0 or self.barrier_weight < 0.0:
            raise ParameterRangeError("convergence_tol and barrier_weight must be non-negative")


@dataclass
class SearchResult:
    body: StarBody
    trace: List[float]
    status: SearchStatus
    iterations: int
    predicted_family: EqualityFamily
    family_match: Optional[EqualityFamily]
    forbidden_mass: float
    report: Optional[SlackReport] = field(default=None, repr=False)

    @property
    def slack(self) -> float:
        return self.trace[-1]

    def to_dict(self) -> Dict:
        return {
            'body': body_to_dict(self.body),
            'trace': list(self.trace),
            'status': self.status.value,
            'iterations': self.iterations,
            'slack': self.slack,
            'predicted_family': self.predicted_family.label,
            'family_match': self.family_match.label if self.family_match is not None else None,
            'forbidden_mass': self.forbidden_mass,
        }


class _Barrier:
    """-log(min rho) over a fixed uniform grid, with its gradient at the argmin."""

    def __init__(self, n_max: int, nodes: int):
        self.theta = TWO_PI * np.arange(nodes) / nodes
        n = np.arange(1, n_max + 1)
        phase = np.multiply.outer(self.theta, n)
        basis = np.empty((nodes, 2 * n_max + 1))
        basis[:, 0] = 0.5
        basis[:, 1::2] = np.cos(phase)
        basis[:, 2::2] = np.sin(phase)
        self.basis = basis

    def minimum(self, x: np.ndarray) -> Tuple[int, float]:
        values = self.basis @ x
        j = int(np.argmin(values))
        return j, float(values[j])

    def __call__(self, x: np.ndarray) -> Tuple[float, np.ndarray]:
        j, rho = self.minimum(x)
        if rho <= 0.0:
            return math.inf, np.zeros(x.size)
        return -math.log(rho), -self.basis[j] / rho


def _frozen_mask(inequality: BaseInequality, size: int) -> np.ndarray:
    """Coordinates the hypothesis pins at zero (n a multiple of 2k for T1 and stab35)."""
    mask = np.zeros(size, dtype=bool)
    if inequality.inequality_id.needs_hypothesis:
        n = harmonic_orders(size).astype(int)
        mask[1:] = n % (2 * inequality.k) == 0
    return mask


class _Descent:

    def __init__(self, inequality: BaseInequality, partner: Optional[np.ndarray], barrier: _Barrier,
                 frozen: np.ndarray, barrier_weight: float):
        self.inequality = inequality
        self.partner = partner
        self.barrier = barrier
        self.frozen = frozen
        self.barrier_weight = barrier_weight

    def term(self, x: np.ndarray) -> Term:
        return self.inequality.slack_term(x, self.partner)

    def line_search(self, x: np.ndarray, term: Term, direction: np.ndarray, tau: float,
                    merit: float, slope: float) -> Optional[Tuple[np.ndarray, Term]]:
        """Halve the step until the body stays positive, slack does not grow and Armijo holds."""
        if not np.any(direction) or slope >= 0.0:
            return None
        t = 1.0
        for _ in range(MAX_HALVINGS):
            candidate = x + t * direction
            barrier_value, _ = self.barrier(candidate)
            if math.isfinite(barrier_value):
                candidate_term = self.term(candidate)
                candidate_merit = candidate_term.value + tau * barrier_value
                if (candidate_term.value <= term.value + MONOTONE_TOL
                        and candidate_merit <= merit + ARMIJO * t * slope):
                    return candidate, candidate_term
            t *= 0.5
        return None

    def step(self, x: np.ndarray, term: Term) -> Optional[Tuple[np.ndarray, Term]]:
        slack = term.value
        tau = self.barrier_weight * max(slack, 0.0)
        barrier_value, barrier_grad = self.barrier(x)
        merit = slack + tau * barrier_value

        curvature = np.abs(term.curvature)
        flat = curvature <= 0.0
        positive = curvature[~flat]
        fill = float(positive.min()) if positive.size else 1.0
        curvature = np.where(flat, fill, curvature)

        grad = term.grad + tau * barrier_grad
        direction = np.where(self.frozen, 0.0, -grad / curvature)
        accepted = self.line_search(x, term, direction, tau, merit, float(grad @ direction))
        if accepted is not None:
            return accepted

        # slack-neutral move of the flat coordinates only
        direction = np.where(flat & ~self.frozen, -tau * barrier_grad / fill, 0.0)
        return self.line_search(x, term, direction, tau, merit, float(grad @ direction))


def minimize_slack(spec: SearchSpec) -> SearchResult:
    """
    Descend the slack of an inequality from a start body.

    Args:
        spec: Search specification

    Returns:
        SearchResult with terminal body, slack trace and family comparison

    Raises:
        ParameterRangeError: Inadmissible parameters or a missing partner
        HypothesisError: Start body violates the hypothesis and project is off
    """
    inequality = get_inequality(spec.inequality_id, k=spec.k, lam=spec.lam, mu=spec.mu, alpha=spec.alpha, oracle=False)
    partner = None
    if inequality.two_body:
        if spec.partner is None:
            raise ParameterRangeError(f"{spec.inequality_id.value} search needs a partner body")
        partner_profile = as_profile(spec.partner)
    profile = as_profile(spec.start)
    if spec.project and inequality.inequality_id.needs_hypothesis:
        profile = project_even_k_harmonics(profile, inequality.k)
    inequality.check_hypothesis(profile)

    n_max = profile.n_max
    if inequality.two_body:
        n_max = max(n_max, partner_profile.n_max)
        partner = np.concatenate(([partner_profile.a0], np.column_stack(partner_profile.padded(n_max)).ravel()))
    x = np.concatenate(([profile.a0], np.column_stack(profile.padded(n_max)).ravel()))

    nodes = spec.grid_nodes or positivity_grid_nodes(n_max)
    descent = _Descent(inequality, partner, _Barrier(n_max, nodes), _frozen_mask(inequality, x.size), spec.barrier_weight)

    term = descent.term(x)
    trace = [term.value]
    status = None
    iterations = 0
    while iterations < spec.max_iters:
        if term.value <= spec.convergence_tol:
            status = SearchStatus.CONVERGED
            break
        accepted = descent.step(x, term)
        if accepted is None:
            status = SearchStatus.STALLED
            break
        x, term = accepted
        trace.append(term.value)
        iterations += 1
    if status is None:
        status = SearchStatus.CONVERGED if term.value <= spec.convergence_tol else SearchStatus.BUDGET_EXHAUSTED

    terminal = FourierProfile.from_vector(x)
    body = validate_positivity(terminal, grid_nodes=max(nodes, positivity_grid_nodes(n_max)), name='search-terminal')
    family = inequality.predicted_family()
    bodies = [terminal] if partner is None else [terminal, partner_profile]
    match = classification.most_specific_family(family, *bodies, tol=spec.family_tol)
    report = inequality.evaluate(body, spec.partner)

    logger.info(
        f"Search {spec.inequality_id.value} {status.value} after {iterations} iterations: "
        f"slack {term.value:.3e}, forbidden mass {family.forbidden_mass(terminal):.3e}"
    )
    return SearchResult(
        body=body,
        trace=trace,
        status=status,
        iterations=iterations,
        predicted_family=family,
        family_match=match,
        forbidden_mass=family.forbidden_mass(terminal),
        report=report,
    )
