"""Seedable box-constrained Grey Wolf Optimizer (maximization).

Alpha/beta/delta are the three best-ever evaluations (elitist memory),
updated synchronously once per iteration; positions are clamped to the
bounds after each move. Random draws follow a fixed documented order
(agent index, then leader, then dimension) so runs are bit-reproducible.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ContractError, DomainError, EvaluationError


@dataclass(frozen=True)
class SearchBounds:
    """Per-dimension (lower, upper) box with optional labels."""

    lower: np.ndarray
    upper: np.ndarray
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", np.asarray(self.lower, dtype=float))
        object.__setattr__(self, "upper", np.asarray(self.upper, dtype=float))
        if self.lower.ndim != 1 or self.lower.shape != self.upper.shape:
            raise ContractError("lower and upper must be matching 1-D arrays")
        if self.lower.size < 1:
            raise DomainError("need at least one dimension")
        if np.any(self.lower >= self.upper):
            raise DomainError("every lower bound must be below its upper bound")
        if self.labels and len(self.labels) != self.lower.size:
            raise ContractError("labels must match the dimension count")

    @property
    def ndim(self):
        return self.lower.size


@dataclass(frozen=True)
class GwoConfig:
    """Optimizer settings; agents >= 4 (three leaders plus followers)."""

    agents: int = 10
    max_iter: int = 200
    seed: int = 0

    def __post_init__(self):
        if self.agents < 4:
            raise DomainError("need at least 4 agents")
        if self.max_iter < 1:
            raise DomainError("max_iter must be >= 1")


@dataclass(frozen=True)
class GwoRun:
    """Result of one optimizer run."""

    best_position: np.ndarray
    best_value: float
    convergence: np.ndarray  # best-so-far after each iteration
    evaluations: int


def a_schedule(iteration, max_iter):
    """Exploration parameter, linear from 2 at iteration 0 to 0 at max_iter."""
    if not 0 <= iteration <= max_iter:
        raise DomainError(f"iteration {iteration} outside [0, {max_iter}]")
    return 2.0 - iteration * (2.0 / max_iter)


def update_position(agent, leaders, a, rng):
    """Move one agent toward the three leaders.

    Per leader L and dimension: C = 2*r2, D = |C*X_L - X|, A = 2*a*r1 - a,
    X_L' = X_L - A*D; the new position is the mean of the three X_L'.
    r1 and r2 are drawn fresh per leader per dimension (leader-major order).
    """
    x = np.asarray(agent, dtype=float)
    L = np.asarray(leaders, dtype=float)
    if L.shape != (3, x.size) or x.ndim != 1:
        raise ContractError(
            f"expected leaders of shape (3, {x.size}), got {L.shape}")
    r1 = rng.random(L.shape)
    r2 = rng.random(L.shape)
    A = 2.0 * a * r1 - a
    C = 2.0 * r2
    D = np.abs(C * L - x)
    return np.mean(L - A * D, axis=0)


class _Leaders:
    """Elitist top-3 memory; ties broken by earlier discovery then
    lexicographic position."""

    def __init__(self):
        self._entries = []  # (value, seq, position)

    def consider(self, value, seq, position):
        self._entries.append((value, seq, position))
        self._entries.sort(key=lambda e: (-e[0], e[1], tuple(e[2])))
        del self._entries[3:]

    @property
    def best(self):
        return self._entries[0]

    def positions(self):
        return np.array([e[2] for e in self._entries])


def gwo_maximize(objective, bounds, cfg=None):
    """Maximize `objective` over the bounds box.

    Each iteration evaluates all agents, updates the alpha/beta/delta
    trio once, then moves every agent and clamps it to the box. The
    convergence curve holds the best-so-far value after each iteration.
    """
    cfg = cfg or GwoConfig()
    rng = np.random.default_rng(cfg.seed)
    pos = rng.uniform(bounds.lower, bounds.upper,
                      size=(cfg.agents, bounds.ndim))
    leaders = _Leaders()
    convergence = np.empty(cfg.max_iter)
    evaluations = 0
    seq = 0

    for it in range(cfg.max_iter):
        for i in range(cfg.agents):
            value = float(objective(pos[i]))
            evaluations += 1
            if not np.isfinite(value):
                raise EvaluationError(
                    f"objective returned {value} at {pos[i].tolist()}",
                    position=pos[i].copy())
            leaders.consider(value, seq, pos[i].copy())
            seq += 1
        convergence[it] = leaders.best[0]

        a = a_schedule(it, cfg.max_iter)
        trio = leaders.positions()
        for i in range(cfg.agents):
            pos[i] = np.clip(update_position(pos[i], trio, a, rng),
                             bounds.lower, bounds.upper)

    best_value, _, best_position = leaders.best
    return GwoRun(best_position=best_position, best_value=best_value,
                  convergence=convergence, evaluations=evaluations)
