"""Exhaustive search over piecewise-constant control schedules.

Ground truth for small instances: enumerate every schedule with u1 and u2
constant per interval, each drawn from a uniform level grid that always
contains 0 and u_max, integrate each with the same RK4 scheme and grid as
the main solvers, and keep the minimizer.  The search's value is its
dumbness; no heuristics.

The enumeration is evaluated in batches with numpy (one array lane per
schedule), which is the same arithmetic as the scalar integrator applied
elementwise.  Results are deterministic: schedules are scanned in
lexicographic order and ties keep the earliest.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooLargeError
from .integrate import interval_boundaries
from .model import ModelParams, RunningCost

__all__ = ["BruteForceResult", "control_levels", "brute_force_best"]

ENUMERATION_GUARD = 10**6
_BATCH = 65536


@dataclass(frozen=True)
class BruteForceResult:
    """Best schedule found by exhaustive enumeration."""

    u1_levels: np.ndarray
    u2_levels: np.ndarray
    objective: float
    n_schedules: int

    def __post_init__(self):
        self.u1_levels.setflags(write=False)
        self.u2_levels.setflags(write=False)


def control_levels(u_max: float, n_levels: int) -> np.ndarray:
    """Uniform level grid {0, u_max/(L-1), ..., u_max}; just {0} for L = 1."""
    if n_levels < 1:
        raise ValueError("need at least one level")
    if n_levels == 1:
        return np.zeros(1)
    return u_max * (np.arange(n_levels) / (n_levels - 1))


def _batch_objectives(
    u1_grid: np.ndarray,
    u2_grid: np.ndarray,
    owner: np.ndarray,
    cost: RunningCost,
    p: ModelParams,
) -> np.ndarray:
    """Terminal objective of every schedule in the batch.

    u1_grid/u2_grid have shape (batch, n_intervals); owner maps each fine
    step to its interval.  Classical RK4, one numpy lane per schedule.
    """
    n = p.n_steps
    h = p.horizon / n
    h2 = h / 2.0
    h6 = h / 6.0
    beta, alpha = p.beta, p.alpha
    a_i, w1, w2 = cost.a_i, cost.w1, cost.w2

    m = u1_grid.shape[0]
    s = np.full(m, float(p.s0))
    i = np.full(m, float(p.i0))
    z = np.zeros(m)

    def rhs(s_v, i_v, u1, u2):
        infection = beta * s_v * i_v
        ds = -infection - u1 * s_v
        di = infection - u2 * i_v - alpha * i_v
        dz = (w1 * u1 * u1 + w2 * u2 * u2) + a_i * i_v
        return ds, di, dz

    for k in range(n):
        u1 = u1_grid[:, owner[k]]
        u2 = u2_grid[:, owner[k]]
        k1s, k1i, k1z = rhs(s, i, u1, u2)
        k2s, k2i, k2z = rhs(s + h2 * k1s, i + h2 * k1i, u1, u2)
        k3s, k3i, k3z = rhs(s + h2 * k2s, i + h2 * k2i, u1, u2)
        k4s, k4i, k4z = rhs(s + h * k3s, i + h * k3i, u1, u2)
        s = s + h6 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s)
        i = i + h6 * (k1i + 2.0 * k2i + 2.0 * k3i + k4i)
        z = z + h6 * (k1z + 2.0 * k2z + 2.0 * k3z + k4z)
    return z


def brute_force_best(
    cost: RunningCost,
    p: ModelParams,
    n_intervals: int,
    levels_per_control: int,
) -> BruteForceResult:
    """Minimize over all piecewise-constant schedules on the level grid.

    Enumerates levels^(2*n_intervals) schedules; raises TooLargeError when
    that exceeds the guard (10^6).  Since the level grid contains 0 and
    u_max, the all-zero and all-max policies are always in the search set.
    """
    total = levels_per_control ** (2 * n_intervals)
    if total > ENUMERATION_GUARD:
        raise TooLargeError(
            f"{levels_per_control}^(2*{n_intervals}) = {total} schedules "
            f"exceeds the enumeration guard ({ENUMERATION_GUARD})"
        )

    levels1 = control_levels(p.u1_max, levels_per_control)
    levels2 = control_levels(p.u2_max, levels_per_control)
    bounds = interval_boundaries(p.n_steps, n_intervals)
    owner = np.searchsorted(bounds, np.arange(p.n_steps), side="right") - 1

    # Digit j of a schedule index (base L, most significant first) selects
    # the level of: u1 on intervals 0..m-1, then u2 on intervals 0..m-1.
    n_digits = 2 * n_intervals
    weights = levels_per_control ** (n_digits - 1 - np.arange(n_digits))

    best_obj = np.inf
    best_idx = -1
    for start in range(0, total, _BATCH):
        idx = np.arange(start, min(start + _BATCH, total))
        digits = (idx[:, None] // weights[None, :]) % levels_per_control
        u1_grid = levels1[digits[:, :n_intervals]]
        u2_grid = levels2[digits[:, n_intervals:]]
        objs = _batch_objectives(u1_grid, u2_grid, owner, cost, p)
        j = int(np.argmin(objs))
        if objs[j] < best_obj:
            best_obj = float(objs[j])
            best_idx = int(idx[j])

    best_digits = (best_idx // weights) % levels_per_control
    return BruteForceResult(
        u1_levels=levels1[best_digits[:n_intervals]].astype(float),
        u2_levels=levels2[best_digits[n_intervals:]].astype(float),
        objective=best_obj,
        n_schedules=total,
    )
