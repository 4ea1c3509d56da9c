"""Boundary-value solvers for the optimality system.

The first-order conditions turn the control problem into a two-point
boundary-value problem: the state starts at (s0, i0, r0, 0) while the
costates must vanish at the final time.  Two independent solvers attack
it:

  * solve_shooting          single shooting on the unknown initial
                            costates psi(0), damped Newton on the 2-vector
                            residual psi(T), forward-difference 2x2
                            Jacobian solved in closed form, multistart
                            fallback;
  * solve_forward_backward  forward-backward sweep: alternate forward
                            state / backward costate integrations with a
                            relaxed clamp-law control update until the
                            control schedule reaches a fixed point.

They share nothing but the integrator, so their agreement on the
objective is a meaningful cross-check.  control_gradient supplies the
adjoint-based derivative of the objective with respect to a
piecewise-constant schedule, used for finite-difference verification.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergenceError, NonFiniteError
from .integrate import (
    Trajectory,
    expand_piecewise_schedule,
    integrate_adjoint_backward,
    integrate_coupled,
    integrate_state_forward,
    interval_boundaries,
)
from .model import ModelParams, RunningCost

__all__ = [
    "ShootingOptions",
    "SolveReport",
    "shooting_residual",
    "solve_shooting",
    "solve_forward_backward",
    "control_gradient",
    "require_converged",
]

# Offsets of the multistart grid for the initial costates, applied in this
# order after the caller's guess; each is scaled by a_i * horizon (the
# magnitude the adjoint source can accumulate over the window).
_MULTISTART_OFFSETS = (
    (-1.0, -1.0), (-1.0, 0.0), (-1.0, 1.0),
    (0.0, -1.0), (0.0, 1.0),
    (1.0, -1.0), (1.0, 0.0), (1.0, 1.0),
)


@dataclass(frozen=True)
class ShootingOptions:
    """Tunables of the shooting solve.

    residual_tol       absolute tolerance on max(|psi1(T)|, |psi2(T)|)
    max_newton_iters   Newton iteration cap per start
    fd_epsilon         relative step of the forward-difference Jacobian
    damping_halvings   step halvings allowed per Newton iteration
    multistart_offsets fallback starting points, scaled by a_i * horizon
    """

    residual_tol: float = 1e-10
    max_newton_iters: int = 50
    fd_epsilon: float = 1e-6
    damping_halvings: int = 30
    multistart_offsets: tuple[tuple[float, float], ...] = _MULTISTART_OFFSETS

    def __post_init__(self):
        if not self.residual_tol > 0.0:
            raise ValueError("residual_tol must be positive")
        if self.max_newton_iters < 1:
            raise ValueError("max_newton_iters must be >= 1")
        if not self.fd_epsilon > 0.0:
            raise ValueError("fd_epsilon must be positive")
        if self.damping_halvings < 0:
            raise ValueError("damping_halvings must be >= 0")


@dataclass(frozen=True)
class SolveReport:
    """Outcome of one solve, returned even on failure (converged=False)."""

    trajectory: Trajectory
    objective: float
    residual_norm: float
    newton_iters: int
    converged: bool
    solver: str

    @property
    def initial_costate(self) -> tuple[float, float]:
        return float(self.trajectory.psi1[0]), float(self.trajectory.psi2[0])


def require_converged(report: SolveReport) -> SolveReport:
    """Pass a converged report through; raise NoConvergenceError otherwise."""
    if not report.converged:
        raise NoConvergenceError(
            f"{report.solver} solve did not converge "
            f"(residual {report.residual_norm:.3e}, {report.newton_iters} iterations)",
            report=report,
        )
    return report


def shooting_residual(
    psi0: tuple[float, float], cost: RunningCost, p: ModelParams
) -> tuple[float, float]:
    """Terminal costates (psi1(T), psi2(T)) of the coupled run from psi0."""
    traj = integrate_coupled(psi0, cost, p)
    return float(traj.psi1[-1]), float(traj.psi2[-1])


def _residual_of(traj: Trajectory) -> tuple[float, float, float]:
    r1 = float(traj.psi1[-1])
    r2 = float(traj.psi2[-1])
    return r1, r2, max(abs(r1), abs(r2))


def _newton_from(
    start: tuple[float, float], cost: RunningCost, p: ModelParams, opts: ShootingOptions
):
    """Damped Newton from one start; returns (traj, norm, iters, converged).

    Returns None when the very first integration diverges (a hopeless
    start the multistart loop should just skip).
    """
    pa, pb = float(start[0]), float(start[1])
    try:
        traj = integrate_coupled((pa, pb), cost, p)
    except NonFiniteError:
        return None
    r1, r2, norm = _residual_of(traj)

    iters = 0
    while norm > opts.residual_tol and iters < opts.max_newton_iters:
        # Forward-difference 2x2 Jacobian of the residual.
        cols = []
        for j in range(2):
            delta = opts.fd_epsilon * max(1.0, abs(pa) if j == 0 else abs(pb))
            probe = (pa + delta, pb) if j == 0 else (pa, pb + delta)
            try:
                q1, q2 = shooting_residual(probe, cost, p)
            except NonFiniteError:
                return traj, norm, iters, False
            cols.append(((q1 - r1) / delta, (q2 - r2) / delta))
        a, c = cols[0]
        b, d = cols[1]
        det = a * d - b * c
        if det == 0.0 or not math.isfinite(det):
            return traj, norm, iters, False
        step1 = (-r1 * d + r2 * b) / det
        step2 = (-r2 * a + r1 * c) / det

        # Halve the step until the residual norm actually drops; the clamp
        # law's kinks make full Newton steps overshoot occasionally.
        lam = 1.0
        accepted = False
        for _ in range(opts.damping_halvings + 1):
            trial = (pa + lam * step1, pb + lam * step2)
            try:
                trial_traj = integrate_coupled(trial, cost, p)
            except NonFiniteError:
                lam *= 0.5
                continue
            t1, t2, trial_norm = _residual_of(trial_traj)
            if trial_norm < norm:
                pa, pb = trial
                traj, r1, r2, norm = trial_traj, t1, t2, trial_norm
                accepted = True
                break
            lam *= 0.5
        iters += 1
        if not accepted:
            return traj, norm, iters, False

    return traj, norm, iters, norm <= opts.residual_tol


def solve_shooting(
    cost: RunningCost,
    p: ModelParams,
    opts: ShootingOptions | None = None,
    initial_costate: tuple[float, float] | None = None,
) -> SolveReport:
    """Solve the boundary-value problem by single shooting.

    Tries the caller's initial costate guess first (default (0, 0), exact
    for a_i = 0), then the multistart grid.  Always returns a report; the
    converged flag is honest and the best-residual attempt is kept when
    every start fails.
    """
    opts = opts or ShootingOptions()
    scale = cost.a_i * p.horizon
    starts: list[tuple[float, float]] = []
    if initial_costate is not None:
        starts.append((float(initial_costate[0]), float(initial_costate[1])))
    starts.append((0.0, 0.0))
    starts.extend((dx * scale, dy * scale) for dx, dy in opts.multistart_offsets)
    seen = set()
    unique_starts = []
    for st in starts:
        if st not in seen:
            seen.add(st)
            unique_starts.append(st)

    best = None
    for st in unique_starts:
        outcome = _newton_from(st, cost, p, opts)
        if outcome is None:
            continue
        traj, norm, iters, converged = outcome
        if best is None or norm < best[1]:
            best = (traj, norm, iters, converged)
        if converged:
            best = (traj, norm, iters, converged)
            break

    if best is None:
        raise NonFiniteError(p.horizon, "every shooting start diverged")
    traj, norm, iters, converged = best
    return SolveReport(
        trajectory=traj,
        objective=float(traj.z[-1]),
        residual_norm=norm,
        newton_iters=iters,
        converged=converged,
        solver="shooting",
    )


def solve_forward_backward(
    cost: RunningCost,
    p: ModelParams,
    relaxation: float = 0.5,
    max_iters: int = 500,
    tol: float = 1e-9,
) -> SolveReport:
    """Solve by forward-backward sweep with relaxed control updates.

    Per iteration: integrate the state forward under the current schedule,
    the costates backward along it, then move each node's control a
    relaxation-fraction toward the clamp law.  Converged when the largest
    control change, relative to the control scale, drops below tol.  The
    terminal-costate residual is zero by construction of the backward
    pass, so convergence is measured on the control fixed point.
    """
    if not 0.0 < relaxation <= 1.0:
        raise ValueError("relaxation must be in (0, 1]")
    if max_iters < 1:
        raise ValueError("max_iters must be >= 1")

    n = p.n_steps
    u1 = np.zeros(n + 1)
    u2 = np.zeros(n + 1)
    traj = None
    psi1 = psi2 = None
    converged = False
    iters = 0

    for iters in range(1, max_iters + 1):
        traj = integrate_state_forward(u1, u2, cost, p)
        psi1, psi2 = integrate_adjoint_backward(traj, cost, p)
        # + 0.0 canonicalizes the signed zero a zero costate produces.
        u1_law = np.clip(-psi1 * traj.s / (2.0 * cost.w1), 0.0, p.u1_max) + 0.0
        u2_law = np.clip(-psi2 * traj.i / (2.0 * cost.w2), 0.0, p.u2_max) + 0.0
        u1_next = (1.0 - relaxation) * u1 + relaxation * u1_law
        u2_next = (1.0 - relaxation) * u2 + relaxation * u2_law
        scale = 1.0 + max(float(np.max(np.abs(u1_next))), float(np.max(np.abs(u2_next))))
        change = max(
            float(np.max(np.abs(u1_next - u1))), float(np.max(np.abs(u2_next - u2)))
        ) / scale
        u1, u2 = u1_next, u2_next
        if change <= tol:
            converged = True
            break

    # Final consistent pass under the accepted schedule.
    traj = integrate_state_forward(u1, u2, cost, p)
    psi1, psi2 = integrate_adjoint_backward(traj, cost, p)
    full = traj.with_adjoint(psi1, psi2)
    residual = max(abs(float(psi1[-1])), abs(float(psi2[-1])))
    return SolveReport(
        trajectory=full,
        objective=float(full.z[-1]),
        residual_norm=residual,
        newton_iters=iters,
        converged=converged,
        solver="forward-backward",
    )


def control_gradient(
    u1_levels,
    u2_levels,
    cost: RunningCost,
    p: ModelParams,
) -> tuple[np.ndarray, np.ndarray]:
    """Adjoint gradient of the objective for a piecewise-constant schedule.

    The schedule holds one (u1, u2) pair per interval of the even
    partition of the grid into len(u1_levels) pieces.  Over interval j,

        dJ/du1_j = integral of (2*w1*u1_j + psi1*S) dt
        dJ/du2_j = integral of (2*w2*u2_j + psi2*I) dt

    with the costates from a backward pass along the schedule's state
    trajectory; the constant part integrates exactly, the rest by
    trapezoid on the fine grid.
    """
    u1_levels = np.asarray(u1_levels, dtype=float)
    u2_levels = np.asarray(u2_levels, dtype=float)
    if u1_levels.shape != u2_levels.shape or u1_levels.ndim != 1:
        raise ValueError("u1_levels and u2_levels must be 1-d and the same length")
    m = len(u1_levels)
    bounds = interval_boundaries(p.n_steps, m)
    u1_nodes = expand_piecewise_schedule(u1_levels, bounds, p.n_steps)
    u2_nodes = expand_piecewise_schedule(u2_levels, bounds, p.n_steps)

    traj = integrate_state_forward(u1_nodes, u2_nodes, cost, p)
    psi1, psi2 = integrate_adjoint_backward(traj, cost, p)

    h = p.horizon / p.n_steps
    g1_fine = psi1 * traj.s
    g2_fine = psi2 * traj.i
    grad1 = np.empty(m)
    grad2 = np.empty(m)
    for j in range(m):
        lo, hi = bounds[j], bounds[j + 1]
        length = (hi - lo) * h
        seg1 = g1_fine[lo:hi + 1]
        seg2 = g2_fine[lo:hi + 1]
        trap1 = h * (np.sum(seg1) - 0.5 * (seg1[0] + seg1[-1]))
        trap2 = h * (np.sum(seg2) - 0.5 * (seg2[0] + seg2[-1]))
        grad1[j] = 2.0 * cost.w1 * u1_levels[j] * length + trap1
        grad2[j] = 2.0 * cost.w2 * u2_levels[j] * length + trap2
    return grad1, grad2
