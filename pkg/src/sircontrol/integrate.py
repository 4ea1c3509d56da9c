"""Fixed-step classical RK4 integration of the model systems.

Three integration paths share one scheme (uniform grid, classical RK4):

  * integrate_coupled        forward pass of the coupled state+costate
                             system with the clamp law substituted at every
                             stage (the shooting solver's workhorse);
  * integrate_state_forward  forward pass of the state under a given
                             piecewise-constant control schedule;
  * integrate_adjoint_backward
                             backward pass of the costates along a stored
                             state trajectory, terminal data psi(T) = 0.

The running cost is integrated as augmented ODEs alongside the state
(total ``z`` and its control-effort part ``z_control``), so objective
values carry the integrator's order rather than a quadrature rule's.

The backward pass needs state values at RK4 half-steps; those come from
cubic Hermite interpolation of the stored node samples with endpoint
derivatives from the state equations, which preserves 4th-order accuracy.

Inner loops run on plain Python floats: the systems are tiny (at most 8
scalar equations) and per-step numpy dispatch would dominate the cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np

from .errors import MissingControlsError, NonFiniteError
from .model import ModelParams, RunningCost

__all__ = [
    "TimeGrid",
    "Trajectory",
    "rk4_step",
    "integrate_coupled",
    "integrate_state_forward",
    "integrate_adjoint_backward",
    "interval_boundaries",
    "expand_piecewise_schedule",
]


@dataclass(frozen=True)
class TimeGrid:
    """Uniform grid on [0, horizon] with n_steps intervals (n_steps+1 nodes)."""

    horizon: float
    n_steps: int

    def __post_init__(self):
        if not self.horizon > 0.0:
            raise ValueError("horizon must be positive")
        if self.n_steps < 1:
            raise ValueError("n_steps must be >= 1")

    @property
    def h(self) -> float:
        return self.horizon / self.n_steps

    def nodes(self) -> np.ndarray:
        return np.arange(self.n_steps + 1) * self.h


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class Trajectory:
    """Time-gridded samples of one integration run.

    State samples (s, i, r, d) and cumulative costs (z total, z_control
    the control-effort part) are always present.  Control samples are
    present except on hand-built trajectories; costate samples (psi1,
    psi2) are absent on state-only runs.  Arrays are read-only.
    """

    t: np.ndarray
    s: np.ndarray
    i: np.ndarray
    r: np.ndarray
    d: np.ndarray
    z: np.ndarray
    z_control: np.ndarray
    u1: np.ndarray | None = None
    u2: np.ndarray | None = None
    psi1: np.ndarray | None = None
    psi2: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.t)
        for name in ("s", "i", "r", "d", "z", "z_control", "u1", "u2", "psi1", "psi2"):
            arr = getattr(self, name)
            if arr is not None and len(arr) != n:
                raise ValueError(f"field {name} has {len(arr)} samples, expected {n}")
        for name in ("t", "s", "i", "r", "d", "z", "z_control", "u1", "u2", "psi1", "psi2"):
            arr = getattr(self, name)
            if arr is not None:
                _freeze(arr)

    @property
    def n_steps(self) -> int:
        return len(self.t) - 1

    @property
    def has_controls(self) -> bool:
        return self.u1 is not None and self.u2 is not None

    @property
    def has_adjoint(self) -> bool:
        return self.psi1 is not None and self.psi2 is not None

    def with_adjoint(self, psi1: np.ndarray, psi2: np.ndarray) -> "Trajectory":
        return replace(self, psi1=np.array(psi1, dtype=float), psi2=np.array(psi2, dtype=float))


def interval_boundaries(n_steps: int, n_intervals: int) -> np.ndarray:
    """Node indices splitting an n_steps grid into n_intervals even pieces.

    Boundary j sits at floor(j * n_steps / n_intervals); the first is 0 and
    the last is n_steps.  Interval j owns the fine steps [b_j, b_{j+1}).
    """
    if not 1 <= n_intervals <= n_steps:
        raise ValueError("need 1 <= n_intervals <= n_steps")
    return (np.arange(n_intervals + 1) * n_steps) // n_intervals


def expand_piecewise_schedule(levels: Sequence[float], boundaries: np.ndarray, n_steps: int) -> np.ndarray:
    """Per-node schedule (n_steps + 1 values) from per-interval constants.

    Node k takes the owning interval's level; the final node repeats the
    last interval's value.
    """
    levels_arr = np.asarray(levels, dtype=float)
    if len(levels_arr) != len(boundaries) - 1:
        raise ValueError("one level per interval required")
    out = np.empty(n_steps + 1)
    for j in range(len(levels_arr)):
        out[boundaries[j]:boundaries[j + 1]] = levels_arr[j]
    out[n_steps] = levels_arr[-1]
    return out


def rk4_step(f: Callable, t: float, y, h: float):
    """One classical RK4 update y + (h/6)(k1 + 2k2 + 2k3 + k4).

    Works on floats and numpy arrays alike; local error O(h^5) for smooth f.
    Raises NonFiniteError if the update produces NaN or infinity.
    """
    if not h > 0.0:
        raise ValueError("step size must be positive")
    k1 = f(t, y)
    k2 = f(t + h / 2.0, y + (h / 2.0) * k1)
    k3 = f(t + h / 2.0, y + (h / 2.0) * k2)
    k4 = f(t + h, y + h * k3)
    y_new = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    if not np.all(np.isfinite(y_new)):
        raise NonFiniteError(t + h)
    return y_new


def _coupled_rhs(s, i, p1, p2, beta, alpha, a_i, w1, w2, u1_max, u2_max):
    """Stage derivatives of the coupled system, clamp law applied in place.

    Returns (ds, di, dr, dd, dp1, dp2, dz, dzc, u1, u2); r, d, z and the
    cost channels never feed back, so they are outputs only.
    """
    u1 = -p1 * s / (2.0 * w1)
    if u1 <= 0.0:
        u1 = 0.0
    elif u1 >= u1_max:
        u1 = u1_max
    u2 = -p2 * i / (2.0 * w2)
    if u2 <= 0.0:
        u2 = 0.0
    elif u2 >= u2_max:
        u2 = u2_max

    infection = beta * s * i
    vaccination = u1 * s
    treatment = u2 * i
    deaths = alpha * i
    beta_i = beta * i
    beta_s = beta * s

    dzc = w1 * u1 * u1 + w2 * u2 * u2
    return (
        -infection - vaccination,
        infection - treatment - deaths,
        vaccination + treatment,
        deaths,
        p1 * beta_i + p1 * u1 - p2 * beta_i,
        a_i + p1 * beta_s - p2 * beta_s + p2 * u2 + p2 * alpha,
        dzc + a_i * i,
        dzc,
        u1,
        u2,
    )


def _check_finite(values, t: float):
    for v in values:
        if not math.isfinite(v):
            raise NonFiniteError(t)


def integrate_coupled(
    psi0: tuple[float, float], cost: RunningCost, p: ModelParams
) -> Trajectory:
    """Forward RK4 of state + costates from x(0) = (s0, i0, r0, 0), psi(0) = psi0.

    Controls are recomputed from the clamp law at every RK4 stage (not
    frozen per step), so the stored trajectory satisfies the pointwise
    optimality structure by construction.  Raises NonFiniteError if the
    run diverges, which the shooting solver treats as a rejected guess.
    """
    n = p.n_steps
    h = p.horizon / n
    h2 = h / 2.0
    h6 = h / 6.0
    beta, alpha = p.beta, p.alpha
    a_i, w1, w2 = cost.a_i, cost.w1, cost.w2
    u1m, u2m = p.u1_max, p.u2_max

    ts = np.arange(n + 1) * h
    out = {name: np.empty(n + 1) for name in ("s", "i", "r", "d", "p1", "p2", "u1", "u2", "z", "zc")}

    s, i, r, d = p.s0, p.i0, p.r0, 0.0
    p1, p2 = float(psi0[0]), float(psi0[1])
    z = 0.0
    zc = 0.0

    for k in range(n + 1):
        k1 = _coupled_rhs(s, i, p1, p2, beta, alpha, a_i, w1, w2, u1m, u2m)
        out["s"][k] = s
        out["i"][k] = i
        out["r"][k] = r
        out["d"][k] = d
        out["p1"][k] = p1
        out["p2"][k] = p2
        out["u1"][k] = k1[8]
        out["u2"][k] = k1[9]
        out["z"][k] = z
        out["zc"][k] = zc
        if k == n:
            break

        k2 = _coupled_rhs(
            s + h2 * k1[0], i + h2 * k1[1], p1 + h2 * k1[4], p2 + h2 * k1[5],
            beta, alpha, a_i, w1, w2, u1m, u2m,
        )
        k3 = _coupled_rhs(
            s + h2 * k2[0], i + h2 * k2[1], p1 + h2 * k2[4], p2 + h2 * k2[5],
            beta, alpha, a_i, w1, w2, u1m, u2m,
        )
        k4 = _coupled_rhs(
            s + h * k3[0], i + h * k3[1], p1 + h * k3[4], p2 + h * k3[5],
            beta, alpha, a_i, w1, w2, u1m, u2m,
        )
        s = s + h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        i = i + h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        r = r + h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        d = d + h6 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        p1 = p1 + h6 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        p2 = p2 + h6 * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        z = z + h6 * (k1[6] + 2.0 * k2[6] + 2.0 * k3[6] + k4[6])
        zc = zc + h6 * (k1[7] + 2.0 * k2[7] + 2.0 * k3[7] + k4[7])
        _check_finite((s, i, p1, p2, z), (k + 1) * h)

    return Trajectory(
        t=ts,
        s=out["s"], i=out["i"], r=out["r"], d=out["d"],
        z=out["z"], z_control=out["zc"],
        u1=out["u1"], u2=out["u2"],
        psi1=out["p1"], psi2=out["p2"],
    )


def _state_rhs_scalar(s, i, u1, u2, beta, alpha, a_i, w1, w2):
    """Stage derivatives of the state + cost channels under fixed controls."""
    infection = beta * s * i
    vaccination = u1 * s
    treatment = u2 * i
    deaths = alpha * i
    dzc = w1 * u1 * u1 + w2 * u2 * u2
    return (
        -infection - vaccination,
        infection - treatment - deaths,
        vaccination + treatment,
        deaths,
        dzc + a_i * i,
        dzc,
    )


def integrate_state_forward(
    u1_schedule: Sequence[float],
    u2_schedule: Sequence[float],
    cost: RunningCost,
    p: ModelParams,
) -> Trajectory:
    """Forward RK4 of the state under a per-node control schedule.

    Controls are piecewise constant: all four stages of the step from
    t_k to t_{k+1} use the node-k value.  The final node's control is
    recorded but never drives a step.  Schedules must carry n_steps + 1
    values; admissibility is the caller's contract (gradient checks
    deliberately probe just outside the box).
    """
    n = p.n_steps
    u1_arr = np.asarray(u1_schedule, dtype=float)
    u2_arr = np.asarray(u2_schedule, dtype=float)
    if u1_arr.shape != (n + 1,) or u2_arr.shape != (n + 1,):
        raise ValueError(f"schedule must have n_steps + 1 = {n + 1} samples per control")

    h = p.horizon / n
    h2 = h / 2.0
    h6 = h / 6.0
    beta, alpha = p.beta, p.alpha
    a_i, w1, w2 = cost.a_i, cost.w1, cost.w2
    u1_list = u1_arr.tolist()
    u2_list = u2_arr.tolist()

    ts = np.arange(n + 1) * h
    ss = np.empty(n + 1)
    ii = np.empty(n + 1)
    rr = np.empty(n + 1)
    dd = np.empty(n + 1)
    zz = np.empty(n + 1)
    zzc = np.empty(n + 1)

    s, i, r, d = p.s0, p.i0, p.r0, 0.0
    z = 0.0
    zc = 0.0
    for k in range(n + 1):
        ss[k] = s
        ii[k] = i
        rr[k] = r
        dd[k] = d
        zz[k] = z
        zzc[k] = zc
        if k == n:
            break
        u1 = u1_list[k]
        u2 = u2_list[k]
        k1 = _state_rhs_scalar(s, i, u1, u2, beta, alpha, a_i, w1, w2)
        k2 = _state_rhs_scalar(s + h2 * k1[0], i + h2 * k1[1], u1, u2, beta, alpha, a_i, w1, w2)
        k3 = _state_rhs_scalar(s + h2 * k2[0], i + h2 * k2[1], u1, u2, beta, alpha, a_i, w1, w2)
        k4 = _state_rhs_scalar(s + h * k3[0], i + h * k3[1], u1, u2, beta, alpha, a_i, w1, w2)
        s = s + h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        i = i + h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        r = r + h6 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2])
        d = d + h6 * (k1[3] + 2.0 * k2[3] + 2.0 * k3[3] + k4[3])
        z = z + h6 * (k1[4] + 2.0 * k2[4] + 2.0 * k3[4] + k4[4])
        zc = zc + h6 * (k1[5] + 2.0 * k2[5] + 2.0 * k3[5] + k4[5])
        _check_finite((s, i, z), (k + 1) * h)

    return Trajectory(
        t=ts, s=ss, i=ii, r=rr, d=dd, z=zz, z_control=zzc,
        u1=u1_arr.copy(), u2=u2_arr.copy(),
    )


def _adjoint_rhs_scalar(p1, p2, s, i, u1, u2, beta, alpha, a_i):
    beta_i = beta * i
    beta_s = beta * s
    return (
        p1 * beta_i + p1 * u1 - p2 * beta_i,
        a_i + p1 * beta_s - p2 * beta_s + p2 * u2 + p2 * alpha,
    )


def integrate_adjoint_backward(
    state_traj: Trajectory, cost: RunningCost, p: ModelParams
) -> tuple[np.ndarray, np.ndarray]:
    """Backward RK4 of the costates from psi(T) = (0, 0) along a stored state.

    Each backward step over [t_{k-1}, t_k] uses the interval's constant
    control (the node k-1 sample, matching integrate_state_forward).  The
    half-step state comes from the cubic Hermite midpoint

        x_mid = (x_l + x_r)/2 + (h/8) (f_l - f_r)

    with derivatives f from the state equations under that same control,
    so the pass stays 4th-order accurate.

    Returns (psi1, psi2) node arrays.
    """
    if not state_traj.has_controls:
        raise MissingControlsError("adjoint pass needs the trajectory's control samples")
    n = state_traj.n_steps
    if n != p.n_steps:
        raise ValueError(f"trajectory has {n} steps, params expect {p.n_steps}")

    h = p.horizon / n
    h2 = h / 2.0
    h6 = h / 6.0
    h8 = h / 8.0
    beta, alpha = p.beta, p.alpha
    a_i = cost.a_i

    s_list = state_traj.s.tolist()
    i_list = state_traj.i.tolist()
    u1_list = state_traj.u1.tolist()
    u2_list = state_traj.u2.tolist()

    psi1 = np.empty(n + 1)
    psi2 = np.empty(n + 1)
    p1 = 0.0
    p2 = 0.0
    psi1[n] = p1
    psi2[n] = p2

    for k in range(n, 0, -1):
        u1 = u1_list[k - 1]
        u2 = u2_list[k - 1]
        s_l, i_l = s_list[k - 1], i_list[k - 1]
        s_r, i_r = s_list[k], i_list[k]

        # Endpoint derivatives with the interval's control (the state's
        # right-limit derivative at t_k belongs to the next interval).
        fs_l = -beta * s_l * i_l - u1 * s_l
        fi_l = beta * s_l * i_l - u2 * i_l - alpha * i_l
        fs_r = -beta * s_r * i_r - u1 * s_r
        fi_r = beta * s_r * i_r - u2 * i_r - alpha * i_r
        s_mid = 0.5 * (s_l + s_r) + h8 * (fs_l - fs_r)
        i_mid = 0.5 * (i_l + i_r) + h8 * (fi_l - fi_r)

        k1 = _adjoint_rhs_scalar(p1, p2, s_r, i_r, u1, u2, beta, alpha, a_i)
        k2 = _adjoint_rhs_scalar(p1 - h2 * k1[0], p2 - h2 * k1[1], s_mid, i_mid, u1, u2, beta, alpha, a_i)
        k3 = _adjoint_rhs_scalar(p1 - h2 * k2[0], p2 - h2 * k2[1], s_mid, i_mid, u1, u2, beta, alpha, a_i)
        k4 = _adjoint_rhs_scalar(p1 - h * k3[0], p2 - h * k3[1], s_l, i_l, u1, u2, beta, alpha, a_i)
        p1 = p1 - h6 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0])
        p2 = p2 - h6 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1])
        _check_finite((p1, p2), (k - 1) * h)
        psi1[k - 1] = p1
        psi2[k - 1] = p2

    return psi1, psi2
