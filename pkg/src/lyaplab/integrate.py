"""Adaptive integration of the flows, with two augmented variants that carry
linearized information alongside the state.

The stepper is the embedded Runge-Kutta 5(4) pair with its free quartic
interpolant for dense output (scipy's RK45).  Both augmented systems advance
their extra components inside the same 12-dimensional ODE as the state, so
every component shares one error estimate; integrating them separately
against an interpolated orbit would mix inconsistent error budgets and is
deliberately not offered.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import odeint, solve_ivp

from .systems import System, as_state, eval_field

__all__ = [
    "RTOL_DEFAULT",
    "ATOL_DEFAULT",
    "IntegrationError",
    "Trajectory",
    "IntegratedJacobian",
    "Propagator",
    "integrate",
    "integrate_augmented",
    "integrate_propagator",
    "relax",
    "write_trajectory_csv",
]

# The reported quantities carry 4 decimals; these defaults leave two orders
# of headroom beyond that.
RTOL_DEFAULT = 1e-10
ATOL_DEFAULT = 1e-12

_INTERP_MARKER = "rk45-quartic"


class IntegrationError(RuntimeError):
    """Step-size underflow or non-finite blow-up; carries the last good state
    and whatever partial trajectory was completed."""

    def __init__(self, message: str, t_last: float, state_last: np.ndarray,
                 partial: "Trajectory | None" = None):
        super().__init__(f"{message} (last good state at t={t_last:.6g}: {state_last})")
        self.t_last = t_last
        self.state_last = state_last
        self.partial = partial


@dataclass(frozen=True)
class Trajectory:
    """Time-stamped solution samples at the accepted steps, plus the dense
    interpolant between them."""

    t: np.ndarray               # (n,), strictly increasing
    states: np.ndarray          # (n, 3)
    dense: object               # scipy OdeSolution
    rtol: float
    atol: float
    interpolant: str = _INTERP_MARKER

    def at(self, t) -> np.ndarray:
        """Interpolated state(s); accepts a scalar or an array of times."""
        out = self.dense(t)
        return out if np.ndim(t) == 0 else out.T

    @property
    def t0(self) -> float:
        return float(self.t[0])

    @property
    def t1(self) -> float:
        return float(self.t[-1])

    @property
    def end(self) -> np.ndarray:
        return self.states[-1]


@dataclass(frozen=True)
class IntegratedJacobian:
    """The matrix int_0^t J(r0(s)) ds accumulated along a reference orbit."""

    matrix: np.ndarray
    elapsed: float

    def __post_init__(self):
        if not self.elapsed > 0.0:
            raise ValueError(f"elapsed must be positive, got {self.elapsed}")


@dataclass(frozen=True)
class Propagator:
    """Fundamental matrix of the variational equation dM/dt = J(r0(t)) M,
    M(0) = I, i.e. the time-ordered map of initial perturbations."""

    matrix: np.ndarray
    elapsed: float

    def __post_init__(self):
        if not self.elapsed > 0.0:
            raise ValueError(f"elapsed must be positive, got {self.elapsed}")


def _check_tol(rtol: float, atol: float) -> None:
    if not (rtol > 0.0 and atol > 0.0):
        raise ValueError(f"tolerances must be positive, got rtol={rtol}, atol={atol}")


def _solve(rhs, t0: float, t1: float, y0: np.ndarray, rtol: float, atol: float,
           dense: bool):
    sol = solve_ivp(rhs, (t0, t1), y0, method="RK45", rtol=rtol, atol=atol,
                    dense_output=dense)
    if not sol.success:
        partial = None
        if dense and sol.t.size > 1:
            partial = Trajectory(sol.t, sol.y[:3].T,
                                 sol.sol if y0.size == 3 else _Project3(sol.sol),
                                 rtol, atol)
        raise IntegrationError(sol.message, float(sol.t[-1]),
                               sol.y[:3, -1].copy(), partial)
    return sol


def integrate(system: System, s0, t0: float, t1: float,
              rtol: float = RTOL_DEFAULT, atol: float = ATOL_DEFAULT) -> Trajectory:
    """Integrate the flow from s0 over [t0, t1] with dense output."""
    s0 = as_state(s0)
    _check_tol(rtol, atol)
    if not t1 > t0:
        raise ValueError(f"requires t1 > t0, got [{t0}, {t1}]")

    def rhs(t, s):
        return system.field(s, t)

    sol = _solve(rhs, t0, t1, s0, rtol, atol, dense=True)
    return Trajectory(sol.t, sol.y.T, sol.sol, rtol, atol)


def integrate_augmented(system: System, s0, t1: float,
                        rtol: float = RTOL_DEFAULT, atol: float = ATOL_DEFAULT,
                        ) -> tuple[Trajectory, IntegratedJacobian]:
    """Advance the state together with the nine entries of int J(r0(s)) ds
    as one 12-component system from t=0 to t1."""
    traj, sol = _augmented_dense(system, s0, t1, rtol, atol)
    ij = sol.y[3:, -1].reshape(3, 3)
    return traj, IntegratedJacobian(ij, float(sol.t[-1]))


def _augmented_dense(system: System, s0, t1: float, rtol: float, atol: float):
    """Shared augmented run; returns (Trajectory, full scipy solution)."""
    s0 = as_state(s0)
    _check_tol(rtol, atol)
    if not t1 > 0.0:
        raise ValueError(f"requires t1 > 0, got {t1}")

    def rhs(t, w):
        s = w[:3]
        return np.concatenate([system.field(s, t), system.jacobian(s).ravel()])

    y0 = np.concatenate([s0, np.zeros(9)])
    sol = _solve(rhs, 0.0, t1, y0, rtol, atol, dense=True)
    traj = Trajectory(sol.t, sol.y[:3].T, _Project3(sol.sol), rtol, atol)
    return traj, sol


def integrate_propagator(system: System, s0, t1: float,
                         rtol: float = RTOL_DEFAULT, atol: float = ATOL_DEFAULT,
                         ) -> Propagator:
    """Fundamental matrix over [0, t1], advanced with the state as one
    12-component system (time-ordering is exact, no exponential shortcut)."""
    s0 = as_state(s0)
    _check_tol(rtol, atol)
    if not t1 > 0.0:
        raise ValueError(f"requires t1 > 0, got {t1}")

    def rhs(t, w):
        s = w[:3]
        m = w[3:].reshape(3, 3)
        return np.concatenate([system.field(s, t), (system.jacobian(s) @ m).ravel()])

    y0 = np.concatenate([s0, np.eye(3).ravel()])
    sol = _solve(rhs, 0.0, t1, y0, rtol, atol, dense=False)
    return Propagator(sol.y[3:, -1].reshape(3, 3), float(sol.t[-1]))


class _Project3:
    """Dense-output view restricted to the first three components."""

    def __init__(self, sol):
        self._sol = sol

    def __call__(self, t):
        return self._sol(t)[:3]


def relax(system: System, s0, transient: float,
          rtol: float = 1e-9, atol: float = 1e-11) -> np.ndarray:
    """Run a transient and return the relaxed end state.

    Relaxation only needs to land on the attractor, so it uses looser
    tolerances than the measurement defaults and a multistep integrator
    (lsoda), which covers the very long transients needed near the
    cycle-splitting parameter at a fraction of the Runge-Kutta cost.  All
    measurement integration stays on the Runge-Kutta 5(4) path.
    """
    if transient <= 0.0:
        return as_state(s0)
    s0 = as_state(s0)
    _check_tol(rtol, atol)

    def rhs(t, s):
        return system.field(s, t)

    out = odeint(rhs, s0, [0.0, float(transient)], rtol=rtol, atol=atol,
                 tfirst=True, mxstep=10**9)
    end = out[-1]
    if not np.all(np.isfinite(end)):
        raise IntegrationError("relaxation blew up", float(transient), end)
    return end


def write_trajectory_csv(traj: Trajectory, stream) -> None:
    """CSV rows `t,x,y,z`, one per accepted step, 17 significant digits."""
    stream.write("t,x,y,z\n")
    for t, (x, y, z) in zip(traj.t, traj.states):
        stream.write(f"{t:.17g},{x:.17g},{y:.17g},{z:.17g}\n")
