"""The 3-D autonomous flows under study, their Jacobians, and input validation.

Four system families are supported: a constant-coefficient linear system with
an optional additive time forcing, two planar-oscillator-with-axial-dynamics
families ("two-ring" and "cubed-ring"), and the Silnikov third-order scalar
flow written as a first-order system.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "Forcing",
    "LinearSystem",
    "TwoRingTorus",
    "CubedRing",
    "Silnikov",
    "System",
    "as_state",
    "eval_field",
    "eval_jacobian",
]


def as_state(s) -> np.ndarray:
    """Validate and coerce a phase-space point to a float (3,) array."""
    arr = np.asarray(s, dtype=float)
    if arr.shape != (3,):
        raise ValueError(f"state must have shape (3,), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"state must be finite, got {arr}")
    return arr


@dataclass(frozen=True)
class Forcing:
    """Additive forcing f(t) for the linear system, per component:
    f_i(t) = const_i + amp_i * sin(omega_i * t + phase_i).

    The zero forcing is the default.  Forcing never enters Jacobians, so it
    has no effect on any exponent computation.
    """

    const: tuple[float, float, float] = (0.0, 0.0, 0.0)
    amp: tuple[float, float, float] = (0.0, 0.0, 0.0)
    omega: tuple[float, float, float] = (0.0, 0.0, 0.0)
    phase: tuple[float, float, float] = (0.0, 0.0, 0.0)

    def __call__(self, t: float) -> np.ndarray:
        c = np.asarray(self.const, dtype=float)
        a = np.asarray(self.amp, dtype=float)
        if not a.any():
            return c
        w = np.asarray(self.omega, dtype=float)
        p = np.asarray(self.phase, dtype=float)
        return c + a * np.sin(w * t + p)


@dataclass(frozen=True)
class LinearSystem:
    """ds/dt = A s + f(t) with constant A."""

    a: np.ndarray
    forcing: Forcing = field(default_factory=Forcing)

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        if a.shape != (3, 3) or not np.all(np.isfinite(a)):
            raise ValueError("A must be a finite 3x3 matrix")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "a_flat", tuple(a.ravel()))

    def __hash__(self):
        return hash((self.a_flat, self.forcing))

    def __eq__(self, other):
        return (isinstance(other, LinearSystem)
                and self.a_flat == other.a_flat and self.forcing == other.forcing)

    def field(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        return self.a @ s + self.forcing(t)

    def field_batch(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        # (a @ s.T).T applies the same matvec per row, bit-identical to field()
        return (self.a @ s.T).T + self.forcing(t)

    def jacobian(self, s: np.ndarray) -> np.ndarray:
        return self.a.copy()


@dataclass(frozen=True)
class TwoRingTorus:
    """Planar oscillator with two invariant circles (radius 1 and sqrt(1+alpha))
    and decoupled axial dynamics dz/dt = beta^2 z - z^3.  Requires alpha^2 < 1.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not np.isfinite(self.alpha) or not np.isfinite(self.beta):
            raise ValueError("parameters must be finite")
        if self.alpha * self.alpha >= 1.0:
            raise ValueError(f"requires alpha^2 < 1, got alpha={self.alpha}")

    def field(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s
        u = x * x + y * y
        w = (1.0 - u) * (1.0 + self.alpha - u)
        return np.array([y + x * w, -x + y * w,
                         self.beta * self.beta * z - z * z * z])

    def field_batch(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s[:, 0], s[:, 1], s[:, 2]
        u = x * x + y * y
        w = (1.0 - u) * (1.0 + self.alpha - u)
        out = np.empty_like(s)
        out[:, 0] = y + x * w
        out[:, 1] = -x + y * w
        out[:, 2] = self.beta * self.beta * z - z * z * z
        return out

    def jacobian(self, s: np.ndarray) -> np.ndarray:
        x, y, z = s
        u = x * x + y * y
        w = (1.0 - u) * (1.0 + self.alpha - u)
        # dw/du = -(1 + alpha - u) - (1 - u)
        dw = -(1.0 + self.alpha - u) - (1.0 - u)
        return np.array([
            [w + 2.0 * x * x * dw, 1.0 + 2.0 * x * y * dw, 0.0],
            [-1.0 + 2.0 * x * y * dw, w + 2.0 * y * y * dw, 0.0],
            [0.0, 0.0, self.beta * self.beta - 3.0 * z * z],
        ])


@dataclass(frozen=True)
class CubedRing:
    """Planar oscillator with a cubically-flat invariant unit circle and the
    same axial dynamics dz/dt = beta^2 z - z^3.
    """

    beta: float

    def __post_init__(self):
        if not np.isfinite(self.beta):
            raise ValueError("beta must be finite")

    def field(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s
        w = 1.0 - x * x - y * y
        w = w * w * w
        return np.array([y + x * w, -x + y * w,
                         self.beta * self.beta * z - z * z * z])

    def field_batch(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s[:, 0], s[:, 1], s[:, 2]
        w = 1.0 - x * x - y * y
        w = w * w * w
        out = np.empty_like(s)
        out[:, 0] = y + x * w
        out[:, 1] = -x + y * w
        out[:, 2] = self.beta * self.beta * z - z * z * z
        return out

    def jacobian(self, s: np.ndarray) -> np.ndarray:
        x, y, z = s
        u = x * x + y * y
        w = (1.0 - u) ** 3
        dw = -6.0 * (1.0 - u) ** 2
        return np.array([
            [w + x * x * dw, 1.0 + x * y * dw, 0.0],
            [-1.0 + x * y * dw, w + y * y * dw, 0.0],
            [0.0, 0.0, self.beta * self.beta - 3.0 * z * z],
        ])


@dataclass(frozen=True)
class Silnikov:
    """x''' = x^3 - a^2 x - x' - b x'' as a first-order system with a, b > 0.

    The field is odd: F(-s) = -F(s) exactly, so attractors are either
    self-symmetric about the origin or occur in point-reflected pairs.
    The divergence is the constant -b.
    """

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)):
            raise ValueError("parameters must be finite")
        if self.a <= 0.0 or self.b <= 0.0:
            raise ValueError(f"requires a > 0 and b > 0, got a={self.a}, b={self.b}")

    def field(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s
        return np.array([y, z, x * x * x - self.a * self.a * x - y - self.b * z])

    def field_batch(self, s: np.ndarray, t: float = 0.0) -> np.ndarray:
        x, y, z = s[:, 0], s[:, 1], s[:, 2]
        out = np.empty_like(s)
        out[:, 0] = y
        out[:, 1] = z
        out[:, 2] = x * x * x - self.a * self.a * x - y - self.b * z
        return out

    def jacobian(self, s: np.ndarray) -> np.ndarray:
        x = s[0]
        return np.array([
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0],
            [3.0 * x * x - self.a * self.a, -1.0, -self.b],
        ])


System = LinearSystem | TwoRingTorus | CubedRing | Silnikov


def eval_field(system: System, s, t: float = 0.0) -> np.ndarray:
    """Right-hand side F(s) (plus forcing, for the linear system) at state s."""
    return system.field(as_state(s), t)


def eval_jacobian(system: System, s) -> np.ndarray:
    """Exact partial-derivative matrix of the field at state s."""
    return system.jacobian(as_state(s))
