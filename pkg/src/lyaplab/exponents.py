"""The two competing exponent spectra and the growth quantities they derive from.

Two routes are deliberately kept side by side and never conflated:

* the eigenvalue route: real parts of the eigenvalues of the integrated
  Jacobian, divided by elapsed time (``eigenvalue_exponents``), and
* the symmetrized route: eigenvalues of (int J + int J^T)/(2t)
  (``symmetrized_exponents``).

Both equal the same trace average, so their sums always agree, but the
spectra themselves differ whenever the integrated Jacobian is non-normal.
A third, fully time-ordered route through the propagator's singular values
(``svd_exponents``) is provided for comparison; it matches the other two only
in the normal/commuting case.
"""
from __future__ import annotations

from dataclasses import dataclass
import json

import numpy as np

from . import mat3
from .cycles import LimitCycle
from .integrate import (ATOL_DEFAULT, RTOL_DEFAULT, IntegratedJacobian,
                        Propagator, _augmented_dense, integrate_augmented)
from .systems import System

__all__ = [
    "ExponentSpectrum",
    "PerturbationDirection",
    "GrowthEigenstructure",
    "MaximalExponentEstimate",
    "linear_exponents",
    "eigenvalue_exponents",
    "symmetrized_exponents",
    "svd_exponents",
    "periodic_exponents",
    "directional_growth",
    "growth_eigenstructure",
    "maximal_exponent_estimate",
]


@dataclass(frozen=True)
class ExponentSpectrum:
    """Both spectra for one reference orbit, each sorted descending.

    ``le_j`` is the eigenvalue route, ``le_o`` the symmetrized route; the two
    names are also the keys of the JSON export schema.
    """

    le_j: tuple[float, float, float]
    le_o: tuple[float, float, float]
    horizon: float
    method: str                  # "one-period" | "long-time"

    def __post_init__(self):
        sj, so = sum(self.le_j), sum(self.le_o)
        if abs(sj - so) > 1e-8 * max(1.0, abs(sj)):
            raise ValueError(
                f"spectra disagree on the trace average: {sj} vs {so}")

    def to_json(self) -> str:
        return json.dumps({
            "le_j": list(self.le_j),
            "le_o": list(self.le_o),
            "horizon": self.horizon,
            "method": self.method,
        })


@dataclass(frozen=True)
class PerturbationDirection:
    """An initial-offset direction given by its magnitude and direction cosines."""

    magnitude: float
    cosines: tuple[float, float, float]

    def __post_init__(self):
        if not self.magnitude > 0.0:
            raise ValueError("magnitude must be positive")
        norm2 = sum(c * c for c in self.cosines)
        if abs(norm2 - 1.0) > 1e-12:
            raise ValueError(f"direction cosines must be unit length, |u|^2={norm2}")

    @classmethod
    def from_vector(cls, v) -> "PerturbationDirection":
        v = np.asarray(v, dtype=float)
        mag = float(np.linalg.norm(v))
        if mag == 0.0:
            raise ValueError("zero vector has no direction")
        return cls(mag, tuple(v / mag))


@dataclass(frozen=True)
class GrowthEigenstructure:
    """Eigenvalues of the integrated Jacobian and their largest real part."""

    eigenvalues: np.ndarray      # complex, sorted by descending real part
    j_star: float
    horizon: float


@dataclass(frozen=True)
class MaximalExponentEstimate:
    """Largest-exponent estimate with its convergence trace over the horizon
    ladder; the estimate is the last trace value (no extrapolation)."""

    estimate: float
    horizons: np.ndarray
    values: np.ndarray


def _desc(vals) -> tuple[float, float, float]:
    out = np.sort(np.asarray(vals, dtype=float))[::-1]
    return (float(out[0]), float(out[1]), float(out[2]))


def linear_exponents(a) -> tuple[float, float, float]:
    """Exponents of the constant-coefficient linear system: the real parts of
    the eigenvalues of A, sorted descending."""
    return _desc(mat3.eig_general(a).real)


def eigenvalue_exponents(ij: IntegratedJacobian) -> tuple[float, float, float]:
    """Eigenvalue route: Re(eig(int J ds)) / elapsed, sorted descending."""
    return _desc(mat3.eig_general(ij.matrix).real / ij.elapsed)


def symmetrized_exponents(ij: IntegratedJacobian) -> tuple[float, float, float]:
    """Symmetrized route: eigenvalues of (int J + int J^T)/(2t), descending."""
    sym = mat3.symmetrize_scaled(ij.matrix, ij.elapsed)
    return _desc(mat3.eig_symmetric(sym))


def svd_exponents(p: Propagator) -> tuple[float, float, float]:
    """Finite-time exponents from the time-ordered propagator:
    ln(singular values)/elapsed, descending.  A singular value that
    underflows to zero is reported as -inf."""
    sv = mat3.singular_values(p.matrix)
    with np.errstate(divide="ignore"):
        return _desc(np.log(sv) / p.elapsed)


def periodic_exponents(system: System, cycle: LimitCycle,
                       rtol: float = RTOL_DEFAULT, atol: float = ATOL_DEFAULT,
                       ) -> ExponentSpectrum:
    """Both spectra of a verified periodic orbit from one exact period.

    For a closed orbit the long-time average of the integrated Jacobian
    equals its one-period average, so a single period from the anchor is the
    whole limit.  The starting phase is immaterial: the loop integral of a
    periodic integrand does not depend on it.
    """
    _, ij = integrate_augmented(system, cycle.anchor, cycle.period,
                                rtol=rtol, atol=atol)
    return ExponentSpectrum(eigenvalue_exponents(ij), symmetrized_exponents(ij),
                            horizon=cycle.period, method="one-period")


def directional_growth(ij: IntegratedJacobian, d: PerturbationDirection) -> float:
    """Linearized growth factor |exp(int J ds) u| along direction u.

    This is the direction-dependent limit of |dr(t)|/|dr0| as the offset
    magnitude goes to zero along fixed direction cosines.
    """
    u = np.asarray(d.cosines, dtype=float)
    return float(np.linalg.norm(mat3.expm(ij.matrix) @ u))


def growth_eigenstructure(ij: IntegratedJacobian) -> GrowthEigenstructure:
    """Eigenvalues of the integrated Jacobian and their max real part J*(t)."""
    vals = mat3.eig_general(ij.matrix)
    return GrowthEigenstructure(vals, float(vals.real.max()), ij.elapsed)


def maximal_exponent_estimate(system: System, s0, horizons,
                              rtol: float = RTOL_DEFAULT, atol: float = ATOL_DEFAULT,
                              ) -> MaximalExponentEstimate:
    """J*(t)/t along an increasing horizon ladder; the largest-exponent
    estimate is the final value and the full trace is returned alongside.

    The caller is responsible for relaxing s0 onto the attractor first (see
    ``integrate.relax``).
    """
    horizons = np.asarray(horizons, dtype=float)
    if horizons.size < 3 or np.any(np.diff(horizons) <= 0.0) or horizons[0] <= 0.0:
        raise ValueError("horizons must be >= 3 increasing positive times")
    _, sol = _augmented_dense(system, s0, float(horizons[-1]), rtol, atol)
    values = np.empty(horizons.size)
    for i, t in enumerate(horizons):
        ij = sol.sol(t)[3:].reshape(3, 3)
        values[i] = mat3.eig_general(ij).real.max() / t
    return MaximalExponentEstimate(float(values[-1]), horizons, values)
