"""Dense 3x3 real linear algebra: eigenvalues, symmetrization, matrix
exponential, and singular values.

Everything here is closed-form or small fixed iteration, chosen for branch
stability at size 3: general eigenvalues come from the characteristic cubic
(trigonometric branch when all roots are real) followed by one Newton polish
per root, symmetric eigenvalues from the analytic symmetric-3x3 method with a
Jacobi fallback near degenerate spectra, and the exponential from
scaling-and-squaring on a degree-6 diagonal rational approximant.
"""
from __future__ import annotations

import numpy as np

__all__ = [
    "as_matrix3",
    "eig_general",
    "eig_symmetric",
    "symmetrize_scaled",
    "expm",
    "singular_values",
]


def as_matrix3(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float)
    if arr.shape != (3, 3):
        raise ValueError(f"matrix must have shape (3, 3), got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix entries must be finite")
    return arr


def _det3(m: np.ndarray) -> float:
    """Cofactor-expansion determinant; exact branch behavior, no LU warnings."""
    return float(
        m[0, 0] * (m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1])
        - m[0, 1] * (m[1, 0] * m[2, 2] - m[1, 2] * m[2, 0])
        + m[0, 2] * (m[1, 0] * m[2, 1] - m[1, 1] * m[2, 0]))


def _sort_complex_desc(vals: np.ndarray) -> np.ndarray:
    """Descending real part, ties by descending imaginary part, then input order."""
    order = sorted(range(len(vals)),
                   key=lambda i: (-vals[i].real, -vals[i].imag, i))
    return vals[order]


def eig_general(m) -> np.ndarray:
    """All three eigenvalues of a real 3x3 matrix as a sorted complex triple.

    Roots of the characteristic cubic; complex values occur in conjugate
    pairs.  Accuracy: |charpoly(lambda)| < 1e-10 * max(1, ||m||^3).
    """
    m = as_matrix3(m)
    scale = np.abs(m).max()
    if scale == 0.0:
        return np.zeros(3, dtype=complex)
    a = m / scale

    # charpoly: lambda^3 - c2 lambda^2 + c1 lambda - c0
    c2 = a[0, 0] + a[1, 1] + a[2, 2]
    c1 = (a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
          + a[0, 0] * a[2, 2] - a[0, 2] * a[2, 0]
          + a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
    c0 = _det3(a)

    # depressed cubic mu^3 + p mu + q with lambda = mu + c2/3
    shift = c2 / 3.0
    p = c1 - c2 * c2 / 3.0
    q = -c0 + c1 * shift - 2.0 * c2**3 / 27.0
    disc = -4.0 * p**3 - 27.0 * q * q

    if disc >= 0.0:
        # three real roots: trigonometric branch
        den = p * 2.0 * np.sqrt(-p / 3.0) if p < 0.0 else 0.0
        if den == 0.0:          # p ~ 0 (possibly by underflow): near-triple root
            mu = np.zeros(3) if q == 0.0 else np.full(3, -np.cbrt(q))
        else:
            rho = 2.0 * np.sqrt(-p / 3.0)
            arg = np.clip(3.0 * q / den, -1.0, 1.0)
            phi = np.arccos(arg) / 3.0
            mu = rho * np.cos(phi - 2.0 * np.pi * np.arange(3) / 3.0)
        seeds = mu + shift
        # the trig formula resolves a close pair only to sqrt(eps); keep the
        # best-isolated root and recover the other two by deflation
        gaps = [abs(seeds[i] - seeds[(i + 1) % 3])
                + abs(seeds[i] - seeds[(i + 2) % 3]) for i in range(3)]
        lone = float(seeds[int(np.argmax(gaps))])
    else:
        # one real root via Cardano, cancellation-safe branch
        s = np.sqrt(q * q / 4.0 + p**3 / 27.0)
        u = -q / 2.0 - s if q >= 0.0 else -q / 2.0 + s
        u = np.cbrt(u)
        lone = (u - p / (3.0 * u) if u != 0.0 else 0.0) + shift

    # Newton-polish the isolated root (well-conditioned by construction)
    for _ in range(2):
        f = ((lone - c2) * lone + c1) * lone - c0
        df = (3.0 * lone - 2.0 * c2) * lone + c1
        if df == 0.0:
            break
        step = f / df
        if not abs(step) < 0.1 * max(1.0, abs(lone)):
            break
        lone -= step

    # synthetic division by (lambda - lone): the quadratic coefficients carry
    # the pair's sum and product at coefficient accuracy, so trace and
    # determinant identities survive even for a nearly defective pair
    b = lone - c2
    c = c1 + lone * b
    quad_disc = b * b - 4.0 * c
    if quad_disc >= 0.0:
        rt = np.sqrt(quad_disc)
        x1 = -0.5 * (b + rt) if b >= 0.0 else -0.5 * (b - rt)
        x2 = c / x1 if x1 != 0.0 else -0.5 * b
        roots = np.array([lone, x1, x2], dtype=complex)
    else:
        half, im = -b / 2.0, np.sqrt(-quad_disc) / 2.0
        roots = np.array([lone, complex(half, im), complex(half, -im)])

    return _sort_complex_desc(roots * scale)


def _jacobi_eigvals(a: np.ndarray, sweeps: int = 12) -> np.ndarray:
    """Cyclic Jacobi rotations on a symmetric 3x3; returns unsorted eigenvalues."""
    a = a.copy()
    for _ in range(sweeps):
        off = abs(a[0, 1]) + abs(a[0, 2]) + abs(a[1, 2])
        if off < 1e-15 * max(1.0, abs(a).max()):
            break
        for (ip, iq) in ((0, 1), (0, 2), (1, 2)):
            if a[ip, iq] == 0.0:
                continue
            theta = 0.5 * (a[iq, iq] - a[ip, ip]) / a[ip, iq]
            if theta == 0.0:
                t = 1.0
            elif abs(theta) > 1e150:      # theta^2 would overflow
                t = 0.5 / theta
            else:
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            rot = np.eye(3)
            rot[ip, ip] = rot[iq, iq] = c
            rot[ip, iq] = s
            rot[iq, ip] = -s
            a = rot.T @ a @ rot
    return np.diag(a).copy()


def eig_symmetric(m) -> np.ndarray:
    """Eigenvalues of a symmetric 3x3 matrix, three reals sorted descending.

    Raises ValueError if the input is asymmetric beyond 1e-12 relative.
    """
    m = as_matrix3(m)
    scale = max(np.abs(m).max(), 1.0)
    if np.abs(m - m.T).max() > 1e-12 * scale:
        raise ValueError("matrix is not symmetric within 1e-12 relative")
    m = 0.5 * (m + m.T)

    q = np.trace(m) / 3.0
    b = m - q * np.eye(3)
    j2 = np.sum(b * b) / 6.0          # = tr(B^2)/6 >= 0
    if j2 <= 0.0:
        return np.full(3, q)
    pmag = np.sqrt(j2)
    r = _det3(b / pmag) / 2.0
    # |r| -> 1 marks eigenvalue coalescence, where the acos branch loses
    # half the digits; hand those off to Jacobi rotations well before that
    if abs(abs(r) - 1.0) < 1e-8 or j2 < 1e-12 * scale * scale:
        vals = _jacobi_eigvals(m)
    else:
        r = np.clip(r, -1.0, 1.0)
        phi = np.arccos(r) / 3.0
        vals = q + 2.0 * pmag * np.cos(phi - 2.0 * np.pi * np.arange(3) / 3.0)
    return np.sort(vals)[::-1]


def symmetrize_scaled(m, t: float) -> np.ndarray:
    """(m + m^T) / (2 t); exact symmetry of the result is guaranteed."""
    m = as_matrix3(m)
    if not t > 0.0:
        raise ValueError(f"t must be positive, got {t}")
    s = (m + m.T) / (2.0 * t)
    return 0.5 * (s + s.T)


def _pade_coeffs(degree: int) -> np.ndarray:
    c = [1.0]
    for k in range(degree):
        c.append(c[-1] * (degree - k) / ((2 * degree - k) * (k + 1)))
    return np.array(c)


# Degree-13 diagonal rational approximant: c[k] on A^k in the numerator; the
# denominator uses the same coefficients with alternating sign.  A lower
# degree needs more squarings at this norm range, and the squaring cascade
# alone breaks the 1e-10 inverse-identity guarantee in double precision.
_PADE = _pade_coeffs(13)
_THETA = 5.37


def expm(m) -> np.ndarray:
    """Matrix exponential via scaling-and-squaring on a degree-13 diagonal
    rational approximant.

    Accurate to ~1e-12 relative for ||m|| <= 10, and exp(m) exp(-m) stays
    within 1e-10 of the identity on that range.
    """
    m = as_matrix3(m)
    norm = np.abs(m).sum(axis=1).max()
    squarings = max(0, int(np.ceil(np.log2(norm / _THETA))) if norm > _THETA else 0)
    a = m / (2.0 ** squarings)

    powers = [np.eye(3)]
    for _ in range(len(_PADE) - 1):
        powers.append(powers[-1] @ a)
    num = sum(c * pw for c, pw in zip(_PADE, powers))
    den = sum(c * pw * (-1.0) ** k for k, (c, pw) in enumerate(zip(_PADE, powers)))
    result = np.linalg.solve(den, num)
    for _ in range(squarings):
        result = result @ result
    return result


def singular_values(m) -> np.ndarray:
    """Singular values (non-negative, descending): sqrt of eigenvalues of m^T m.

    The smallest value is polished through the determinant (sigma1 sigma2
    sigma3 = |det m|), which the squared Gram route loses accuracy on for
    ill-conditioned inputs.
    """
    m = as_matrix3(m)
    scale = np.abs(m).max()
    if scale == 0.0:
        return np.zeros(3)
    a = m / scale
    gram = a.T @ a
    vals = eig_symmetric(0.5 * (gram + gram.T))
    sv = np.sqrt(np.clip(vals, 0.0, None))
    if sv[0] > 0.0 and sv[1] > 0.0:
        polished = abs(_det3(a)) / (sv[0] * sv[1])
        if polished <= sv[1]:
            sv[2] = polished
    return scale * sv
