"""The three-parameter family of positive maps on 3x3 matrices.

A map with parameters (alpha, beta, gamma) negates every off-diagonal entry
of its input and replaces the diagonal by a cyclic mixture: output diagonal
(alpha*x11 + beta*x22 + gamma*x33, gamma*x11 + alpha*x22 + beta*x33,
beta*x11 + gamma*x22 + alpha*x33).  Its Choi matrix shares the sparsity
pattern of the state family with -1 in the off-diagonal slots, which makes
the pairing against family members a short closed form and turns each map
into an entanglement witness for the family.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatchError, OutOfRangeError
from .states import family_pattern


class MapParams(NamedTuple):
    """Parameter triple (alpha, beta, gamma), all nonnegative."""

    alpha: float
    beta: float
    gamma: float


class WitnessScan(NamedTuple):
    """Location and value of a witness minimum over the scanned parameter."""

    t: float
    value: float


def apply_map(params: MapParams, x) -> np.ndarray:
    """Apply the map to a 3x3 matrix."""
    alpha, beta, gamma = params
    arr = np.asarray(x, dtype=np.complex128)
    if arr.shape != (3, 3):
        raise DimensionMismatchError(f"expected a 3x3 matrix, got {arr.shape}")
    out = -arr.copy()
    d = np.diagonal(arr)
    out[0, 0] = alpha * d[0] + beta * d[1] + gamma * d[2]
    out[1, 1] = gamma * d[0] + alpha * d[1] + beta * d[2]
    out[2, 2] = beta * d[0] + gamma * d[1] + alpha * d[2]
    return out


def choi_matrix(params: MapParams) -> np.ndarray:
    """9x9 Choi matrix: blocks are the map applied to the matrix units.

    Same pattern as the state family with diagonal groups (alpha, beta,
    gamma) and -1 in place of +1 at the six cross entries.
    """
    alpha, beta, gamma = params
    return family_pattern(alpha, beta, gamma, -1.0)


def phi_t(t: float) -> MapParams:
    """Parameters of the one-parameter curve of extremal positive maps.

    Defined for t > 0 as ((1-t)^2, t^2, 1) / (1 - t + t^2).  At t = 1 this
    is (0, 1, 1), the completely copositive endpoint; alpha + beta + gamma
    is identically 2 and beta * gamma = (1 - alpha)^2 along the curve.
    """
    if not (t > 0.0) or not math.isfinite(t):
        raise OutOfRangeError(f"curve parameter must be positive and finite, got {t}")
    den = 1.0 - t + t * t
    return MapParams((1.0 - t) ** 2 / den, t * t / den, 1.0 / den)


def is_positive_map(params: MapParams, tol: float = 1e-12) -> bool:
    """Positivity test: alpha + beta + gamma >= 2, and if alpha <= 1 also
    beta * gamma >= (1 - alpha)^2, both within tol."""
    alpha, beta, gamma = params
    if min(alpha, beta, gamma) < -tol:
        return False
    if alpha + beta + gamma < 2.0 - tol:
        return False
    if alpha > 1.0:
        return True
    return beta * gamma >= (1.0 - alpha) ** 2 - tol


def pairing(state, params: MapParams) -> float:
    """Bilinear pairing of a 9x9 Hermitian matrix with a map.

    Computed as Tr(C . M^T) where C is the Choi matrix; for two Hermitian
    inputs this is the elementwise sum of C * M and is real.
    """
    arr = np.asarray(state, dtype=np.complex128)
    if arr.shape != (9, 9):
        raise DimensionMismatchError(f"expected a 9x9 matrix, got {arr.shape}")
    val = np.sum(choi_matrix(params) * arr)
    return float(val.real)


def pairing_closed_form(a: float, b: float, c: float, params: MapParams) -> float:
    """Pairing of A[a, b, c] with the map: 3*(a*alpha + b*beta + c*gamma - 2)."""
    alpha, beta, gamma = params
    return 3.0 * (a * alpha + b * beta + c * gamma - 2.0)


def pairing_product(z, params: MapParams) -> float:
    """Pairing of the rank-one projector onto x (x) y with the map.

    z is any (x, y) pair of complex 3-vectors.  Equals the expectation of
    the map applied to x x* in the state conj(y), which matches ``pairing``
    on the projector onto the product vector.
    """
    x, y = z
    xv = np.asarray(x, dtype=np.complex128).reshape(3)
    yv = np.asarray(y, dtype=np.complex128).reshape(3)
    m = apply_map(params, np.outer(xv, np.conj(xv)))
    yb = np.conj(yv)
    return float(np.vdot(yb, m @ yb).real)


def _curve_values(a: float, b: float, c: float, ts: np.ndarray) -> np.ndarray:
    den = 1.0 - ts + ts * ts
    return 3.0 * ((a * (1.0 - ts) ** 2 + b * ts * ts + c) / den - 2.0)


def witness_scan(
    a: float,
    b: float,
    c: float,
    grid: int = 1001,
    t_min: float = 1e-3,
    t_max: float = 1e3,
) -> WitnessScan:
    """Minimum of the pairing with the map curve over a log-spaced t-grid.

    A negative minimum certifies entanglement of A[a, b, c]; separable
    members scan nonnegative everywhere.
    """
    if grid < 2 or t_min <= 0 or t_max <= t_min:
        raise OutOfRangeError("need grid >= 2 and 0 < t_min < t_max")
    ts = np.geomspace(t_min, t_max, grid)
    vals = _curve_values(a, b, c, ts)
    k = int(np.argmin(vals))
    return WitnessScan(float(ts[k]), float(vals[k]))


def witness_quadratic(a: float, b: float, c: float) -> tuple[tuple[float, float, float], tuple[float, ...]]:
    """Coefficients and positive real roots of the sign-determining quadratic.

    The pairing along the curve has the sign of
    (a + b - 2) t^2 + 2 (1 - a) t + (a + c - 2), so its positive roots are
    exactly the t where the witness value crosses zero.
    """
    a2 = a + b - 2.0
    a1 = 2.0 * (1.0 - a)
    a0 = a + c - 2.0
    roots: list[float] = []
    if abs(a2) < 1e-300:
        if abs(a1) > 1e-300:
            roots = [-a0 / a1]
    else:
        disc = a1 * a1 - 4.0 * a2 * a0
        if disc >= 0.0:
            r = math.sqrt(disc)
            roots = [(-a1 - r) / (2.0 * a2), (-a1 + r) / (2.0 * a2)]
    pos = tuple(sorted(t for t in roots if t > 0.0))
    return (a2, a1, a0), pos


def witness_minimum(
    a: float,
    b: float,
    c: float,
    grid: int = 1001,
    t_min: float = 1e-3,
    t_max: float = 1e3,
) -> WitnessScan:
    """Grid scan refined by the exact interior critical points.

    The derivative of the curve pairing vanishes where
    (b - a) t^2 - 2 (b - c) t - (c - a) = 0; evaluating those roots exactly
    removes the grid-resolution error from the reported minimum.
    """
    best_t, best_v = witness_scan(a, b, c, grid, t_min, t_max)
    ca, cb, cc = b - a, -2.0 * (b - c), -(c - a)
    crit: list[float] = []
    if abs(ca) < 1e-300:
        if abs(cb) > 1e-300:
            crit = [-cc / cb]
    else:
        disc = cb * cb - 4.0 * ca * cc
        if disc >= 0.0:
            r = math.sqrt(disc)
            crit = [(-cb - r) / (2.0 * ca), (-cb + r) / (2.0 * ca)]
    for t in crit:
        if t > 0.0 and math.isfinite(t):
            v = float(_curve_values(a, b, c, np.array([t]))[0])
            if v < best_v:
                best_t, best_v = t, v
    return WitnessScan(best_t, best_v)
