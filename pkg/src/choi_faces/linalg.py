"""Self-contained dense complex Hermitian linear algebra for dimension <= 9.

The eigensolver is a cyclic Jacobi iteration with two-sided unitary 2x2
rotations.  At these sizes it is simple, accurate to machine precision, and
needs no external solver.  The kernel operates on a batch of matrices at
once so grid sweeps can diagonalize thousands of 9x9 matrices in a few
vectorized passes; a single matrix is just a batch of one.

Rank, kernel, positivity, and range projections all share one tolerance
convention: an eigenvalue counts as zero when ``|lam| <= tol * max(1, m)``
where ``m`` is the largest eigenvalue magnitude of that matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DimensionMismatchError, NotHermitianError

# Sweep stops once the off-diagonal Frobenius mass drops below this fraction
# of the full Frobenius norm.
SWEEP_TOL = 1e-14
# Hard cap on cyclic sweeps; 9x9 Hermitian inputs converge in well under ten.
MAX_SWEEPS = 50
# Relative asymmetry above which a matrix is rejected as non-Hermitian.
HERMITICITY_TOL = 1e-10
# Default relative tolerance for rank decisions.
DEFAULT_TOL = 1e-9


@dataclass(frozen=True)
class EigDecomp:
    """Eigenvalues in ascending order with matching orthonormal eigenvectors.

    ``eigenvectors[:, k]`` is the unit eigenvector for ``eigenvalues[k]``.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def _as_batch(mats) -> np.ndarray:
    """Validate shape/content and return a complex128 working copy."""
    a = np.array(mats, dtype=np.complex128, order="C")
    if a.ndim == 2:
        a = a[None]
    if a.ndim != 3 or a.shape[-1] != a.shape[-2]:
        raise DimensionMismatchError(f"expected square matrices, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise NotHermitianError("matrix entries must be finite")
    asym = np.sqrt(np.sum(np.abs(a - np.conj(np.swapaxes(a, -1, -2))) ** 2, axis=(1, 2)))
    fro = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    bad = asym > HERMITICITY_TOL * np.maximum(1.0, fro)
    if np.any(bad):
        raise NotHermitianError(
            f"matrix asymmetry {float(np.max(asym)):.3e} exceeds the Hermitian tolerance"
        )
    # Fold any sub-tolerance asymmetry away so the iteration sees an exactly
    # Hermitian matrix.
    return 0.5 * (a + np.conj(np.swapaxes(a, -1, -2)))


def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    # Sum only the off-diagonal entries: subtracting the diagonal mass from
    # the total cancels catastrophically once the iteration is nearly done.
    mask = ~np.eye(a.shape[-1], dtype=bool)
    return np.sqrt(np.sum((np.abs(a) ** 2) * mask, axis=(1, 2)))


def _rotate(a: np.ndarray, v: np.ndarray | None, p: int, q: int) -> None:
    """Annihilate entry (p, q) of every matrix in the batch in place.

    The 2x2 pivot block [[app, g*ph], [g*conj(ph), aqq]] (g real, |ph| = 1)
    is diagonalized by J2 = diag(1, conj(ph)) @ [[c, -s], [s, c]], and the
    congruence A <- J2* A J2 is applied to the affected rows and columns.
    """
    apq = a[:, p, q]
    mag = np.abs(apq)
    active = mag > 0.0
    if not np.any(active):
        return
    safe = np.where(active, mag, 1.0)
    ph = np.where(active, apq / safe, 1.0)
    tau = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
    # Smaller-magnitude root of t^2 - 2*tau*t - 1 = 0, which zeroes the pivot
    # for the rotation convention above.
    t = np.where(tau >= 0.0, -1.0, 1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    c = np.where(active, c, 1.0)
    s = np.where(active, s, 0.0)
    sph = s * ph

    rp = a[:, p, :]
    rq = a[:, q, :]
    new_p = c[:, None] * rp + sph[:, None] * rq
    new_q = -s[:, None] * rp + (c * ph)[:, None] * rq
    a[:, p, :] = new_p
    a[:, q, :] = new_q

    cp = a[:, :, p].copy()
    cq = a[:, :, q].copy()
    a[:, :, p] = c[:, None] * cp + np.conj(sph)[:, None] * cq
    a[:, :, q] = -s[:, None] * cp + np.conj(c * ph)[:, None] * cq

    a[:, p, q] = 0.0
    a[:, q, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, q, q] = a[:, q, q].real

    if v is not None:
        vp = v[:, :, p].copy()
        vq = v[:, :, q].copy()
        v[:, :, p] = c[:, None] * vp + np.conj(sph)[:, None] * vq
        v[:, :, q] = -s[:, None] * vp + np.conj(c * ph)[:, None] * vq


def _jacobi(a: np.ndarray, want_vectors: bool):
    n, d, _ = a.shape
    fro = np.sqrt(np.sum(np.abs(a) ** 2, axis=(1, 2)))
    v = None
    if want_vectors:
        v = np.zeros_like(a)
        idx = np.arange(d)
        v[:, idx, idx] = 1.0
    sweeps = 0
    while True:
        if np.all(_offdiag_norm(a) <= SWEEP_TOL * fro):
            break
        if sweeps >= MAX_SWEEPS:
            raise ConvergenceError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
        for p in range(d - 1):
            for q in range(p + 1, d):
                _rotate(a, v, p, q)
        sweeps += 1
    w = np.diagonal(a, axis1=1, axis2=2).real.copy()
    order = np.argsort(w, axis=1, kind="stable")
    w = np.take_along_axis(w, order, axis=1)
    if want_vectors:
        v = np.take_along_axis(v, order[:, None, :], axis=2)
    return w, v


def hermitian_eig(mat) -> EigDecomp:
    """Full eigendecomposition of one Hermitian matrix.

    Raises NotHermitianError if the input is not Hermitian within a relative
    asymmetry of 1e-10, and ConvergenceError if the sweep cap is hit (which
    does not happen for finite Hermitian input at these sizes).
    """
    batch = _as_batch(mat)
    if batch.shape[0] != 1:
        raise DimensionMismatchError("hermitian_eig expects a single matrix")
    w, v = _jacobi(batch, want_vectors=True)
    return EigDecomp(eigenvalues=w[0], eigenvectors=v[0])


def hermitian_eig_batch(mats, want_vectors: bool = False):
    """Eigendecompose a stack of Hermitian matrices with shared sweeps.

    Returns ``(w, v)`` where ``w`` has shape (n, d) with ascending rows and
    ``v`` is None unless ``want_vectors`` is set.
    """
    batch = _as_batch(mats)
    return _jacobi(batch, want_vectors=want_vectors)


def _zero_threshold(eigenvalues: np.ndarray, tol: float) -> float:
    scale = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    return tol * max(1.0, scale)


def rank_of(mat, tol: float = DEFAULT_TOL) -> int:
    """Number of eigenvalues larger in magnitude than the zero threshold."""
    dec = hermitian_eig(mat)
    thr = _zero_threshold(dec.eigenvalues, tol)
    return int(np.sum(np.abs(dec.eigenvalues) > thr))


def kernel_basis(mat, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the numerical kernel, as columns of a (d, k) array."""
    dec = hermitian_eig(mat)
    thr = _zero_threshold(dec.eigenvalues, tol)
    keep = np.abs(dec.eigenvalues) <= thr
    return dec.eigenvectors[:, keep]


def is_psd(mat, tol: float = DEFAULT_TOL) -> bool:
    """True when the smallest eigenvalue is at least -tol."""
    dec = hermitian_eig(mat)
    return bool(dec.eigenvalues[0] >= -tol)


def range_projector(mat, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthogonal projector onto the span of the nonzero eigenvectors."""
    dec = hermitian_eig(mat)
    thr = _zero_threshold(dec.eigenvalues, tol)
    cols = dec.eigenvectors[:, np.abs(dec.eigenvalues) > thr]
    return cols @ np.conj(cols.T)


def orthonormal_columns(vectors, tol: float = 1e-12) -> np.ndarray:
    """Orthonormalize a set of vectors by modified Gram-Schmidt.

    Accepts a sequence of 1-d arrays or a (d, k) matrix of columns.  Columns
    that fall below ``tol`` of their original norm after projection are
    dropped, so the result always has full column rank.
    """
    arr = np.array(vectors, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr[:, None]
    elif arr.ndim == 2 and not isinstance(vectors, np.ndarray):
        # A sequence of k vectors arrives as (k, d); transpose to columns.
        arr = arr.T
    cols = []
    for j in range(arr.shape[1]):
        w = arr[:, j].copy()
        original = np.linalg.norm(w)
        if original == 0.0:
            continue
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for u in cols:
                w = w - u * np.vdot(u, w)
        norm = np.linalg.norm(w)
        if norm > tol * original:
            cols.append(w / norm)
    if not cols:
        return np.zeros((arr.shape[0], 0), dtype=np.complex128)
    return np.stack(cols, axis=1)


def span_projector(vectors) -> np.ndarray:
    """Orthogonal projector onto the span of the given vectors."""
    q = orthonormal_columns(vectors)
    return q @ np.conj(q.T)
