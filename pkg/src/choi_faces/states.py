"""Two-qutrit states of the three-parameter diagonal family.

The family lives in the 9-dimensional tensor basis ordered so that slot
``3*i + j`` is |i> x |j> (row-major over the two qutrit indices).  A member
A[a, b, c] has diagonal (a, c, b, b, a, c, c, b, a) and entries 1 at the
three symmetric positions coupling the slots (0, 4), (0, 8), (4, 8); it is
left unnormalized, with trace 3(a + b + c).
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from . import linalg
from .errors import DimensionMismatchError, NotPPTError


class StateParams(NamedTuple):
    """Parameter triple (a, b, c) of a family member."""

    a: float
    b: float
    c: float


# Diagonal slot groups and the symmetric off-diagonal couplings.
A_SLOTS = (0, 4, 8)
B_SLOTS = (2, 3, 7)
C_SLOTS = (1, 5, 6)
CROSS_PAIRS = ((0, 4), (0, 8), (4, 8))


def family_pattern(da: float, db: float, dc: float, off: float) -> np.ndarray:
    """9x9 matrix with the family's sparsity pattern.

    ``da``/``db``/``dc`` fill the three diagonal slot groups and ``off`` fills
    the six symmetric cross entries.  Both the state family (off = +1) and the
    Choi matrices of the associated maps (off = -1) share this pattern.
    """
    m = np.zeros((9, 9), dtype=np.complex128)
    for k in A_SLOTS:
        m[k, k] = da
    for k in B_SLOTS:
        m[k, k] = db
    for k in C_SLOTS:
        m[k, k] = dc
    for i, j in CROSS_PAIRS:
        m[i, j] = off
        m[j, i] = off
    return m


def build_state(a: float, b: float, c: float) -> np.ndarray:
    """Unnormalized 9x9 Hermitian matrix A[a, b, c]."""
    if not (np.isfinite(a) and np.isfinite(b) and np.isfinite(c)):
        raise ValueError("state parameters must be finite")
    return family_pattern(a, b, c, 1.0)


def partial_transpose(mat, dims: tuple[int, int] = (3, 3)) -> np.ndarray:
    """Transpose on the first tensor factor (block transpose).

    For block form ``M = [M_ij]`` with 3x3 blocks indexed by the first factor,
    the result has blocks ``M_ji``.  An involution: applying it twice returns
    the input.
    """
    m, n = dims
    arr = np.asarray(mat, dtype=np.complex128)
    if arr.shape != (m * n, m * n):
        raise DimensionMismatchError(f"expected shape ({m * n}, {m * n}), got {arr.shape}")
    return arr.reshape(m, n, m, n).transpose(2, 1, 0, 3).reshape(m * n, m * n)


def partial_transpose_batch(mats, dims: tuple[int, int] = (3, 3)) -> np.ndarray:
    """Partial transpose applied to a stack of matrices at once."""
    m, n = dims
    arr = np.asarray(mats, dtype=np.complex128)
    if arr.ndim != 3 or arr.shape[1:] != (m * n, m * n):
        raise DimensionMismatchError(f"expected shape (k, {m * n}, {m * n}), got {arr.shape}")
    k = arr.shape[0]
    return arr.reshape(k, m, n, m, n).transpose(0, 3, 2, 1, 4).reshape(k, m * n, m * n)


def normalized(mat) -> np.ndarray:
    """Unit-trace copy, for export to density-matrix consumers only.

    Everything else in this package works with the unnormalized family.
    """
    arr = np.asarray(mat, dtype=np.complex128)
    tr = np.trace(arr).real
    if tr <= 0:
        raise ValueError("trace must be positive to normalize")
    return arr / tr


def state_type(a: float, b: float, c: float, tol: float = linalg.DEFAULT_TOL) -> tuple[int, int]:
    """Rank pair (rank A, rank of the partial transpose) for a PPT member.

    Raises NotPPTError when the parameters fail the closed-form PPT
    conditions a >= 1 and b*c >= 1 beyond tolerance.
    """
    if a < 1.0 - tol or b * c < 1.0 - tol:
        raise NotPPTError(f"A[{a}, {b}, {c}] is not PPT; rank type is undefined")
    mat = build_state(a, b, c)
    return linalg.rank_of(mat, tol), linalg.rank_of(partial_transpose(mat), tol)
