"""Closed-form classification of family parameters (a, b, c).

The state A[a,b,c] is positive semidefinite iff a >= 1 (with b, c >= 0),
PPT iff additionally bc >= 1, and separable iff additionally a+b-2 >= 0 and
(a+b-2)(a+c-2) >= (1-a)^2.  PPT without separability is the PPTES regime.
Separable parameters are located within the convex body C of separable
family members: its distinguished vertices, edges, the face f at a = 1, or
the interior.  All tests are pure float inequalities with one tolerance
band; the eigenvalue oracle in linalg is used only by tests.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

from . import linalg
from .errors import OutOfRangeError
from .states import StateParams

NOT_STATE = "NotState"
NPT = "NPT"
PPTES = "PPTES"
SEP_BOUNDARY = "SeparableBoundaryOfC"
SEP_INTERIOR = "SeparableInteriorOfC"

TAG_V1 = "v1"
TAG_VB = "v_b"
TAG_E1 = "e1"
TAG_EB_EDGE = "e_b_edge"
TAG_EHAT_B = "e_hat_b"
TAG_E0 = "e0"
TAG_EINF = "e_inf"
TAG_F = "f"
TAG_INTERIOR = "interior"
TAG_EXTERIOR = "exterior"

ENV_TOL = "CHOI_FACES_TOL"


def default_tolerance() -> float:
    """Classification tolerance: CHOI_FACES_TOL when set, else 1e-9."""
    raw = os.environ.get(ENV_TOL)
    if raw is None:
        return linalg.DEFAULT_TOL
    val = float(raw)
    if not (val > 0.0) or not math.isfinite(val):
        raise OutOfRangeError(f"{ENV_TOL} must be a positive float, got {raw!r}")
    return val


@dataclass(frozen=True)
class Classification:
    """Verdict for one parameter triple, with the tolerance that decided it."""

    verdict: str
    tolerance_used: float

    @property
    def is_state(self) -> bool:
        return self.verdict != NOT_STATE

    @property
    def is_ppt(self) -> bool:
        return self.verdict in (PPTES, SEP_BOUNDARY, SEP_INTERIOR)

    @property
    def is_separable(self) -> bool:
        return self.verdict in (SEP_BOUNDARY, SEP_INTERIOR)


@dataclass(frozen=True)
class BoundaryElement:
    """Position within the separable body C: a tag plus its parameters.

    params carries b for v_b and e_hat_b, and (b, s) for e_b_edge where s
    is the coordinate along the segment from v1 to v_b; empty otherwise.
    """

    tag: str
    params: dict = field(default_factory=dict)


def _abc(p) -> tuple[float, float, float]:
    a, b, c = p
    a, b, c = float(a), float(b), float(c)
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(c)):
        raise OutOfRangeError(f"parameters must be finite, got {(a, b, c)}")
    return a, b, c


def is_ppt_params(p, tol: float | None = None) -> bool:
    """PPT test: a >= 1 and bc >= 1, within tol."""
    if tol is None:
        tol = default_tolerance()
    a, b, c = _abc(p)
    return a >= 1.0 - tol and b * c >= 1.0 - tol


def is_separable_params(p, tol: float | None = None) -> bool:
    """Separability test: PPT plus a+b-2 >= 0 and
    (a+b-2)(a+c-2) >= (1-a)^2, within tol."""
    if tol is None:
        tol = default_tolerance()
    a, b, c = _abc(p)
    if not is_ppt_params(p, tol):
        return False
    if a + b - 2.0 < -tol:
        return False
    return (a + b - 2.0) * (a + c - 2.0) >= (1.0 - a) ** 2 - tol


def is_pptes_params(p, tol: float | None = None) -> bool:
    """PPT entangled: PPT holds and separability fails.  Equivalent to
    1 <= a < 2, bc >= 1, (a+b-2)(a+c-2) < (1-a)^2."""
    if tol is None:
        tol = default_tolerance()
    return is_ppt_params(p, tol) and not is_separable_params(p, tol)


def classify(p, tol: float | None = None) -> Classification:
    """Exactly one of: NotState, NPT, PPTES, separable boundary/interior.

    A[a,b,c] fails to be PSD iff a < 1 or b < 0 or c < 0.  Separable
    parameters are interior iff they clear every boundary band of C, so the
    verdict always agrees with boundary_element.
    """
    if tol is None:
        tol = default_tolerance()
    if not (tol > 0.0):
        raise OutOfRangeError(f"tolerance must be positive, got {tol}")
    a, b, c = _abc(p)
    if a < 1.0 - tol or b < -tol or c < -tol:
        return Classification(NOT_STATE, tol)
    if not is_ppt_params(p, tol):
        return Classification(NPT, tol)
    if not is_separable_params(p, tol):
        return Classification(PPTES, tol)
    if boundary_element(p, tol).tag == TAG_INTERIOR:
        return Classification(SEP_INTERIOR, tol)
    return Classification(SEP_BOUNDARY, tol)


def boundary_element(p, tol: float | None = None) -> BoundaryElement:
    """Locate separable parameters in C; non-separable input is exterior.

    Tags in decreasing precedence: the vertex v1 = (1,1,1); the vertices
    v_b = (2,b,1/b); the edges e1 = {(a,1,1): a >= 1},
    e_b_edge = {(1+s, 1+s(b-1), 1+s(1/b-1)): 0 < s < 1},
    e_hat_b = {(a,b,1/b): a >= 2}, e0 = {(1,1,c): c >= 1},
    e_inf = {(1,b,1): b >= 1}; the face f = {(1,b,c): b,c >= 1}; interior.
    Overlaps inside the tolerance band resolve to the earlier tag.
    """
    if tol is None:
        tol = default_tolerance()
    a, b, c = _abc(p)
    if not is_separable_params(p, tol):
        return BoundaryElement(TAG_EXTERIOR)
    near_1 = abs(a - 1.0) <= tol
    near_ppt = abs(b * c - 1.0) <= tol
    sep_gap = (a + b - 2.0) * (a + c - 2.0) - (1.0 - a) ** 2
    if near_1 and abs(b - 1.0) <= tol and abs(c - 1.0) <= tol:
        return BoundaryElement(TAG_V1)
    if abs(a - 2.0) <= tol and near_ppt:
        return BoundaryElement(TAG_VB, {"b": b})
    if abs(b - 1.0) <= tol and abs(c - 1.0) <= tol:
        return BoundaryElement(TAG_E1)
    if 1.0 + tol < a < 2.0 - tol and abs(sep_gap) <= tol:
        s = a - 1.0
        return BoundaryElement(TAG_EB_EDGE, {"b": (b - 1.0) / s + 1.0, "s": s})
    if a >= 2.0 - tol and near_ppt:
        return BoundaryElement(TAG_EHAT_B, {"b": b})
    if near_1 and abs(b - 1.0) <= tol:
        return BoundaryElement(TAG_E0)
    if near_1 and abs(c - 1.0) <= tol:
        return BoundaryElement(TAG_EINF)
    if near_1:
        return BoundaryElement(TAG_F)
    return BoundaryElement(TAG_INTERIOR)


def extend_to_vertex(p) -> tuple[StateParams, float]:
    """Push (a,b,c) with 1 < a < 2 along the line through (1,1,1) to a = 2.

    Returns the extended point (2, (b-1)/(a-1)+1, (c-1)/(a-1)+1) and the
    weight s = a-1 with p = (1-s)*(1,1,1) + s*extended.  When p satisfies
    the separability product condition with equality the extended point
    lands on bc = 1.
    """
    a, b, c = _abc(p)
    if not (1.0 < a < 2.0):
        raise OutOfRangeError(f"extension needs 1 < a < 2, got a = {a}")
    s = a - 1.0
    return StateParams(2.0, (b - 1.0) / s + 1.0, (c - 1.0) / s + 1.0), s
