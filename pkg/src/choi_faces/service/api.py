"""Handlers shared by the HTTP endpoints and the in-process CLI."""

from __future__ import annotations

import numpy as np

from .. import classifier, decomposer, faces, maps, states
from ..errors import NotSeparableError, OutOfRangeError, UnsupportedElementError
from .schemas import (
    BoundaryModel,
    ClassifyResponse,
    DecompositionModel,
    FaceResponse,
    TargetModel,
    ThroughModel,
    VerifyResponse,
    WitnessResponse,
)

# certificates pass verification at or below this relative residual
VERIFY_RESIDUAL = 1e-8

CSV_HEADER = "a,b,c,verdict,tag,t_min,witness_min"


def classify_point(a: float, b: float, c: float, tol: float | None = None) -> ClassifyResponse:
    cls = classifier.classify((a, b, c), tol)
    el = classifier.boundary_element((a, b, c), tol)
    st = states.state_type(a, b, c) if cls.is_ppt else None
    w = maps.witness_minimum(a, b, c)
    return ClassifyResponse(
        verdict=cls.verdict,
        tolerance_used=cls.tolerance_used,
        boundary=BoundaryModel(
            tag=el.tag, params={k: float(v) for k, v in el.params.items()}
        ),
        is_state=cls.is_state,
        is_ppt=cls.is_ppt,
        is_separable=cls.is_separable,
        state_type=st,
        witness_t=w.t,
        witness_value=w.value,
    )


def decompose_point(a: float, b: float, c: float) -> DecompositionModel:
    dec = decomposer.decompose_general((a, b, c))
    return DecompositionModel(**decomposer.decomposition_to_dict(dec))


def verify_certificate(doc) -> VerifyResponse:
    dec = decomposer.decomposition_from_dict(doc)
    res = decomposer.residual(dec)
    weights = [float(w) for w, _ in dec.terms]
    min_w = min(weights) if weights else 0.0
    ok = bool(weights) and min_w > 0.0 and res <= VERIFY_RESIDUAL
    a, b, c = dec.target
    return VerifyResponse(
        ok=ok,
        residual=res,
        min_weight=min_w,
        terms=len(weights),
        target=TargetModel(a=a, b=b, c=c),
    )


def witness_point(
    a: float,
    b: float,
    c: float,
    t_min: float = 1e-3,
    t_max: float = 1e3,
    grid: int = 1001,
) -> WitnessResponse:
    scan = maps.witness_scan(a, b, c, grid=grid, t_min=t_min, t_max=t_max)
    best = maps.witness_minimum(a, b, c, grid=grid, t_min=t_min, t_max=t_max)
    _, zeros = maps.witness_quadratic(a, b, c)
    return WitnessResponse(
        t=best.t,
        value=best.value,
        scan_t=scan.t,
        scan_value=scan.value,
        zeros=[float(z) for z in zeros],
    )


def face_report(
    a: float, b: float, c: float, samples: int = 20, seed: int | None = None
) -> FaceResponse:
    cls = classifier.classify((a, b, c))
    if not cls.is_separable:
        raise NotSeparableError(
            f"A[{a}, {b}, {c}] is {cls.verdict}", classification=cls
        )
    el = classifier.boundary_element((a, b, c))
    p_rank, g_rank = states.state_type(a, b, c)
    try:
        family = faces.q_family(el).description
    except UnsupportedElementError:
        family = None
    through = None
    try:
        rep = faces.through_decomposition_check((a, b, c), samples, seed)
        through = ThroughModel(
            samples=rep.samples,
            passed=rep.passed,
            constructive=rep.constructive,
            max_residual=rep.max_residual,
            note=rep.note,
        )
    except UnsupportedElementError:
        pass
    return FaceResponse(
        boundary=BoundaryModel(
            tag=el.tag, params={k: float(v) for k, v in el.params.items()}
        ),
        state_type=(p_rank, g_rank),
        kernel_dims=(9 - p_rank, 9 - g_rank),
        family=family,
        through=through,
    )


def _axis(lo: float, hi: float, steps: int) -> np.ndarray:
    if steps < 1:
        raise OutOfRangeError(f"steps must be at least 1, got {steps}")
    if hi < lo:
        raise OutOfRangeError(f"range must satisfy lo <= hi, got {(lo, hi)}")
    return np.linspace(lo, hi, steps)


def sweep_csv(a_range, b_range, c_range) -> str:
    """Grid classification as CSV text, a-major row order."""
    lines = [CSV_HEADER]
    for a in _axis(*a_range):
        for b in _axis(*b_range):
            for c in _axis(*c_range):
                af, bf, cf = float(a), float(b), float(c)
                cls = classifier.classify((af, bf, cf))
                el = classifier.boundary_element((af, bf, cf))
                w = maps.witness_minimum(af, bf, cf)
                lines.append(
                    f"{af!r},{bf!r},{cf!r},{cls.verdict},{el.tag},{w.t!r},{w.value!r}"
                )
    return "\n".join(lines) + "\n"
