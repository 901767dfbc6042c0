"""Request and response bodies for the HTTP endpoints."""

from __future__ import annotations

from pydantic import BaseModel, Field


class ParamsRequest(BaseModel):
    a: float
    b: float
    c: float


class ClassifyRequest(ParamsRequest):
    tol: float | None = Field(default=None, gt=0.0)


class BoundaryModel(BaseModel):
    tag: str
    params: dict[str, float] = {}


class ClassifyResponse(BaseModel):
    verdict: str
    tolerance_used: float
    boundary: BoundaryModel
    is_state: bool
    is_ppt: bool
    is_separable: bool
    state_type: tuple[int, int] | None = None
    witness_t: float
    witness_value: float


class TargetModel(BaseModel):
    a: float
    b: float
    c: float


class TermModel(BaseModel):
    weight: float
    x: list[list[float]]
    y: list[list[float]]


class DecompositionModel(BaseModel):
    target: TargetModel
    terms: list[TermModel]
    residual: float


class DecomposeRequest(ParamsRequest):
    pass


class VerifyResponse(BaseModel):
    ok: bool
    residual: float
    min_weight: float
    terms: int
    target: TargetModel


class WitnessRequest(ParamsRequest):
    t_min: float = Field(default=1e-3, gt=0.0)
    t_max: float = 1e3
    grid: int = Field(default=1001, ge=2)


class WitnessResponse(BaseModel):
    t: float
    value: float
    scan_t: float
    scan_value: float
    zeros: list[float]


class FaceRequest(ParamsRequest):
    samples: int = Field(default=20, ge=1)
    seed: int | None = None


class ThroughModel(BaseModel):
    samples: int
    passed: int
    constructive: bool
    max_residual: float
    note: str


class FaceResponse(BaseModel):
    boundary: BoundaryModel
    state_type: tuple[int, int]
    kernel_dims: tuple[int, int]
    family: str | None = None
    through: ThroughModel | None = None


class RangeModel(BaseModel):
    lo: float
    hi: float
    steps: int = Field(ge=1)


class SweepRequest(BaseModel):
    a: RangeModel
    b: RangeModel
    c: RangeModel
