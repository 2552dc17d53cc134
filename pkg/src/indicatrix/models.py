"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, Field

Coordinate = Union[float, int, str]


class PolygonModel(BaseModel):
    kind: Literal["space", "spherical"]
    vertices: list[list[Coordinate]] = Field(min_length=3)


class PolygonRequest(BaseModel):
    polygon: PolygonModel
    degeneracy_tol: Optional[float] = None


class LiftRequest(BaseModel):
    polygon: PolygonModel
    base: Optional[list[Coordinate]] = None
    degeneracy_tol: Optional[float] = None
    closure_tol: Optional[float] = None


class PerturbRequest(BaseModel):
    polygon: PolygonModel
    seed: int = 0
    magnitude: float = 1e-6
    max_retries: int = 64


class AreaRequest(BaseModel):
    polygon: PolygonModel
    degeneracy_tol: Optional[float] = None
    planar_tol: Optional[float] = None


class TennisBallRequest(BaseModel):
    polygon: PolygonModel
    degeneracy_tol: Optional[float] = None
    equal_area_tol: Optional[float] = None
    planar_tol: Optional[float] = None


class MobiusRequest(BaseModel):
    polygon: PolygonModel
    degeneracy_tol: Optional[float] = None
    planar_tol: Optional[float] = None


class CertifyRequest(BaseModel):
    seed: int = 0
    n_min: int = 4
    n_max: int = 12
    trials: int = 100
    attempts: int = 5000
    claims: Optional[list[str]] = None


class PlotDataRequest(BaseModel):
    polygon: PolygonModel
    samples: int = 33


class PolygonResponse(BaseModel):
    polygon: PolygonModel


class CheckResponse(BaseModel):
    kind: str
    n: int
    planar: Optional[bool] = None
    simple: Optional[bool] = None
    balanced: Optional[bool] = None
    inflections: Optional[int] = None
    sign_changes: Optional[int] = None
    epsilon: Optional[list[str]] = None
    generic: Optional[bool] = None
    flattenings: Optional[int] = None
    indicatrix_simple: Optional[bool] = None


class FlatteningsResponse(BaseModel):
    count: int
    triples: list[list[int]]


class InflectionsResponse(BaseModel):
    count: int
    pairs: list[list[int]]
    epsilon: list[str]
    sign_changes: int


class LiftResponse(BaseModel):
    polygon: PolygonModel
    weights: list[Coordinate]
    weight_sum: float
    closure_residual: float


class ReduceStepModel(BaseModel):
    deleted: int
    before: int
    after: int


class ReduceResponse(BaseModel):
    steps: list[ReduceStepModel]
    terminal_epsilon: list[str]
    initial_inflections: int
    terminal: PolygonModel


class AreaResponse(BaseModel):
    area1: float
    area2: float
    planar: bool


class TennisBallResponse(BaseModel):
    equal_area: bool
    inflections: int
    theorem_holds: bool
    planar: bool
    area1: float
    area2: float


class MobiusResponse(BaseModel):
    inflections: int
    paired: list[list[int]]
    theorem_holds: bool
    planar: bool


class ClaimStatsModel(BaseModel):
    trials: int
    passes: int
    failures: int


class CertifyResponse(BaseModel):
    ok: bool
    claims: dict[str, ClaimStatsModel]
    findings: list[dict]


class TriangulationResponse(BaseModel):
    triangles: list[list[int]]
    region: list[int]
    area1: float
    area2: float


class PlotDataResponse(BaseModel):
    polylines: list[list[list[float]]]


class ErrorResponse(BaseModel):
    error_kind: Literal["invalid-input", "degenerate-geometry", "theorem-violation"]
    message: str
    payload: dict = Field(default_factory=dict)
