"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional, Union

from pydantic import BaseModel, Field

GraphSpec = Union[str, dict]
TubingSpec = Union[str, list]


class GraphRequest(BaseModel):
    graph: GraphSpec = Field(
        description="family shorthand like 'path:5' or {vertices, edges}"
    )


class EnumerateRequest(GraphRequest):
    what: str = "tubes"
    size: Optional[int] = None


class EnumerateResponse(BaseModel):
    count: int
    tubes: Optional[list[list[str]]] = None
    tubings: Optional[list[list[list[str]]]] = None


class DegreeTableResponse(BaseModel):
    tubes: list[str]
    matrix: list[list[int]]


class FanRequest(GraphRequest):
    initial: TubingSpec = "auto"
    kind: str = "primal"


class FanResponse(BaseModel):
    dimension: int
    rays: dict[str, list]
    cones: list[list[str]]
    provenance: dict


class CheckFanResponse(BaseModel):
    ok: bool
    condition1: dict
    flips: int
    non_separating: list[dict]
    problems: list[str]


class DependenceRequest(FanRequest):
    tubing: list
    tube: Union[str, list, dict]


class DependenceResponse(BaseModel):
    coefficients: dict[str, int]
    pivot: str
    pivot_zero: bool
    local: Optional[bool] = None


class PolytopeRequest(FanRequest):
    weights: str = "lp"


class PolytopeResponse(BaseModel):
    status: str
    weights: Optional[dict[str, Union[int, str]]] = None
    h_rep: Optional[list[dict]] = None
    v_rep: Optional[list[dict]] = None
    fan_ok: Optional[bool] = None


class CountsRequest(GraphRequest):
    family: Optional[str] = None


class ModelRequest(BaseModel):
    family: str
    n: int


class OrbitsResponse(BaseModel):
    automorphisms: int
    maximal_tubings: int
    orbit_count: int
    fan_classes: int
    path_dihedral_classes: Optional[int] = None


class OmegaRequest(GraphRequest):
    map: str = "omega"
    power: int = 1
    tubing: Optional[list] = None
    tube: Optional[Union[str, list]] = None


class PlotRequest(FanRequest):
    labels: bool = True
    pole: Optional[list[float]] = None


class ScanRequest(BaseModel):
    vertices: int = 5
    samples: int = 10
    seed: int = 0


class ScanResponse(BaseModel):
    samples: int
    fan_invalid: int
    lp_infeasible: int
    rows: list[dict]
