"""FastAPI service wrapping the library.

Run with: uvicorn nestfan.service:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Response

from . import ops
from .graphs import EnumerationGuardError, GraphError
from .projection import PlotSpec, ProjectionError, fan_to_svg
from .schemas import (
    CheckFanResponse,
    CountsRequest,
    DegreeTableResponse,
    DependenceRequest,
    DependenceResponse,
    EnumerateRequest,
    EnumerateResponse,
    FanRequest,
    FanResponse,
    GraphRequest,
    ModelRequest,
    OmegaRequest,
    OrbitsResponse,
    PlotRequest,
    PolytopeRequest,
    PolytopeResponse,
    ScanRequest,
    ScanResponse,
)

app = FastAPI(
    title="nestfan",
    description="compatibility fans of graphical nested complexes, exactly",
)


def _graph(spec):
    try:
        return ops.load_graph(spec)
    except GraphError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None


def _guard(fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except (GraphError, ProjectionError) as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from None
    except EnumerationGuardError as exc:
        raise HTTPException(status_code=413, detail=str(exc)) from None


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/tubes", response_model=EnumerateResponse)
def tubes(req: EnumerateRequest):
    g = _graph(req.graph)
    return _guard(ops.enumerate_payload, g, "tubes", req.size)


@app.post("/tubings", response_model=EnumerateResponse)
def tubings(req: EnumerateRequest):
    g = _graph(req.graph)
    what = req.what if req.what in ("tubings", "maximal_tubings") else "tubings"
    return _guard(ops.enumerate_payload, g, what, req.size)


@app.post("/degree-table", response_model=DegreeTableResponse)
def degree_table(req: GraphRequest):
    return _guard(ops.degree_table, _graph(req.graph))


@app.post("/fan", response_model=FanResponse)
def fan(req: FanRequest):
    return _guard(ops.fan_payload, _graph(req.graph), req.initial, req.kind)


@app.post("/fan/check", response_model=CheckFanResponse)
def fan_check(req: FanRequest):
    return _guard(ops.check_fan_payload, _graph(req.graph), req.initial, req.kind)


@app.post("/dependence", response_model=DependenceResponse)
def dependence(req: DependenceRequest):
    return _guard(
        ops.dependence_payload,
        _graph(req.graph),
        req.initial,
        req.kind,
        req.tubing,
        req.tube,
    )


@app.post("/polytope", response_model=PolytopeResponse)
def polytope(req: PolytopeRequest):
    return _guard(
        ops.polytope_payload, _graph(req.graph), req.initial, req.kind, req.weights
    )


@app.post("/counts")
def counts(req: CountsRequest):
    return _guard(ops.counts_payload, _graph(req.graph), req.family)


@app.post("/model")
def model(req: ModelRequest):
    return _guard(ops.model_payload, req.family, req.n)


@app.post("/orbits", response_model=OrbitsResponse)
def orbits(req: GraphRequest):
    return _guard(ops.orbits_payload, _graph(req.graph))


@app.post("/omega")
def omega(req: OmegaRequest):
    g = _graph(req.graph)
    return _guard(ops.omega_payload, g, req.map, req.power, req.tubing, req.tube)


@app.post("/plot")
def plot(req: PlotRequest):
    g = _graph(req.graph)
    fan_obj = _guard(ops.make_fan, g, req.initial, req.kind)
    spec = PlotSpec(
        pole=tuple(req.pole) if req.pole else PlotSpec().pole,
        labels=req.labels,
    )
    svg = _guard(fan_to_svg, fan_obj, spec)
    return Response(content=svg, media_type="image/svg+xml")


@app.post("/conjecture-scan", response_model=ScanResponse)
def conjecture_scan(req: ScanRequest):
    return _guard(ops.conjecture_scan, req.vertices, req.samples, req.seed)
