"""FastAPI service wrapping the geometry core.

Every endpoint is stateless: polygon in, report out.  Geometry errors map
to structured JSON problems -- 400 for malformed input, 409 for degenerate
or hypothesis-violating geometry, and 409 with kind "theorem-violation"
for observed counterexamples (which callers should treat as findings).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import __version__
from . import predicates as pr
from .applications import (
    is_planar,
    is_simple_planar,
    mobius_check,
    region_areas,
    tennis_ball_check,
)
from .cones import is_balanced
from .errors import (
    DegenerateGeometry,
    GeometryError,
    InvalidInput,
    TheoremViolation,
)
from .harness import GeneratorConfig, certify_all
from .lifting import lift, lift_weights
from .models import (
    AreaRequest,
    AreaResponse,
    CertifyRequest,
    CertifyResponse,
    CheckResponse,
    FlatteningsResponse,
    InflectionsResponse,
    LiftRequest,
    LiftResponse,
    MobiusRequest,
    MobiusResponse,
    PerturbRequest,
    PlotDataRequest,
    PlotDataResponse,
    PolygonRequest,
    PolygonResponse,
    ReduceResponse,
    TennisBallRequest,
    TennisBallResponse,
    TriangulationResponse,
)
from .polygons import (
    SpacePolygon,
    SphericalPolygon,
    count_sign_changes,
    epsilon_sequence,
    flattenings,
    is_generic,
    perturb_to_general_position,
    spherical_inflections,
    tangent_indicatrix,
)
from .reduction import reduce_to_base
from .schemas import (
    dump_polygon,
    load_polygon,
    plot_polylines,
    trace_to_json,
    triangulation_to_json,
)
from .simplicity import is_simple, triangulate_regions

app = FastAPI(title="indicatrix", version=__version__)


@app.exception_handler(GeometryError)
async def geometry_error_handler(_: Request, exc: GeometryError):
    if isinstance(exc, InvalidInput):
        kind, status = "invalid-input", 400
    elif isinstance(exc, TheoremViolation):
        kind, status = "theorem-violation", 409
    elif isinstance(exc, DegenerateGeometry):
        kind, status = "degenerate-geometry", 409
    else:
        kind, status = "degenerate-geometry", 409
    payload = getattr(exc, "payload", {}) or {}
    return JSONResponse(
        status_code=status,
        content={"error_kind": kind, "message": str(exc), "payload": payload},
    )


def _tol(value, default):
    return default if value is None else value


def _spherical(polygon_model) -> SphericalPolygon:
    poly = load_polygon(polygon_model.model_dump())
    if not isinstance(poly, SphericalPolygon):
        raise InvalidInput("this operation needs a spherical polygon")
    return poly


def _space(polygon_model) -> SpacePolygon:
    poly = load_polygon(polygon_model.model_dump())
    if not isinstance(poly, SpacePolygon):
        raise InvalidInput("this operation needs a space polygon")
    return poly


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/indicatrix", response_model=PolygonResponse)
def indicatrix_endpoint(req: PolygonRequest):
    return PolygonResponse(polygon=dump_polygon(tangent_indicatrix(_space(req.polygon))))


@app.post("/flattenings", response_model=FlatteningsResponse)
def flattenings_endpoint(req: PolygonRequest):
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    triples = flattenings(_space(req.polygon), tol)
    return FlatteningsResponse(
        count=len(triples),
        triples=[[i + 1 for i in t] for t in triples],
    )


@app.post("/inflections", response_model=InflectionsResponse)
def inflections_endpoint(req: PolygonRequest):
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    poly = _spherical(req.polygon)
    eps = epsilon_sequence(poly, tol)
    pairs = spherical_inflections(poly, tol)
    return InflectionsResponse(
        count=len(pairs),
        pairs=[[i + 1, j + 1] for i, j in pairs],
        epsilon=eps.symbols(),
        sign_changes=count_sign_changes(eps),
    )


@app.post("/check", response_model=CheckResponse, response_model_exclude_none=True)
def check_endpoint(req: PolygonRequest):
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    poly = load_polygon(req.polygon.model_dump())
    if isinstance(poly, SpacePolygon):
        generic = is_generic(poly, tol)
        if not generic:
            return CheckResponse(kind="space", n=len(poly), generic=False)
        q = tangent_indicatrix(poly)
        return CheckResponse(
            kind="space",
            n=len(poly),
            generic=True,
            flattenings=len(flattenings(poly, tol)),
            indicatrix_simple=is_simple(q, tol),
            balanced=is_balanced(q, tol, check_preconditions=False),
        )
    planar = is_planar(poly)
    if planar:
        return CheckResponse(
            kind="spherical", n=len(poly), planar=True,
            simple=is_simple_planar(poly), balanced=True, inflections=len(poly),
        )
    eps = epsilon_sequence(poly, tol)
    return CheckResponse(
        kind="spherical",
        n=len(poly),
        planar=False,
        simple=is_simple(poly, tol),
        balanced=is_balanced(poly, tol, check_preconditions=False),
        inflections=len(spherical_inflections(poly, tol)),
        sign_changes=count_sign_changes(eps),
        epsilon=eps.symbols(),
    )


def _format_scalars(values) -> list:
    from fractions import Fraction

    out = []
    for v in values:
        if isinstance(v, Fraction):
            out.append(f"{v.numerator}/{v.denominator}")
        elif isinstance(v, int):
            out.append(v)
        else:
            out.append(float(v))
    return out


@app.post("/lift", response_model=LiftResponse)
def lift_endpoint(req: LiftRequest):
    from .lifting import CLOSURE_TOL

    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    closure = _tol(req.closure_tol, CLOSURE_TOL)
    poly = _spherical(req.polygon)
    base = pr.parse_point(req.base) if req.base is not None else (0, 0, 0)
    weights = lift_weights(poly, tol, closure)
    lifted = lift(poly, base, tol, closure, weights=weights)
    return LiftResponse(
        polygon=dump_polygon(lifted),
        weights=_format_scalars(weights.lambdas),
        weight_sum=float(weights.weight_sum()),
        closure_residual=weights.closure_residual(poly),
    )


@app.post("/reduce", response_model=ReduceResponse)
def reduce_endpoint(req: PolygonRequest):
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    trace = reduce_to_base(_spherical(req.polygon), tol)
    return ReduceResponse(**trace_to_json(trace))


@app.post("/area", response_model=AreaResponse)
def area_endpoint(req: AreaRequest):
    from .applications import PLANAR_TOL

    poly = _spherical(req.polygon)
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    planar_tol = _tol(req.planar_tol, PLANAR_TOL)
    areas = region_areas(poly, tol, planar_tol)
    return AreaResponse(area1=areas.area1, area2=areas.area2,
                        planar=is_planar(poly, planar_tol))


@app.post("/tennis-ball", response_model=TennisBallResponse)
def tennis_ball_endpoint(req: TennisBallRequest):
    from .applications import EQUAL_AREA_TOL, PLANAR_TOL

    poly = _spherical(req.polygon)
    report = tennis_ball_check(
        poly,
        _tol(req.degeneracy_tol, pr.DEGENERACY_TOL),
        _tol(req.equal_area_tol, EQUAL_AREA_TOL),
        _tol(req.planar_tol, PLANAR_TOL),
    )
    return TennisBallResponse(
        equal_area=report.equal_area,
        inflections=report.inflections,
        theorem_holds=report.theorem_holds,
        planar=report.planar,
        area1=report.areas.area1,
        area2=report.areas.area2,
    )


@app.post("/mobius", response_model=MobiusResponse)
def mobius_endpoint(req: MobiusRequest):
    from .applications import PLANAR_TOL

    poly = _spherical(req.polygon)
    report = mobius_check(
        poly,
        _tol(req.degeneracy_tol, pr.DEGENERACY_TOL),
        _tol(req.planar_tol, PLANAR_TOL),
    )
    return MobiusResponse(
        inflections=report.inflections,
        paired=[[a + 1, b + 1] for a, b in report.paired],
        theorem_holds=report.theorem_holds,
        planar=report.planar,
    )


@app.post("/triangulate", response_model=TriangulationResponse)
def triangulate_endpoint(req: PolygonRequest):
    tol = _tol(req.degeneracy_tol, pr.DEGENERACY_TOL)
    tri = triangulate_regions(_spherical(req.polygon), tol)
    data = triangulation_to_json(tri)
    return TriangulationResponse(
        triangles=data["triangles"],
        region=data["region"],
        area1=tri.region_area(1),
        area2=tri.region_area(2),
    )


@app.post("/perturb", response_model=PolygonResponse)
def perturb_endpoint(req: PerturbRequest):
    poly = _spherical(req.polygon)
    moved = perturb_to_general_position(poly, req.seed, req.magnitude, req.max_retries)
    return PolygonResponse(polygon=dump_polygon(moved))


@app.post("/certify", response_model=CertifyResponse)
def certify_endpoint(req: CertifyRequest):
    config = GeneratorConfig(
        seed=req.seed,
        n_range=(req.n_min, req.n_max),
        attempts=req.attempts,
        trials=req.trials,
    )
    report = certify_all(config, claims=req.claims)
    return CertifyResponse(**report.to_json())


@app.post("/plot-data", response_model=PlotDataResponse)
def plot_data_endpoint(req: PlotDataRequest):
    poly = load_polygon(req.polygon.model_dump())
    return PlotDataResponse(polylines=plot_polylines(poly, req.samples))
