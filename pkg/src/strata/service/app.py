"""HTTP face of the calculator.

Every endpoint is stateless: requests carry their own extra data (same
schemas as the JSON data files) on top of the built-in catalog.  Domain
failures come back as HTTP 400 with a structured body whose ``kind``
distinguishes parse, validation and consistency problems; clients map
those to exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from ..engine import gsd
from ..errors import ConsistencyError, DslError, InvalidDataError, StrataError
from ..surface import parse_surface, total_genus
from ..workspace import Workspace
from .models import (
    CatalogAlgebra,
    CatalogCategory,
    CatalogResponse,
    CatalogWall,
    DataBundle,
    ErrorBody,
    GsdRequest,
    GsdResponse,
    Problem,
    ValidateRequest,
    ValidateResponse,
)

app = FastAPI(
    title="strata",
    description="exact ground-state degeneracy of decorated surfaces",
    version="0.1.0",
)


class _ServiceError(Exception):
    def __init__(self, body: ErrorBody):
        self.body = body


@app.exception_handler(_ServiceError)
async def _service_error(request, exc: _ServiceError):
    return JSONResponse(status_code=400, content=exc.body.model_dump())


def _problem_of(exc: StrataError) -> Problem:
    if isinstance(exc, DslError):
        return Problem(kind="parse", message=exc.message, line=exc.line, col=exc.col)
    if isinstance(exc, InvalidDataError):
        return Problem(kind="validation", message=str(exc))
    if isinstance(exc, ConsistencyError):
        return Problem(kind="consistency", message=str(exc))
    return Problem(kind="structure", message=str(exc))


def _load_bundle(bundle: DataBundle) -> Workspace:
    env = Workspace.with_builtins()
    try:
        for cat in bundle.categories:
            env.add_category_dict(cat.model_dump())
        for wall in bundle.walls:
            env.add_wall_dict(wall.model_dump(by_alias=True))
        for algebra in bundle.algebras:
            env.add_algebra_dict(algebra.model_dump())
    except StrataError as exc:
        problem = _problem_of(exc)
        raise _ServiceError(ErrorBody(kind=problem.kind, problems=[problem])) from exc
    return env


@app.get("/catalog", response_model=CatalogResponse)
def catalog() -> CatalogResponse:
    env = Workspace.with_builtins()
    return CatalogResponse(
        categories=[
            CatalogCategory(
                name=name, rank=md.rank, total_dim=md.total_dim, labels=list(md.labels)
            )
            for name, md in env.categories.items()
        ],
        walls=[
            CatalogWall(name=name, from_cat=w.from_cat.name, to_cat=w.to_cat.name)
            for name, w in env.walls.items()
        ],
        algebras=[
            CatalogAlgebra(
                name=name,
                category=a.category.name,
                support=[a.category.labels[i] for i, m in enumerate(a.vector.mult) if m],
            )
            for name, a in env.algebras.items()
        ],
    )


@app.post("/validate", response_model=ValidateResponse)
def validate(request: ValidateRequest) -> ValidateResponse:
    problems: list[Problem] = []
    try:
        env = _load_bundle(request.data)
    except _ServiceError as exc:
        return ValidateResponse(valid=False, problems=exc.body.problems)
    for v in env.validate_all():
        problems.append(Problem(kind="validation", message=str(v)))
    for text in request.surfaces:
        try:
            spec = parse_surface(text, env)
        except DslError as exc:
            problems.append(_problem_of(exc))
            continue
        from ..surface import validate_surface

        for v in validate_surface(spec):
            problems.append(Problem(kind="validation", message=str(v)))
    return ValidateResponse(valid=not problems, problems=problems)


@app.post("/gsd", response_model=GsdResponse)
def compute_gsd(request: GsdRequest) -> GsdResponse:
    env = _load_bundle(request.data)
    try:
        spec = parse_surface(request.surface, env)
        result = gsd(spec, method=request.method, order=request.order, trace=request.trace)
    except StrataError as exc:
        problem = _problem_of(exc)
        raise _ServiceError(ErrorBody(kind=problem.kind, problems=[problem])) from exc
    return GsdResponse(value=result.value, genus=total_genus(spec), trace=list(result.trace))
