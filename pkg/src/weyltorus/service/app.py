"""FastAPI wiring: thin routes over the api handlers.

Domain failures (degenerate configurations, poles, singular solves) map to
422 with a typed error body; malformed domain descriptions inside valid JSON
map to 400; schema violations are FastAPI's native 422.
"""
from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import DomainError
from . import api
from .models import (ClassResponse, DynkinResponse, ErrorBody,
                     LatticeActRequest, LatticeDynkinRequest,
                     LatticeMatrixRequest, LatticeOrbitRequest,
                     LatticeOrbitResponse, MatrixResponse, OrbitRequest,
                     OrbitResponse, VerifyRequest, VerifyResponse)


def create_app() -> FastAPI:
    app = FastAPI(title="weyltorus",
                  description="Birational Weyl group actions on point "
                              "configurations over an elliptic curve")

    @app.exception_handler(api.ParseFailure)
    async def _parse_failure(request: Request, exc: api.ParseFailure):
        return JSONResponse(status_code=400,
                            content=ErrorBody(error=str(exc), kind="parse").model_dump())

    @app.exception_handler(DomainError)
    async def _domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=422,
                            content=ErrorBody(error=str(exc),
                                              kind=type(exc).__name__).model_dump())

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/lattice/act", response_model=ClassResponse)
    async def lattice_act(req: LatticeActRequest):
        return api.lattice_act(req)

    @app.post("/lattice/matrix", response_model=MatrixResponse)
    async def lattice_matrix(req: LatticeMatrixRequest):
        return api.lattice_matrix(req)

    @app.post("/lattice/dynkin", response_model=DynkinResponse)
    async def lattice_dynkin(req: LatticeDynkinRequest):
        return api.lattice_dynkin(req)

    @app.post("/lattice/orbit", response_model=LatticeOrbitResponse)
    async def lattice_orbit(req: LatticeOrbitRequest):
        return api.lattice_orbit(req)

    @app.post("/orbit", response_model=OrbitResponse)
    async def param_orbit(req: OrbitRequest):
        return api.param_orbit(req)

    @app.post("/verify", response_model=VerifyResponse)
    async def run_verify(req: VerifyRequest):
        return api.run_verify(req)

    return app


app = create_app()
