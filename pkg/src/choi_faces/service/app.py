"""FastAPI application over the library.

Domain failures map to HTTP statuses: a nonseparable decomposition or face
request returns 409 with the classification attached, any other domain
error (bad parameters, malformed certificates) returns 422.
"""

from __future__ import annotations

from fastapi import Body, FastAPI
from fastapi.responses import JSONResponse, PlainTextResponse

from .. import __version__
from ..errors import ChoiFacesError, NotSeparableError
from . import api, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="choi-faces",
        version=__version__,
        description="Classification, witnesses, separable decompositions "
        "and face reports for the two-qutrit state family A[a,b,c].",
    )

    @app.exception_handler(NotSeparableError)
    async def _not_separable(request, exc: NotSeparableError):
        content = {"detail": str(exc)}
        if exc.classification is not None:
            content["classification"] = {
                "verdict": exc.classification.verdict,
                "tolerance_used": exc.classification.tolerance_used,
            }
        return JSONResponse(status_code=409, content=content)

    @app.exception_handler(ChoiFacesError)
    async def _domain_error(request, exc: ChoiFacesError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(ValueError)
    async def _value_error(request, exc: ValueError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.get("/health")
    async def health():
        return {"status": "ok", "version": __version__}

    @app.post("/classify", response_model=schemas.ClassifyResponse)
    async def classify(req: schemas.ClassifyRequest):
        return api.classify_point(req.a, req.b, req.c, req.tol)

    @app.post("/decompose", response_model=schemas.DecompositionModel)
    async def decompose(req: schemas.DecomposeRequest):
        return api.decompose_point(req.a, req.b, req.c)

    @app.post("/verify", response_model=schemas.VerifyResponse)
    async def verify(doc: dict = Body(...)):
        return api.verify_certificate(doc)

    @app.post("/witness", response_model=schemas.WitnessResponse)
    async def witness(req: schemas.WitnessRequest):
        return api.witness_point(
            req.a, req.b, req.c, req.t_min, req.t_max, req.grid
        )

    @app.post("/face", response_model=schemas.FaceResponse)
    async def face(req: schemas.FaceRequest):
        return api.face_report(req.a, req.b, req.c, req.samples, req.seed)

    @app.post("/sweep")
    async def sweep(req: schemas.SweepRequest):
        text = api.sweep_csv(
            (req.a.lo, req.a.hi, req.a.steps),
            (req.b.lo, req.b.hi, req.b.steps),
            (req.c.lo, req.c.hi, req.c.steps),
        )
        return PlainTextResponse(text, media_type="text/csv")

    return app
