"""HTTP API exposing the generator, boundaries, editing, and reports."""

import time

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import HTMLResponse, Response
from pydantic import BaseModel

from . import oracle, pipeline, session as session_mod
from .errors import HypersemError, NoConvergence, ValidationError
from .faces import FaceParams, render
from .oracle import GeneratorSpec
from .store import BoundaryStore

DEFAULT_FIT_SAMPLE_CAP = 20_000


class EditBody(BaseModel):
    attribute: str
    alpha: float
    conditions: list[str] = []


class SampleBody(BaseModel):
    seed: int | None = None


class InvertBody(BaseModel):
    target: dict
    init_seed: int = 0


class FitBody(BaseModel):
    count: int = DEFAULT_FIT_SAMPLE_CAP
    k: int = 500
    seed: int = 0
    attributes: list[str] | None = None


def create_app(gen: GeneratorSpec, store: BoundaryStore,
               fit_sample_cap: int = DEFAULT_FIT_SAMPLE_CAP) -> FastAPI:
    app = FastAPI(title="hypersem", version="0.1.0")
    # the browser editor is served separately during development
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    state = {"session": None, "dataset": None}
    store.load_all()

    def boundaries():
        if not store.loaded:
            raise HTTPException(
                status_code=409,
                detail="no boundaries loaded; save some or POST /api/boundaries/fit",
            )
        return store.loaded

    def current_session() -> session_mod.SessionState:
        if state["session"] is None:
            raise HTTPException(status_code=409, detail="no session; POST /api/sample first")
        return state["session"]

    @app.exception_handler(HypersemError)
    async def _domain_error(request, exc):
        from fastapi.responses import JSONResponse

        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/api/generator")
    def generator_info():
        return {
            "config": gen.config(),
            "attributes": list(gen.attributes),
            "boundaries_loaded": sorted(store.loaded),
        }

    @app.post("/api/sample")
    def sample(body: SampleBody):
        seed = body.seed if body.seed is not None else int(time.time_ns() % (2**63))
        state["session"] = session_mod.sample_session(gen, dict(store.loaded), seed)
        return state["session"].view()

    @app.post("/api/edit")
    def edit(body: EditBody):
        req = session_mod.ManipulationRequest(
            attribute=body.attribute, alpha=body.alpha, conditions=tuple(body.conditions)
        )
        return session_mod.api_edit(current_session(), req)

    @app.post("/api/invert")
    def invert(body: InvertBody):
        target = FaceParams.from_dict(body.target)
        try:
            result = oracle.invert(gen, target, init_seed=body.init_seed)
        except NoConvergence as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        sess = session_mod.SessionState(gen, boundaries(), result.code, seed=body.init_seed)
        state["session"] = sess
        payload = sess.view()
        payload["objective"] = result.objective
        payload["iterations"] = result.iterations
        payload["saturated"] = result.saturated
        return payload

    @app.get("/api/boundaries")
    def list_boundaries():
        return {
            name: {
                "space": d.space,
                "dim": d.dim,
                "intercept": d.intercept,
                "meta": {
                    "seed": d.meta.seed,
                    "train_count": d.meta.train_count,
                    "val_accuracy": d.meta.val_accuracy,
                },
            }
            for name, d in store.loaded.items()
        }

    @app.post("/api/boundaries/fit")
    def fit_boundaries(body: FitBody):
        count = min(int(body.count), fit_sample_cap)
        ds = pipeline.synthesize_dataset(gen, count, body.seed)
        if 2 * body.k > count:
            raise ValidationError(f"k={body.k} too large for {count} samples")
        bs, stats = pipeline.fit_all_boundaries(ds, gen, k=body.k, seed=body.seed)
        names = body.attributes or bs.names()
        for name in names:
            store.save(bs.direction(name))
        state["dataset"] = ds
        return {
            "fitted": names,
            "stats": [
                {
                    "attribute": s.attribute,
                    "train_accuracy": s.train_accuracy,
                    "val_accuracy": s.val_accuracy,
                    "full_set_accuracy": s.full_set_accuracy,
                }
                for s in stats
            ],
        }

    @app.get("/api/correlations")
    def correlations(count: int = 20_000, seed: int = 0):
        ds = state["dataset"]
        if ds is None or ds.count < 2:
            ds = pipeline.synthesize_dataset(gen, min(count, fit_sample_cap), seed)
            state["dataset"] = ds
        loaded = boundaries()
        missing = [a for a in gen.attributes if a not in loaded]
        if missing:
            raise HTTPException(status_code=409, detail=f"boundaries missing for {missing}")
        from .pipeline import BoundarySet
        from .svm import TrainedBoundary

        bs = BoundarySet(
            boundaries={n: TrainedBoundary(d, 1.0, None) for n, d in loaded.items()},
            space="Z",
        )
        report = pipeline.correlation_report(ds, bs, gen)
        return report.to_dict()

    @app.get("/api/render/current")
    def render_current():
        sess = current_session()
        params = oracle.face_params(gen, sess.current)
        return Response(content=render(params), media_type="image/svg+xml")

    @app.get("/", response_class=HTMLResponse)
    def index():
        return (
            "<html><body><h1>hypersem service</h1>"
            "<p>Endpoints: GET /api/generator, POST /api/sample, POST /api/edit, "
            "POST /api/invert, GET /api/boundaries, POST /api/boundaries/fit, "
            "GET /api/correlations, GET /api/render/current</p></body></html>"
        )

    return app
