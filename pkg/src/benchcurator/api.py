"""HTTP/JSON surface over the curation engine.

Error bodies always carry {code, message, field?}: 400 validation,
404 unknown id, 409 illegal transition or state error.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .metrics import StateError
from .samples import ValidationError
from .service import CurationService, NotFoundError, TransitionError


def _error(status: int, code: str, message: str, field: str | None = None) -> JSONResponse:
    body = {"code": code, "message": message}
    if field is not None:
        body["field"] = field
    return JSONResponse(status_code=status, content=body)


def create_app(service: CurationService) -> FastAPI:
    app = FastAPI(title="benchcurator")
    app.state.service = service

    @app.exception_handler(ValidationError)
    async def _validation(request: Request, exc: ValidationError):
        first = exc.errors[0] if exc.errors else {"field": None, "message": str(exc)}
        return _error(400, "validation", first["message"], first.get("field"))

    @app.exception_handler(NotFoundError)
    async def _not_found(request: Request, exc: NotFoundError):
        return _error(404, "not_found", exc.message)

    @app.exception_handler(TransitionError)
    async def _transition(request: Request, exc: TransitionError):
        return _error(409, "illegal_transition", str(exc))

    @app.exception_handler(StateError)
    async def _state(request: Request, exc: StateError):
        return _error(409, "state_error", str(exc))

    @app.post("/samples")
    async def create_sample(body: dict):
        sample = service.create_sample(
            premise=body.get("premise", ""),
            hypothesis=body.get("hypothesis", ""),
            label=body.get("label", ""),
            split=body.get("split", "train"),
            author=body.get("author", ""),
            sample_id=body.get("id"),
        )
        return sample.to_dict()

    @app.post("/samples/{sample_id}/evaluate")
    async def evaluate_sample(sample_id: str):
        return service.evaluate_sample(sample_id).to_dict()

    @app.post("/samples/{sample_id}/autofix")
    async def autofix_sample(sample_id: str, body: dict | None = None):
        body = body or {}
        trace = service.autofix_sample(
            sample_id,
            target=body.get("target", "yellow"),
            max_iter=int(body.get("max_iter", 10)),
        )
        return trace.to_dict()

    @app.post("/samples/{sample_id}/submit")
    async def submit(sample_id: str):
        return service.submit(sample_id)

    @app.get("/queue/batches")
    async def batches():
        return service.list_batches()

    @app.post("/batches/{batch_id}/decide")
    async def decide(batch_id: int, body: dict):
        return service.decide(
            batch_id,
            body.get("sample_id", ""),
            body.get("action", ""),
            body.get("analyst", ""),
        )

    @app.post("/batches/{batch_id}/undo")
    async def undo(batch_id: int, body: dict):
        return service.undo_decision(
            batch_id, body.get("sample_id", ""), body.get("analyst", "")
        )

    @app.get("/workers/{worker_id}/stats")
    async def worker_stats(worker_id: str):
        return service.worker_feedback(worker_id)

    @app.get("/viz/{component}")
    async def viz(component: str, request: Request):
        return service.viz_data(component, dict(request.query_params))

    @app.post("/corpus/split/randomize")
    async def split_randomize():
        return service.randomize_split()

    @app.post("/corpus/split/undo")
    async def split_undo():
        return service.undo_split()

    @app.post("/corpus/split/save")
    async def split_save():
        return service.save_split()

    @app.get("/corpus/report")
    async def corpus_report(top: int = 5):
        return service.corpus_report(top_k=top)

    @app.get("/config")
    async def get_config():
        return service.get_config()

    @app.put("/config")
    async def put_config(body: dict):
        return service.put_config(body)

    return app
