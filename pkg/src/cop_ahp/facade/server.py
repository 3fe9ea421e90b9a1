"""HTTP service exposing analysis, prioritization, revision, and simulation."""

from __future__ import annotations

import json
import threading
import time
import uuid

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from ..errors import (
    CopAhpError,
    ParseError,
    ReciprocityBroken,
    RevisionInfeasible,
    TimeLimitReached,
)
from ..prioritize import MethodId
from ..revise import RevisionConstraints, revise
from ..simbench import GenConfig, run_nv_experiment, run_revision_experiment
from .io import parse_json_document, parse_value
from .report import analysis_payload, prioritize_payload, revision_payload
from .sessions import SessionStore

_METHOD_NAMES = {m.value.lower(): m for m in MethodId}


class ApiError(Exception):
    """Domain error carrying its HTTP status and structured body."""

    def __init__(self, status: int, code: str, message: str, details=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.message = message
        self.details = details or {}

    def response(self) -> JSONResponse:
        return JSONResponse(
            status_code=self.status,
            content={
                "code": self.code,
                "message": self.message,
                "details": self.details,
            },
        )


def _api_error_from(exc: Exception) -> ApiError:
    if isinstance(exc, ApiError):
        return exc
    if isinstance(exc, ParseError):
        return ApiError(400, "ParseError", str(exc))
    if isinstance(exc, RevisionInfeasible):
        return ApiError(
            422,
            "RevisionInfeasible",
            str(exc),
            {"pins": [[i + 1, j + 1] for (i, j) in exc.pins]},
        )
    if isinstance(exc, TimeLimitReached):
        return ApiError(503, "TimeLimitReached", str(exc))
    if isinstance(exc, CopAhpError):
        # ReciprocityBroken and the other validation errors land here.
        return ApiError(422, type(exc).__name__, str(exc))
    if isinstance(exc, (ValueError, TypeError, KeyError)):
        return ApiError(400, "BadRequest", str(exc))
    raise exc


def _parse_matrix_body(body) -> tuple:
    if not isinstance(body, dict):
        raise ApiError(400, "ParseError", "request body must be a JSON object")
    return parse_json_document(json.dumps(body))


def _parse_pins_body(body) -> dict:
    items = body.get("pins") if isinstance(body, dict) else None
    if not isinstance(items, list):
        raise ApiError(400, "BadRequest", 'body must contain a "pins" list')
    pins = {}
    for item in items:
        if not (isinstance(item, list) and len(item) == 3):
            raise ApiError(400, "BadRequest", f"bad pin item: {item!r}")
        i, j, value = item
        if not (isinstance(i, int) and isinstance(j, int)):
            raise ApiError(400, "BadRequest", "pin indices must be integers")
        pins[(i - 1, j - 1)] = parse_value(value)
    return pins


def create_app() -> FastAPI:
    app = FastAPI(title="cop-ahp")
    matrices: dict = {}
    matrices_lock = threading.Lock()
    sessions = SessionStore()

    @app.exception_handler(ApiError)
    async def _handle_api_error(request: Request, exc: ApiError):  # noqa: ARG001
        return exc.response()

    @app.exception_handler(CopAhpError)
    async def _handle_domain_error(request: Request, exc: CopAhpError):  # noqa: ARG001
        return _api_error_from(exc).response()

    @app.exception_handler(ValueError)
    async def _handle_value_error(request: Request, exc: ValueError):  # noqa: ARG001
        return _api_error_from(exc).response()

    def _get_matrix(matrix_id: str):
        with matrices_lock:
            entry = matrices.get(matrix_id)
        if entry is None:
            raise ApiError(404, "NotFound", f"no matrix {matrix_id!r}")
        return entry

    def _get_session(session_id: str):
        session = sessions.get(session_id)
        if session is None:
            raise ApiError(404, "NotFound", f"no session {session_id!r}")
        return session

    @app.post("/matrices")
    async def post_matrix(request: Request):
        pcm, labels = _parse_matrix_body(await request.json())
        matrix_id = uuid.uuid4().hex
        with matrices_lock:
            matrices[matrix_id] = (pcm, labels)
        return {"id": matrix_id, "n": pcm.n, "on_scale": pcm.on_scale}

    @app.get("/matrices/{matrix_id}/analysis")
    def get_analysis(matrix_id: str):
        pcm, labels = _get_matrix(matrix_id)
        return analysis_payload(pcm, labels)

    @app.post("/matrices/{matrix_id}/prioritize")
    async def post_prioritize(matrix_id: str, request: Request):
        pcm, _ = _get_matrix(matrix_id)
        body = await request.json()
        if not isinstance(body, dict):
            raise ApiError(400, "BadRequest", "body must be a JSON object")
        name = str(body.get("method", "llsm")).lower()
        method = _METHOD_NAMES.get(name)
        if method is None:
            raise ApiError(
                400, "BadRequest", f"unknown method {name!r}",
                {"methods": sorted(_METHOD_NAMES)},
            )
        mnv = bool(body.get("mnv", False))
        time_limit = float(body.get("time_limit", 60.0))
        return prioritize_payload(pcm, method, mnv, time_limit=time_limit)

    @app.post("/sessions")
    async def post_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "matrix" not in body:
            raise ApiError(400, "BadRequest", 'body must contain "matrix"')
        pcm, labels = _parse_matrix_body(body["matrix"])
        session = sessions.create(pcm, labels)
        session.record("analysis", analysis_payload(pcm, labels))
        return {"id": session.id, "n": pcm.n}

    @app.post("/sessions/{session_id}/pins")
    async def post_pins(session_id: str, request: Request):
        session = _get_session(session_id)
        pins = _parse_pins_body(await request.json())
        try:
            normalized = session.set_pins(pins)
        except ValueError as exc:
            raise ApiError(400, "BadRequest", str(exc)) from exc
        payload = {
            "pins": [[i + 1, j + 1, value] for (i, j), value in
                     sorted(normalized.items())],
        }
        session.record("pins", payload)
        return payload

    @app.post("/sessions/{session_id}/revise")
    async def post_revise(session_id: str, request: Request):
        session = _get_session(session_id)
        body = await request.json() if await request.body() else {}
        if not isinstance(body, dict):
            raise ApiError(400, "BadRequest", "body must be a JSON object")
        constraints = RevisionConstraints(
            gci_bar=body.get("gci_bar"),
            alpha=float(body.get("alpha", 1000.0)),
            pinned=dict(session.pins),
            time_limit=float(body.get("time_limit", 600.0)),
        )
        if not session.lock.acquire(blocking=False):
            raise ApiError(
                409, "SessionBusy",
                "a revise job is already running for this session",
            )
        try:
            start = time.monotonic()
            events = []

            def on_incumbent(result):
                events.append({
                    "incumbent_j": result.j_value,
                    "gap": None,
                    "elapsed": time.monotonic() - start,
                })

            result = revise(session.original, constraints,
                            on_incumbent=on_incumbent)
            events.append({
                "incumbent_j": result.j_value,
                "gap": 0.0 if result.status == "Optimal" else None,
                "elapsed": time.monotonic() - start,
            })
            payload = {"result": revision_payload(result), "events": events}
            session.record("revise", payload)
            return payload
        finally:
            session.lock.release()

    @app.get("/sessions/{session_id}/history")
    def get_history(session_id: str):
        session = _get_session(session_id)
        return {"id": session.id, "history": list(session.history)}

    @app.post("/simulate")
    async def post_simulate(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "n" not in body:
            raise ApiError(400, "BadRequest", 'body must contain "n"')
        cr_filter = None
        if body.get("cr_band") is not None:
            lo, hi = body["cr_band"]
            cr_filter = (float(lo), float(hi))
        try:
            cfg = GenConfig(
                n=int(body["n"]),
                count=int(body.get("count", 200)),
                seed=int(body.get("seed", 0)),
                cr_filter=cr_filter,
            )
        except ValueError as exc:
            raise ApiError(400, "BadRequest", str(exc)) from exc
        time_limit = float(body.get("time_limit", 60.0))
        mode = body.get("mode", "nv")
        if mode == "nv":
            methods = [str(m).upper() for m in
                       body.get("methods", ["LLSM", "MNVDM"])]
            try:
                rows = run_nv_experiment(cfg, methods, time_limit=time_limit)
            except ValueError as exc:
                raise ApiError(400, "BadRequest", str(exc)) from exc
            return {
                "mode": "nv",
                "rows": [
                    {"n": r.n, "method": r.method, "mean_nv": r.mean_nv,
                     "mean_time_s": r.mean_time, "count": r.count,
                     "skipped": r.skipped}
                    for r in rows
                ],
            }
        if mode == "revision":
            summary = run_revision_experiment(cfg, time_limit=time_limit)
            return {
                "mode": "revision",
                "summary": {
                    "n": summary.n, "mean_npr": summary.mean_npr,
                    "mean_aoc": summary.mean_aoc, "mean_nv": summary.mean_nv,
                    "count": summary.count, "skipped": summary.skipped,
                    "widened": summary.widened,
                },
            }
        raise ApiError(400, "BadRequest", f"unknown mode {mode!r}")

    return app


app = create_app()
