"""HTTP/JSON facade over the repository, query language, decision sessions,
and plan synthesis.

All endpoints live under ``/api/v1``. Every non-2xx response body is a single
error object ``{code, message, detail?}``. Session state is held in memory
with a TTL; the repository stays the only durable store.
"""

from __future__ import annotations

import os
import threading
import time
import uuid
from typing import Optional

from fastapi import Body, FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse
from pydantic import BaseModel

from . import decision, query, repository, synthesis
from .errors import DlomError
from .schema import (
    OBJECTIVES,
    ModelRecord,
    Objective,
    record_from_dict,
    record_to_dict,
)

__all__ = ["create_app", "serve", "DEFAULT_REPO_ROOT"]

DEFAULT_REPO_ROOT = "./dlom-repo"
API = "/api/v1"


def _error_response(status: int, code: str, message: str, detail=None) -> JSONResponse:
    body = {"code": code, "message": message}
    if detail is not None:
        body["detail"] = detail
    return JSONResponse(status_code=status, content=body)


class SessionNotFoundError(DlomError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"no session with id {session_id!r} (it may have expired)")


class _SessionEntry:
    def __init__(self, session: decision.DssSession, expires_at: float):
        self.session = session
        self.expires_at = expires_at
        self.lock = threading.Lock()


class _SessionStore:
    """In-memory sessions with TTL expiry; one lock per session id."""

    def __init__(self, ttl_s: float, clock=time.monotonic):
        self.ttl_s = ttl_s
        self.clock = clock
        self._entries: dict[str, _SessionEntry] = {}
        self._lock = threading.Lock()

    def create(self) -> decision.DssSession:
        session = decision.DssSession(id=uuid.uuid4().hex)
        with self._lock:
            self._entries[session.id] = _SessionEntry(
                session, self.clock() + self.ttl_s
            )
        return session

    def entry(self, session_id: str) -> _SessionEntry:
        now = self.clock()
        with self._lock:
            expired = [k for k, e in self._entries.items() if e.expires_at <= now]
            for key in expired:
                del self._entries[key]
            entry = self._entries.get(session_id)
            if entry is None:
                raise SessionNotFoundError(session_id)
            entry.expires_at = now + self.ttl_s
            return entry


class _QueryBody(BaseModel):
    query: str


class _ComparisonBody(BaseModel):
    more: str
    less: str
    intensity: str


class _ChooseBody(BaseModel):
    model_id: str


class _BuildNewBody(BaseModel):
    max_methods: Optional[int] = None


def _parse_comparisons(items: list[_ComparisonBody]) -> list[decision.PairwiseComparison]:
    parsed = []
    for item in items:
        try:
            parsed.append(
                decision.PairwiseComparison(
                    more_important=Objective(item.more.lower()),
                    less_important=Objective(item.less.lower()),
                    intensity=decision.Intensity(item.intensity.lower()),
                )
            )
        except ValueError as err:
            raise _BadRequest(f"invalid comparison {item.model_dump()}: {err}")
    return parsed


class _BadRequest(Exception):
    def __init__(self, message: str, detail=None):
        self.message = message
        self.detail = detail
        super().__init__(message)


class _ReadOnly(Exception):
    pass


def _weights_json(weights) -> dict[str, float]:
    return {o.value: round(weights[o], 6) for o in OBJECTIVES}


def _contributions(weights, record: ModelRecord) -> dict[str, float]:
    return {o.value: round(weights[o] * record.rating[o], 6) for o in OBJECTIVES}


def model_card(record: ModelRecord) -> dict:
    """The result-card fields the wizard renders for one model."""
    perf = record.performance
    return {
        "total_cost": f"{record.total_cost:.2f}",
        "purpose": record.purpose,
        "rating": round(record.rating_aggregate, 4),
        "year_created": record.created_year,
        "application_area": record.application_area,
        "num_iot_devices": record.num_iot_devices,
        "cost_per_device": f"{float(record.total_cost) / record.num_iot_devices:.2f}",
        "device_name": record.device.name,
        "dln_name": record.dln.name,
        "cloud_host": record.cloud.host_address,
        "accuracy_pct": None if perf is None else perf.accuracy_pct,
        "system_latency_ms": None if perf is None else perf.system_latency_ms,
        "inference_latency_ms": None if perf is None else perf.inference_latency_ms,
        "stability_pct": None if perf is None else perf.stability_pct,
        "runtime_memory_mb": None if perf is None else perf.runtime_memory_mb,
        "optimization_methods": record.optimization.method_names(),
    }


def _session_view(session: decision.DssSession) -> dict:
    return {
        "id": session.id,
        "state": session.state.value,
        "criteria": None
        if session.criteria is None
        else query.print_query(session.criteria),
        "candidates": session.candidates,
        "weights": None if session.weights is None else _weights_json(session.weights),
        "ranking": [{"id": mid, "score": score} for mid, score in session.ranking],
        "outcome": None
        if session.outcome is None
        else {"kind": session.outcome.kind.value, "model_id": session.outcome.model_id},
    }


def create_app(
    repo_root: str | None = None,
    read_only: bool = False,
    session_ttl_s: float = 3600.0,
    clock=time.monotonic,
) -> FastAPI:
    """Build the service around a repository root.

    ``repo_root`` defaults to the DLOM_REPO environment variable, then to
    ``./dlom-repo``. With ``read_only`` set, endpoints that mutate the
    repository are rejected.
    """
    root = repo_root or os.environ.get("DLOM_REPO") or DEFAULT_REPO_ROOT
    repo = repository.Repository(root)
    sessions = _SessionStore(session_ttl_s, clock)
    app = FastAPI(title="dlom", version="0.1.0")
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )
    app.state.repository = repo
    app.state.read_only = read_only

    def guard_writes():
        if read_only:
            raise _ReadOnly()

    # -- error mapping --------------------------------------------------

    @app.exception_handler(repository.ModelNotFoundError)
    async def _not_found(request: Request, err):
        return _error_response(404, "not_found", str(err))

    @app.exception_handler(SessionNotFoundError)
    async def _session_not_found(request: Request, err):
        return _error_response(404, "not_found", str(err))

    @app.exception_handler(repository.DuplicateModelError)
    async def _conflict(request: Request, err):
        return _error_response(409, "conflict", str(err))

    @app.exception_handler(repository.ValidationFailedError)
    async def _invalid(request: Request, err):
        detail = [{"field": v.field, "rule": v.rule} for v in err.violations]
        return _error_response(400, "bad_request", str(err), detail)

    @app.exception_handler(query.QuerySyntaxError)
    async def _syntax(request: Request, err):
        return _error_response(
            400, "bad_request", str(err), {"line": err.line, "column": err.column}
        )

    @app.exception_handler(query.QueryError)
    async def _query_error(request: Request, err):
        return _error_response(400, "bad_request", str(err))

    @app.exception_handler(decision.ProtocolError)
    async def _protocol(request: Request, err):
        return _error_response(
            409,
            "protocol_error",
            str(err),
            {"state": err.state.value, "event": type(err.event).__name__},
        )

    @app.exception_handler(_BadRequest)
    async def _bad_request(request: Request, err):
        return _error_response(400, "bad_request", err.message, err.detail)

    @app.exception_handler(_ReadOnly)
    async def _read_only(request: Request, err):
        return _error_response(403, "bad_request", "service is read-only")

    @app.exception_handler(RequestValidationError)
    async def _malformed(request: Request, err):
        return _error_response(400, "bad_request", "malformed request body", err.errors())

    @app.exception_handler(DlomError)
    async def _domain(request: Request, err):
        return _error_response(400, "bad_request", str(err))

    @app.exception_handler(Exception)
    async def _internal(request: Request, err):
        return _error_response(500, "internal", f"{type(err).__name__}: {err}")

    # -- models ----------------------------------------------------------

    @app.get(API + "/models")
    def list_models():
        return [record_to_dict(r) for r in repo.list_models()]

    @app.post(API + "/models", status_code=201)
    def add_model(payload: dict = Body(...)):
        guard_writes()
        try:
            record = record_from_dict(payload)
        except (KeyError, TypeError, ValueError) as err:
            raise _BadRequest(f"malformed model record: {err}")
        return {"id": repo.add_model(record)}

    @app.get(API + "/models/{model_id}")
    def get_model(model_id: str):
        return record_to_dict(repo.get_model(model_id))

    @app.delete(API + "/models/{model_id}")
    def remove_model(model_id: str):
        guard_writes()
        return record_to_dict(repo.remove_model(model_id))

    @app.get(API + "/models/{model_id}/triples", response_class=PlainTextResponse)
    def model_triples(model_id: str):
        return repository.format_ntriples(repo.export_triples(model_id))

    # -- query & effects ---------------------------------------------------

    @app.post(API + "/query")
    def run_query(body: _QueryBody):
        parsed = query.parse_query(body.query)
        matches = query.evaluate(parsed, repo.list_models())
        return {
            "models": [record_to_dict(r) for r in matches],
            "canonical": query.print_query(parsed),
        }

    @app.get(API + "/effects")
    def effects():
        matrix = synthesis.effect_matrix()
        return {
            "objectives": [o.value for o in OBJECTIVES],
            "methods": [
                {
                    "name": method.value,
                    "effects": {o.value: signs[o] for o in OBJECTIVES},
                }
                for method, signs in matrix.effects.items()
            ],
        }

    # -- sessions ----------------------------------------------------------

    @app.post(API + "/sessions", status_code=201)
    def create_session():
        session = sessions.create()
        return {"id": session.id}

    def _apply(session_id: str, *events) -> decision.DssSession:
        entry = sessions.entry(session_id)
        with entry.lock:
            session = entry.session
            for event in events:
                session = decision.advance_session(session, event)
            entry.session = session
        return session

    @app.post(API + "/sessions/{session_id}/criteria")
    def submit_criteria(session_id: str, body: _QueryBody):
        parsed = query.parse_query(body.query)
        return _session_view(_apply(session_id, decision.SubmitCriteria(parsed)))

    @app.post(API + "/sessions/{session_id}/run-query")
    def session_run_query(session_id: str):
        entry = sessions.entry(session_id)
        with entry.lock:
            session = decision.advance_session(
                entry.session, decision.RunQuery(tuple(repo.list_models()))
            )
            # one candidate needs no elicitation: jump straight to the ranking
            if len(session.candidate_records) == 1:
                session = decision.advance_session(session, decision.Rank())
            entry.session = session
        return _session_view(session)

    @app.post(API + "/sessions/{session_id}/comparisons")
    def submit_comparisons(session_id: str, body: list[_ComparisonBody]):
        comparisons = _parse_comparisons(body)
        return _session_view(
            _apply(
                session_id,
                decision.SubmitComparisons(tuple(comparisons)),
                decision.Rank(),
            )
        )

    @app.get(API + "/sessions/{session_id}/ranking")
    def ranking(session_id: str):
        entry = sessions.entry(session_id)
        with entry.lock:
            session = entry.session
        if session.state not in (decision.SessionState.RANKED, decision.SessionState.CLOSED) or not session.ranking:
            raise decision.ProtocolError(session.state, decision.Rank())
        by_id = {r.id: r for r in session.candidate_records}
        weights = session.weights
        top_id = session.ranking[0][0]
        return {
            "weights": _weights_json(weights),
            "consistency": round(session.consistency, 6),
            "ranking": [
                {
                    "id": mid,
                    "score": score,
                    "contributions": _contributions(weights, by_id[mid]),
                }
                for mid, score in session.ranking
            ],
            "top_model": {
                **model_card(by_id[top_id]),
                "id": top_id,
            },
        }

    @app.post(API + "/sessions/{session_id}/choose")
    def choose(session_id: str, body: _ChooseBody):
        entry = sessions.entry(session_id)
        with entry.lock:
            try:
                session = decision.advance_session(
                    entry.session, decision.Choose(body.model_id)
                )
            except ValueError as err:
                raise _BadRequest(str(err))
            entry.session = session
        return _session_view(session)

    @app.post(API + "/sessions/{session_id}/build-new")
    def build_new(session_id: str, body: Optional[_BuildNewBody] = None):
        guard_writes()
        max_methods = None if body is None else body.max_methods
        entry = sessions.entry(session_id)
        with entry.lock:
            session = decision.advance_session(
                entry.session, decision.BuildNew(max_methods)
            )
            repo.add_model(session.draft)
            entry.session = session
        return record_to_dict(session.draft)

    return app


def serve(
    port: int = 8000,
    repo_root: str | None = None,
    read_only: bool = False,
    host: str = "127.0.0.1",
):
    """Run the service until interrupted."""
    import uvicorn

    app = create_app(repo_root=repo_root, read_only=read_only)
    uvicorn.run(app, host=host, port=port, log_level="info")
