"""HTTP surface binding documents, carts, mutants, and telemetry.

Endpoints:
  POST /sessions                      create a session
  GET  /sessions/{id}                 full session view
  POST /sessions/{id}/commands        apply one kind-tagged command
  GET  /sessions/{id}/telemetry       log-derived aggregates
  GET  /sessions/{id}/events?since=N  incremental event fetch
  GET  /healthz                       liveness + provider health
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import session as session_mod
from .cart import MODE_BASELINE, MODE_FULL, ExplorationPolicy
from .config import AppConfig
from .errors import (
    DepthCapExceeded,
    EmptyDocument,
    MalformedCommand,
    ProviderError,
    SelectionCapExceeded,
    StaleVariation,
    StoryweaveError,
    UnknownNode,
    UnknownSession,
    UnknownVariation,
)
from .gateway import ProviderConfig, make_provider
from .store import SessionStore

_STATUS_BY_ERROR = {
    UnknownSession: 404,
    UnknownNode: 404,
    UnknownVariation: 404,
    MalformedCommand: 400,
    EmptyDocument: 400,
    DepthCapExceeded: 409,
    SelectionCapExceeded: 409,
    StaleVariation: 409,
    ProviderError: 502,
}


def _status_for(exc: StoryweaveError) -> int:
    for klass, status in _STATUS_BY_ERROR.items():
        if isinstance(exc, klass):
            return status
    return 400


def _policy_from_body(body: dict, config: AppConfig) -> ExplorationPolicy:
    spec = body.get("policy") or {}
    mode = spec.get("mode", config.mode)
    root_count = int(spec.get("root_count", config.root_count))
    sub_count = int(spec.get("sub_count", config.sub_count))
    if mode == MODE_BASELINE:
        return ExplorationPolicy.baseline(root_count=root_count, sub_count=sub_count)
    if mode == MODE_FULL:
        return ExplorationPolicy.full(root_count=root_count, sub_count=sub_count)
    raise MalformedCommand(f"unknown policy mode {mode!r}")


def create_app(config: AppConfig | None = None, store: SessionStore | None = None) -> FastAPI:
    config = config or AppConfig()

    def provider_factory():
        return make_provider(
            config.provider_kind,
            ProviderConfig(
                endpoint=config.provider_endpoint,
                model=config.provider_model,
                api_key_env=config.provider_api_key_env,
                timeout=config.provider_timeout,
                seed=config.provider_seed,
                fixtures_dir=config.fixtures_dir,
                strict=config.strict_fixtures,
            ),
        )

    if store is None:
        store = SessionStore(
            data_dir=config.data_dir or None, provider_factory=provider_factory
        )

    app = FastAPI(title="storyweave", version="0.1.0")
    app.state.store = store
    app.state.config = config

    @app.exception_handler(StoryweaveError)
    async def handle_domain_error(request: Request, exc: StoryweaveError):
        return JSONResponse(
            status_code=_status_for(exc),
            content={"error": {"code": exc.code, "message": str(exc)}},
        )

    @app.middleware("http")
    async def check_token(request: Request, call_next):
        if config.bearer_token and request.url.path != "/healthz":
            supplied = request.headers.get("authorization", "")
            if supplied != f"Bearer {config.bearer_token}":
                return JSONResponse(
                    status_code=401,
                    content={"error": {"code": "UNAUTHORIZED", "message": "bad token"}},
                )
        return await call_next(request)

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "text" not in body:
            raise MalformedCommand("body must be an object with a 'text'")
        policy = _policy_from_body(body, config)
        session = store.create(
            str(body["text"]), policy=policy, max_length_ratio=config.max_length_ratio
        )
        return {"session_id": session.session_id, "view": session.view()}

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        return store.get(session_id).view()

    @app.post("/sessions/{session_id}/commands")
    async def post_command(session_id: str, request: Request):
        session = store.get(session_id)
        try:
            body = await request.json()
        except Exception as exc:
            raise MalformedCommand("body is not valid JSON") from exc
        result = session.apply_command(body)
        return {
            "event": result.event.to_dict(),
            "view": result.view,
            "notices": list(result.notices),
        }

    @app.get("/sessions/{session_id}/telemetry")
    def get_telemetry(session_id: str):
        session = store.get(session_id)
        return session_mod.telemetry_from_events(session.events).to_dict()

    @app.get("/sessions/{session_id}/events")
    def get_events(session_id: str, since: int = 0):
        session = store.get(session_id)
        events = [e.to_dict() for e in session.events if e.ordinal > since]
        return {"events": events, "latest": len(session.events)}

    return app
