"""JSON-over-HTTP service backing the explorer UI: model reads, adoption
updates, what-if overlays, and plans.

One model per instance, held in memory. Mutations are serialized through a
single lock and bump a revision counter (exposed as the ETag); reads always
observe a consistent snapshot. What-if queries never mutate.
"""

from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.responses import HTMLResponse, JSONResponse, PlainTextResponse
from fastapi.staticfiles import StaticFiles

from .adoption import STATUSES, AdoptionState, parse_adoption, serialize_adoption
from .assessment import MODE_FULL, MODE_PARTIAL, AssessmentConfig, assess, plan
from .errors import PathNotFound, UnknownBenefit, UnreachableTarget
from .formats import export_report, plan_to_document, serialize_model
from .model import BdnModel, parse_model

_PLACEHOLDER = """<!doctype html>
<html><head><title>BDN explorer</title></head>
<body><h1>BDN explorer</h1>
<p>No UI build found. The JSON API lives under <code>/api/</code>.</p>
</body></html>
"""


class SessionState:
    """Loaded model, current adoption, and a revision counter that
    increments on every successful mutation."""

    def __init__(self, model: BdnModel, adoption: AdoptionState | None = None,
                 adoption_path: str | Path | None = None):
        self.model = model
        self.adoption = adoption or AdoptionState(context=model.context)
        self.adoption_path = Path(adoption_path) if adoption_path else None
        self.revision = 1
        self._lock = threading.Lock()

    def snapshot(self) -> tuple[BdnModel, AdoptionState, int]:
        with self._lock:
            return self.model, self.adoption, self.revision

    def set_status(self, practice_id: str, status: str, expect_revision: int | None = None) -> int:
        """Apply one mutation; raises RevisionMismatch when the caller's
        expected revision is stale. Mutations are serialized by the lock."""
        with self._lock:
            if expect_revision is not None and expect_revision != self.revision:
                raise RevisionMismatch(expect_revision, self.revision)
            stamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
            self.adoption = self.adoption.with_status(practice_id, status, timestamp=stamp)
            self.revision += 1
            if self.adoption_path:
                self.adoption_path.write_text(serialize_adoption(self.adoption), encoding="utf-8")
            return self.revision


class RevisionMismatch(Exception):
    def __init__(self, expected: int, actual: int):
        self.expected = expected
        self.actual = actual
        super().__init__(f"expected revision {expected}, server is at {actual}")


def create_app(
    model: BdnModel,
    adoption: AdoptionState | None = None,
    adoption_path: str | Path | None = None,
    cors: bool = False,
    ui_dir: str | Path | None = None,
) -> FastAPI:
    state = SessionState(model, adoption, adoption_path)
    app = FastAPI(title="bdn-service", docs_url=None, redoc_url=None)
    app.state.session = state

    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
        )

    def _etag(revision: int) -> str:
        return f'"{revision}"'

    @app.get("/api/model")
    def get_model(request: Request) -> Response:
        current, _, revision = state.snapshot()
        etag = _etag(revision)
        if request.headers.get("if-none-match") == etag:
            return Response(status_code=304, headers={"ETag": etag})
        return PlainTextResponse(
            serialize_model(current), media_type="application/json", headers={"ETag": etag}
        )

    @app.get("/api/assessment")
    def get_assessment() -> Response:
        current, adoption_now, revision = state.snapshot()
        body = export_report(assess(current, adoption_now), format="json")
        return PlainTextResponse(body, media_type="application/json", headers={"ETag": _etag(revision)})

    @app.get("/api/plan")
    def get_plan(target: str, mode: str = MODE_PARTIAL) -> Response:
        if mode not in (MODE_PARTIAL, MODE_FULL):
            return JSONResponse({"error": f"invalid mode {mode!r}"}, status_code=422)
        current, adoption_now, _ = state.snapshot()
        try:
            steps = plan(current, adoption_now, target, AssessmentConfig(plan_target_mode=mode))
        except (UnknownBenefit, PathNotFound) as exc:
            return JSONResponse({"error": str(exc)}, status_code=404)
        except UnreachableTarget as exc:
            return JSONResponse({"error": str(exc)}, status_code=409)
        return JSONResponse(plan_to_document(steps, target, mode))

    @app.post("/api/whatif")
    async def post_whatif(request: Request) -> Response:
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return JSONResponse({"error": "body must be JSON"}, status_code=422)
        overlay = body.get("overlay") if isinstance(body, dict) else None
        if not isinstance(overlay, dict):
            return JSONResponse({"error": 'body needs an "overlay" object'}, status_code=422)
        current, adoption_now, revision = state.snapshot()
        unknown = sorted(set(overlay) - set(current.practices))
        if unknown:
            return JSONResponse({"error": f"unknown practice(s): {', '.join(unknown)}"}, status_code=404)
        bad = sorted(str(v) for v in overlay.values() if v not in STATUSES)
        if bad:
            return JSONResponse({"error": f"invalid status(es): {', '.join(bad)}"}, status_code=422)
        hypothetical = AdoptionState(
            context=adoption_now.context,
            statuses={**adoption_now.statuses, **overlay},
            notes=adoption_now.notes,
            timestamp=adoption_now.timestamp,
        )
        body_text = export_report(assess(current, hypothetical), format="json")
        return PlainTextResponse(
            body_text, media_type="application/json", headers={"ETag": _etag(revision)}
        )

    @app.put("/api/adoption/{practice_id}")
    async def put_adoption(practice_id: str, request: Request) -> Response:
        current, _, _ = state.snapshot()
        if practice_id not in current.practices:
            return JSONResponse({"error": f"unknown practice {practice_id!r}"}, status_code=404)
        try:
            body = await request.json()
        except json.JSONDecodeError:
            return JSONResponse({"error": "body must be JSON"}, status_code=422)
        status = body.get("status") if isinstance(body, dict) else None
        if status not in STATUSES:
            return JSONResponse(
                {"error": f"status must be one of {', '.join(STATUSES)}"}, status_code=422
            )
        if_match = request.headers.get("if-match")
        expected = int(if_match.strip('"')) if if_match and if_match.strip('"').isdigit() else None
        if if_match is not None and expected is None:
            return JSONResponse({"error": "malformed If-Match"}, status_code=412)
        try:
            new_revision = state.set_status(practice_id, status, expect_revision=expected)
        except RevisionMismatch as exc:
            return JSONResponse({"error": str(exc)}, status_code=412)
        return JSONResponse({"revision": new_revision}, headers={"ETag": _etag(new_revision)})

    if ui_dir and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:

        @app.get("/", include_in_schema=False)
        def index() -> HTMLResponse:
            return HTMLResponse(_PLACEHOLDER)

    return app


def _default_ui_dir() -> Path | None:
    candidate = Path.cwd() / "frontend" / "dist"
    return candidate if candidate.is_dir() else None


def serve(
    model_path: str,
    adoption_path: str | None = None,
    host: str = "127.0.0.1",
    port: int = 8642,
    cors: bool = False,
    ui_dir: str | None = None,
) -> None:
    import uvicorn

    model = parse_model(Path(model_path).read_text(encoding="utf-8"))
    adoption = None
    if adoption_path and Path(adoption_path).exists():
        adoption = parse_adoption(Path(adoption_path).read_text(encoding="utf-8"))
    app = create_app(
        model,
        adoption=adoption,
        adoption_path=adoption_path,
        cors=cors,
        ui_dir=ui_dir or _default_ui_dir(),
    )
    uvicorn.run(app, host=host, port=port, log_level="warning")
