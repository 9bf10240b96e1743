"""HTTP service exposing scaffolding, sessions, images, audits and reports.

All error responses carry ``{"code": ..., "message": ...}``. The scaffold
endpoint omits stage timings by default so identical request bodies yield
identical response bodies in cached mode; pass ``?timing=true`` to include
the measured values.
"""

from __future__ import annotations

import threading
from pathlib import Path

from fastapi import FastAPI, Query, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, ConfigDict

from .errors import (
    EmptyInput,
    EmptySamples,
    IndexOutOfRange,
    MalformedResponse,
    NoContent,
    NoSentences,
    PictoScaffoldError,
    RemoteUnavailable,
    SessionNotFound,
    UnsupportedLanguage,
)
from .evaluation import (
    AuditRecord,
    audit_records_to_csv,
    coverage_report,
    latency_stats,
    parse_audit_csv,
    read_audit_csv,
)
from .pipeline import PipelineSettings, Scaffolder
from .sessions import SessionStore, ViewSettings

_STATUS_BY_CODE = {
    EmptyInput.code: 422,
    UnsupportedLanguage.code: 422,
    NoContent.code: 422,
    NoSentences.code: 404,
    EmptySamples.code: 404,
    SessionNotFound.code: 404,
    IndexOutOfRange.code: 404,
    RemoteUnavailable.code: 503,
    MalformedResponse.code: 502,
}


class ScaffoldRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    text: str
    language: str | None = None
    k: int | None = None


class SessionSettingsBody(BaseModel):
    model_config = ConfigDict(extra="forbid")
    show_keywords: bool = True
    show_pictograms: bool = True


class SessionCreateRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    text: str
    language: str | None = None
    k: int | None = None
    settings: SessionSettingsBody | None = None


# The settings patch is validated by hand (not a strict model) so unknown
# fields come back as 400 bad_request rather than a schema 422.


class AuditLog:
    """CSV-backed audit store, idempotent on exact duplicates."""

    def __init__(self, path: Path | str):
        self.path = Path(path)
        self._lock = threading.Lock()
        self._seen: set[AuditRecord] = set()
        if self.path.exists():
            self._seen.update(read_audit_csv(self.path))

    def append(self, records: list[AuditRecord]) -> int:
        with self._lock:
            fresh = [r for r in records if r not in self._seen]
            if fresh:
                self._seen.update(fresh)
                self.path.parent.mkdir(parents=True, exist_ok=True)
                self.path.write_text(
                    audit_records_to_csv(sorted(self._seen, key=lambda r: (
                        r.language, r.reviewer_id, r.sentence_id, r.item_kind, r.item_ref
                    ))),
                    encoding="utf-8",
                )
            return len(fresh)

    def records(self) -> list[AuditRecord]:
        return sorted(
            self._seen,
            key=lambda r: (r.language, r.reviewer_id, r.sentence_id, r.item_kind, r.item_ref),
        )


class MetricsLog:
    """Per-language scaffold outputs accumulated for the report endpoints."""

    def __init__(self):
        self._lock = threading.Lock()
        self._sentences: dict[str, list] = {}

    def record(self, lang: str, scaffolded: list) -> None:
        with self._lock:
            self._sentences.setdefault(lang, []).extend(scaffolded)

    def sentences(self, lang: str) -> list:
        with self._lock:
            return list(self._sentences.get(lang, []))


def create_app(
    scaffolder: Scaffolder,
    image_dir: Path | str | None = None,
    audit_path: Path | str = "audits.csv",
    session_persist_dir: Path | str | None = None,
) -> FastAPI:
    app = FastAPI(title="pictoscaffold", docs_url=None, redoc_url=None)
    sessions = SessionStore(session_persist_dir)
    audits = AuditLog(audit_path)
    metrics = MetricsLog()
    image_root = Path(image_dir) if image_dir else None

    def _settings_for(language: str | None, k: int | None) -> PipelineSettings:
        base = scaffolder.settings
        return PipelineSettings(
            k_keywords=k if k is not None else base.k_keywords,
            language_override=language,
            mode=base.mode,
            matcher=base.matcher,
        )

    def _lang_of(language: str | None, text: str) -> str:
        if language:
            return language
        return scaffolder.detector.detect(text, scaffolder.default_language).code

    @app.exception_handler(PictoScaffoldError)
    async def domain_error_handler(_: Request, exc: PictoScaffoldError):
        status = _STATUS_BY_CODE.get(exc.code, 400)
        return JSONResponse(status_code=status, content={"code": exc.code, "message": str(exc)})

    @app.exception_handler(ValueError)
    async def value_error_handler(_: Request, exc: ValueError):
        return JSONResponse(status_code=400, content={"code": "bad_request", "message": str(exc)})

    @app.exception_handler(RequestValidationError)
    async def validation_error_handler(_: Request, exc: RequestValidationError):
        first = exc.errors()[0] if exc.errors() else {}
        where = ".".join(str(loc) for loc in first.get("loc", ()))
        message = f"{where}: {first.get('msg', 'invalid request')}" if where else "invalid request"
        return JSONResponse(
            status_code=422, content={"code": "validation_error", "message": message}
        )

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.post("/api/v1/scaffold")
    def scaffold(body: ScaffoldRequest, timing: bool = Query(default=False)):
        lang = _lang_of(body.language, body.text)
        settings = _settings_for(lang, body.k)
        scaffolded = scaffolder.scaffold_document(body.text, settings)
        metrics.record(lang, scaffolded)
        return [s.to_dict(include_timing=timing) for s in scaffolded]

    @app.post("/api/v1/sessions", status_code=201)
    def create_session(body: SessionCreateRequest):
        lang = _lang_of(body.language, body.text)
        settings = _settings_for(lang, body.k)
        scaffolded = scaffolder.scaffold_document(body.text, settings)
        metrics.record(lang, scaffolded)
        view = (
            ViewSettings(**body.settings.model_dump()) if body.settings else ViewSettings()
        )
        session = sessions.create(scaffolded, lang, view)
        return {
            "id": session.id,
            "length": len(session.document),
            "cursor": session.cursor,
            "language": session.language,
            "settings": session.settings.to_dict(),
            "created_at": session.created_at,
        }

    @app.get("/api/v1/sessions/{session_id}")
    def get_session(session_id: str):
        session = sessions.get(session_id)
        return {
            "id": session.id,
            "length": len(session.document),
            "cursor": session.cursor,
            "language": session.language,
            "settings": session.settings.to_dict(),
            "created_at": session.created_at,
        }

    @app.get("/api/v1/sessions/{session_id}/sentences/{index}")
    def get_sentence(session_id: str, index: int, advance: bool = Query(default=False)):
        session = sessions.get(session_id)
        view = session.view_of(index)
        if advance:
            sessions.set_cursor(session_id, index)
        return {
            "index": index,
            "total": len(session.document),
            "cursor": session.cursor,
            "sentence": view,
        }

    @app.patch("/api/v1/sessions/{session_id}/settings")
    def patch_settings(session_id: str, patch: dict):
        return sessions.update_settings(session_id, patch).to_dict()

    @app.get("/api/v1/pictograms/{pictogram_id}/image")
    def pictogram_image(pictogram_id: int):
        path = image_root / f"{pictogram_id}.png" if image_root else None
        if path is None or not path.exists():
            return JSONResponse(
                status_code=404,
                content={"code": "image_not_found", "message": f"no image for {pictogram_id}"},
            )
        return Response(content=path.read_bytes(), media_type="image/png")

    @app.post("/api/v1/audits")
    async def submit_audits(request: Request):
        content_type = request.headers.get("content-type", "")
        raw = await request.body()
        try:
            if "text/csv" in content_type:
                records = parse_audit_csv(raw.decode("utf-8"))
            else:
                import json as _json

                payload = _json.loads(raw)
                if not isinstance(payload, list):
                    raise ValueError("expected a JSON array of audit records")
                records = [
                    AuditRecord(
                        reviewer_id=str(obj["reviewer_id"]),
                        language=str(obj["language"]),
                        sentence_id=int(obj["sentence_id"]),
                        item_kind=str(obj["item_kind"]),
                        item_ref=str(obj["item_ref"]),
                        rating=str(obj["rating"]),
                    )
                    for obj in payload
                ]
        except (ValueError, KeyError, TypeError) as exc:
            return JSONResponse(
                status_code=422, content={"code": "invalid_audit", "message": str(exc)}
            )
        accepted = audits.append(records)
        return {"accepted": accepted}

    @app.get("/api/v1/reports/coverage")
    def coverage(lang: str = Query(...)):
        return coverage_report(metrics.sentences(lang), lang).to_dict()

    @app.get("/api/v1/reports/latency")
    def latency(lang: str = Query(...)):
        samples = [s.timing.total for s in metrics.sentences(lang)]
        return latency_stats(samples, lang).to_dict()

    app.state.sessions = sessions
    app.state.audits = audits
    app.state.metrics = metrics
    return app
