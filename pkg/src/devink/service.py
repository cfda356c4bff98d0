"""HTTP recognition service for the ink-pad UI.

POST /api/recognize   rank primitives for one stroke, with overlay data
GET  /api/primitives  the full 69-entry class registry
GET  /api/health      service and model status

The service holds one immutable trained model; requests are stateless and
identical request bodies produce identical responses. Ink arrives in the
client's screen frame (y growing downward) and overlay coordinates are
returned in that same frame so the UI can draw them without conversion.
"""

from __future__ import annotations

import hashlib
import math

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import pipeline
from .classifiers import TrainedModel, classify
from .errors import (
    DegenerateStrokeError,
    SequenceTooShortError,
    StrokeFormatError,
    UnknownPrimitiveError,
)
from .features import compute_fdf, extract_critical_points
from .ink import Stroke, _parse_record, dumps_stroke
from .primitives import all_primitives


class _ApiError(Exception):
    def __init__(self, status: int, code: str, message: str):
        self.status = status
        self.code = code
        self.message = message
        super().__init__(message)


def _bad(code: str, message: str) -> _ApiError:
    return _ApiError(400, code, message)


def create_app(model: TrainedModel | None, record_path: str | None = None) -> FastAPI:
    app = FastAPI(title="devink recognizer", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(_ApiError)
    async def _api_error(_request, exc: _ApiError):
        return JSONResponse(
            status_code=exc.status,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.get("/api/health")
    def health():
        if model is None:
            return {"status": "no-model", "model_kind": None, "feature_kind": None}
        return {
            "status": "ok",
            "model_kind": model.kind,
            "feature_kind": model.feature,
        }

    @app.get("/api/primitives")
    def primitives():
        return [{"index": p.index, "name": p.name} for p in all_primitives()]

    @app.post("/api/recognize")
    async def recognize(request: Request):
        if model is None:
            raise _ApiError(503, "model-not-loaded", "no model is loaded")
        try:
            data = await request.json()
        except Exception:
            raise _bad("malformed-request", "body is not valid JSON") from None
        if not isinstance(data, dict):
            raise _bad("malformed-request", "body must be a JSON object")

        points = data.get("points")
        y_down = data.get("y_down", True)
        top = data.get("top", 5)
        label = data.get("label")
        save = data.get("save", False)

        if not isinstance(y_down, bool):
            raise _bad("malformed-request", "y_down must be true or false")
        if isinstance(top, bool) or not isinstance(top, int) or top < 1:
            raise _bad("malformed-request", "top must be an integer >= 1")
        if not isinstance(save, bool):
            raise _bad("malformed-request", "save must be true or false")
        if label is not None and not isinstance(label, str):
            raise _bad("malformed-request", "label must be a primitive name")
        if save and label is None:
            raise _bad("label-required", "save requires a label")

        record = {"id": "pad", "label": label, "y_down": y_down, "points": points}
        try:
            stroke = _parse_record(record, None)
        except UnknownPrimitiveError as exc:
            raise _bad("unknown-label", str(exc)) from None
        except StrokeFormatError as exc:
            raise _bad("bad-stroke", str(exc)) from None

        try:
            smoothed = pipeline.preprocess_stroke(stroke, model.preprocess)
            cps = extract_critical_points(smoothed)
            fdf = compute_fdf(cps)
            ranked = classify(
                model, pipeline.feature_input(smoothed, model.feature, model.kind)
            )
        except (DegenerateStrokeError, SequenceTooShortError) as exc:
            raise _bad("degenerate-stroke", str(exc)) from None

        flip = -1.0 if y_down else 1.0
        entries = list(ranked.entries)
        seen = {pid for pid, _ in entries}
        entries.extend(
            (pid, -math.inf) for pid in all_primitives() if pid not in seen
        )
        candidates = [
            {
                "name": pid.name,
                "rank": rank,
                "score": score if math.isfinite(score) else None,
            }
            for rank, (pid, score) in enumerate(entries[: min(top, 69)], start=1)
        ]
        response = {
            "candidates": candidates,
            "smoothed": [[p.x, flip * p.y] for p in smoothed.points],
            "critical_points": [[x, flip * y] for x, y in cps.coords],
            "feature": list(fdf.values),
        }
        if save:
            response["saved"] = _record_stroke(stroke)
        return response

    def _record_stroke(stroke: Stroke) -> bool:
        if record_path is None:
            return False
        digest = hashlib.sha1(dumps_stroke(stroke).encode()).hexdigest()[:12]
        named = dumps_stroke(Stroke(f"pad-{digest}", stroke.points, stroke.label))
        with open(record_path, "a", encoding="utf-8") as fh:
            fh.write(named + "\n")
        return True

    return app
