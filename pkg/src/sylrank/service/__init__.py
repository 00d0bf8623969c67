"""FastAPI service exposing the library verbs as JSON endpoints.

Run with ``uvicorn sylrank.service:app``.  Responses are the canonical
byte-deterministic JSON documents also produced by the CLI; verification
endpoints return 200 with ``"ok": false`` when clauses fail, and malformed
inputs return 400 with a diagnostic.
"""

from fastapi import FastAPI, Response

from ..errors import SylrankError
from ..report import SCHEMA, canonical_json
from . import models
from .handlers import VERBS, HandlerOutcome


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def create_app() -> FastAPI:
    app = FastAPI(
        title="sylrank",
        description="Exact Sylvester rank function computations and verification suites",
        version="0.1.0",
    )

    @app.get("/health")
    def health() -> Response:
        return _json_response({"schema": SCHEMA, "status": "ok"})

    @app.get("/v1/verbs")
    def verbs() -> Response:
        return _json_response({"schema": SCHEMA, "verbs": sorted(VERBS)})

    def register(verb: str, model_cls, handler):
        path = "/v1/" + verb.replace("check-", "check/")

        def endpoint(request) -> Response:
            try:
                outcome: HandlerOutcome = handler(request)
            except SylrankError as exc:
                return _json_response({"schema": SCHEMA, "error": str(exc)}, 400)
            return _json_response(outcome.payload)

        endpoint.__name__ = "verb_" + verb.replace("-", "_")
        endpoint.__annotations__ = {"request": model_cls, "return": Response}
        app.post(path)(endpoint)

    for verb, (model_cls, handler) in VERBS.items():
        register(verb, model_cls, handler)

    return app


app = create_app()
