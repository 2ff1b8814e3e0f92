"""Stateless JSON-over-HTTP service exposing the numerical engine.

Endpoints (all bodies JSON, mirroring the document schemas):

* ``POST /api/density``   {spec, xs[]}            -> {densities[]}
* ``POST /api/quantiles`` {spec, ps[]}            -> {xs[]}
* ``POST /api/kl``        {p, q[, quadrature]}    -> KlResult fields
* ``POST /api/rank``      {observations[] | posterior, benchmark,
                           experts[][, method, seed, quadrature]} -> report document
* ``GET  /api/health``                            -> {status, version}

Handlers are pure functions of the request body; no session state exists,
so concurrent requests are independent.  Schema violations return 400 with
a field-level message; numerical failures return 422.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Any

from . import __version__
from .distributions import Normal, Uniform, density, quantile
from .divergence import QuadratureConfig, kl
from .documents import (
    doc_to_prior_set,
    doc_to_spec,
    dumps_canonical,
    report_to_doc,
)
from .errors import DomainError, UndefinedRatioError, ValidationError
from .posterior import (
    Dataset,
    McmcConfig,
    PosteriorSummary,
    fit_posterior_analytic,
    fit_posterior_flat,
    fit_posterior_mcmc,
)
from .ranking import evaluate, rank_stability_note


class _BadRequest(Exception):
    def __init__(self, field: str, message: str) -> None:
        super().__init__(message)
        self.field = field
        self.message = message


def _field(body: dict[str, Any], name: str, kind: type, required: bool = True):
    if name not in body:
        if required:
            raise _BadRequest(name, "field is required")
        return None
    value = body[name]
    if kind is float and isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    if not isinstance(value, kind) or isinstance(value, bool):
        raise _BadRequest(name, f"expected {kind.__name__}")
    return value


def _number_list(body: dict[str, Any], name: str) -> list[float]:
    values = _field(body, name, list)
    out = []
    for i, v in enumerate(values):
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise _BadRequest(f"{name}[{i}]", "expected a number")
        out.append(float(v))
    if not out:
        raise _BadRequest(name, "list must be nonempty")
    return out


def _spec_field(body: dict[str, Any], name: str):
    doc = _field(body, name, dict)
    try:
        return doc_to_spec(doc)
    except ValidationError as exc:
        raise _BadRequest(name, str(exc)) from exc


def _quadrature_field(body: dict[str, Any]) -> QuadratureConfig:
    doc = _field(body, "quadrature", dict, required=False)
    if doc is None:
        return QuadratureConfig()
    try:
        return QuadratureConfig(
            relative_tolerance=float(doc.get("relative_tolerance", 1e-8)),
            max_subdivisions=int(doc.get("max_subdivisions", 2000)),
            support_epsilon=float(doc.get("support_epsilon", 1e-12)),
            density_floor=doc.get("density_floor"),
        )
    except (ValidationError, TypeError, ValueError) as exc:
        raise _BadRequest("quadrature", str(exc)) from exc


def handle_density(body: dict[str, Any]) -> dict[str, Any]:
    spec = _spec_field(body, "spec")
    xs = _number_list(body, "xs")
    return {"densities": [float(density(spec, x)) for x in xs]}


def handle_quantiles(body: dict[str, Any]) -> dict[str, Any]:
    spec = _spec_field(body, "spec")
    ps = _number_list(body, "ps")
    try:
        return {"xs": [quantile(spec, p) for p in ps]}
    except DomainError as exc:
        raise _BadRequest("ps", str(exc)) from exc


def handle_kl(body: dict[str, Any]) -> dict[str, Any]:
    p = _spec_field(body, "p")
    q = _spec_field(body, "q")
    cfg = _quadrature_field(body)
    res = kl(p, q, cfg)
    return {
        "value": None if res.infinite else res.value,
        "estimated_error": res.estimated_error,
        "truncated_mass": res.truncated_mass,
        "infinite": res.infinite,
        "warning": res.warning,
        "floored": res.floored,
    }


def handle_rank(body: dict[str, Any]) -> dict[str, Any]:
    benchmark = _spec_field(body, "benchmark")
    prior_doc = {
        "format_version": body.get("format_version", "1"),
        "experts": _field(body, "experts", list),
        "parameterization_note": body.get("parameterization_note", ""),
    }
    try:
        prior_set = doc_to_prior_set(prior_doc)
    except ValidationError as exc:
        raise _BadRequest("experts", str(exc)) from exc
    cfg = _quadrature_field(body)

    if "posterior" in body:
        post_doc = _field(body, "posterior", dict)
        try:
            posterior = PosteriorSummary(
                Normal(float(post_doc["mean"]), float(post_doc["sd"])), "analytic"
            )
        except (KeyError, TypeError, ValueError, ValidationError) as exc:
            raise _BadRequest("posterior", str(exc)) from exc
    elif "observations" in body:
        values = _number_list(body, "observations")
        try:
            data = Dataset.from_sequence(values)
            method = body.get("method", "analytic")
            if method == "analytic":
                if isinstance(benchmark, Uniform):
                    posterior = fit_posterior_analytic(data, benchmark)
                else:
                    posterior = fit_posterior_flat(data)
            elif method == "mcmc":
                if not isinstance(benchmark, Uniform):
                    raise _BadRequest("method", "mcmc requires a uniform benchmark")
                posterior = fit_posterior_mcmc(
                    data, benchmark, McmcConfig(seed=int(body.get("seed", 0)))
                )
            else:
                raise _BadRequest("method", "must be 'analytic' or 'mcmc'")
        except ValidationError as exc:
            raise _BadRequest("observations", str(exc)) from exc
    else:
        raise _BadRequest("observations", "either observations or posterior is required")

    report = evaluate(
        posterior,
        benchmark,
        prior_set.experts,
        cfg,
        parameterization_note=prior_set.parameterization_note or None,
    )
    doc = report_to_doc(report, __version__)
    doc["stability_note"] = rank_stability_note(report)
    return doc


_POST_ROUTES = {
    "/api/density": handle_density,
    "/api/quantiles": handle_quantiles,
    "/api/kl": handle_kl,
    "/api/rank": handle_rank,
}


class _Handler(BaseHTTPRequestHandler):
    server_version = "priorrank/" + __version__

    def log_message(self, fmt: str, *args) -> None:  # keep test output quiet
        pass

    def _send(self, status: int, payload: dict[str, Any]) -> None:
        body = dumps_canonical(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def do_OPTIONS(self) -> None:  # CORS preflight for the browser front end
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self) -> None:
        if self.path == "/api/health":
            self._send(200, {"status": "ok", "version": __version__})
        else:
            self._send(404, {"error": {"field": "path", "message": "unknown endpoint"}})

    def do_POST(self) -> None:
        handler = _POST_ROUTES.get(self.path)
        if handler is None:
            self._send(404, {"error": {"field": "path", "message": "unknown endpoint"}})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            raw = self.rfile.read(length)
            body = json.loads(raw.decode("utf-8")) if raw else {}
            if not isinstance(body, dict):
                raise _BadRequest("body", "request body must be a JSON object")
        except (json.JSONDecodeError, UnicodeDecodeError):
            self._send(400, {"error": {"field": "body", "message": "malformed JSON"}})
            return
        try:
            self._send(200, handler(body))
        except _BadRequest as exc:
            self._send(400, {"error": {"field": exc.field, "message": exc.message}})
        except (UndefinedRatioError, ValidationError, DomainError) as exc:
            self._send(
                422,
                {
                    "error": {"field": None, "message": str(exc)},
                    "value": None,
                    "infinite": False,
                },
            )


def make_server(host: str = "127.0.0.1", port: int = 0) -> ThreadingHTTPServer:
    """Create (but do not start) the HTTP server; port 0 picks a free port."""
    return ThreadingHTTPServer((host, port), _Handler)


def start_background(host: str = "127.0.0.1", port: int = 0) -> tuple[ThreadingHTTPServer, threading.Thread]:
    """Start the service on a daemon thread; returns (server, thread)."""
    server = make_server(host, port)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return server, thread


def serve(host: str, port: int) -> None:
    """Run the service in the foreground until interrupted."""
    server = make_server(host, port)
    actual = server.server_address[1]
    print(f"priorrank service listening on http://{host}:{actual}")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
