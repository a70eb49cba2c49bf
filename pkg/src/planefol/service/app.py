"""FastAPI surface wrapping the exact-foliation toolkit."""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from . import ops
from .models import (
    AnalyzeRequest,
    CertifyRequest,
    ClosureRequest,
    CommandResponse,
    CorpusRequest,
    DegenerateRequest,
    FitQdRequest,
)

app = FastAPI(title="planefol", version=__version__)

STATUS_BY_CODE = {0: "ok", 1: "falsified", 2: "inconclusive", 3: "usage-error"}


def _respond(command: str, payload: tuple) -> CommandResponse:
    (data, code) = payload
    return CommandResponse(
        command=command,
        status=STATUS_BY_CODE[code],
        exit_code=code,
        inputs=data["inputs"],
        result=data["result"],
    )


def _usage(command: str, message: str) -> JSONResponse:
    body = CommandResponse(command=command, status="usage-error", exit_code=3, inputs={}, result={"error": message})
    return JSONResponse(status_code=400, content=body.model_dump())


@app.get("/health")
def health():
    return {"status": "ok", "version": __version__}


@app.post("/analyze", response_model=CommandResponse)
def analyze(req: AnalyzeRequest):
    try:
        return _respond("analyze", ops.op_analyze(req.foliation))
    except ops.UsageError as e:
        return _usage("analyze", str(e))


@app.post("/invariants", response_model=CommandResponse)
def invariants(req: AnalyzeRequest):
    try:
        return _respond("invariants", ops.op_invariants(req.foliation))
    except ops.UsageError as e:
        return _usage("invariants", str(e))


@app.post("/inflection", response_model=CommandResponse)
def inflection(req: AnalyzeRequest):
    try:
        return _respond("inflection", ops.op_inflection(req.foliation))
    except ops.UsageError as e:
        return _usage("inflection", str(e))


@app.post("/convex", response_model=CommandResponse)
def convex(req: AnalyzeRequest):
    try:
        return _respond("convex", ops.op_convex(req.foliation))
    except ops.UsageError as e:
        return _usage("convex", str(e))


@app.post("/iso-dim", response_model=CommandResponse)
def iso_dim(req: AnalyzeRequest):
    try:
        return _respond("iso-dim", ops.op_iso_dim(req.foliation))
    except ops.UsageError as e:
        return _usage("iso-dim", str(e))


@app.post("/sigma2", response_model=CommandResponse)
def sigma2(req: AnalyzeRequest):
    try:
        return _respond("sigma2", ops.op_sigma2(req.foliation))
    except ops.UsageError as e:
        return _usage("sigma2", str(e))


@app.post("/degenerate", response_model=CommandResponse)
def degenerate(req: DegenerateRequest):
    try:
        return _respond("degenerate", ops.op_degenerate(req.foliation, req.target))
    except ops.UsageError as e:
        return _usage("degenerate", str(e))


@app.post("/xi", response_model=CommandResponse)
def xi(req: AnalyzeRequest):
    try:
        return _respond("xi", ops.op_xi(req.foliation))
    except ops.UsageError as e:
        return _usage("xi", str(e))


@app.post("/certify", response_model=CommandResponse)
def certify(req: CertifyRequest):
    try:
        return _respond("certify", ops.op_certify(req.poly, req.lam, req.samples, req.seed, req.mode))
    except (ops.UsageError, ValueError) as e:
        return _usage("certify", str(e))


@app.post("/fit-qd", response_model=CommandResponse)
def fit_qd(req: FitQdRequest):
    try:
        return _respond("fit-qd", ops.op_fit_qd(req.degree, req.seed, req.train, req.holdout))
    except (ops.UsageError, ValueError) as e:
        return _usage("fit-qd", str(e))


@app.post("/closure", response_model=CommandResponse)
def closure(req: ClosureRequest):
    try:
        return _respond("closure", ops.op_closure(req.d, req.lam, req.seed, req.samples))
    except (ops.UsageError, ValueError) as e:
        return _usage("closure", str(e))


@app.post("/corpus", response_model=CommandResponse)
def corpus(req: CorpusRequest):
    try:
        params = {}
        if req.d is not None:
            params["d"] = req.d
        if req.lam is not None:
            params["lam"] = req.lam
        if req.gamma is not None:
            params["gamma"] = req.gamma
        if req.p is not None:
            params["p"] = req.p
        return _respond("corpus", ops.op_corpus(req.name, **params))
    except ops.UsageError as e:
        return _usage("corpus", str(e))
