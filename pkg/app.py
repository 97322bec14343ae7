"""
q-turan — HTTP-интерфейс.
FastAPI поверх того же командного слоя, что и CLI (services.report_service).
"""

from contextlib import asynccontextmanager
from typing import Any, Dict, List, Optional, Union

import structlog
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from config.settings import config
from core.errors import QTuranError, ValidationError
from core.io import pattern_from_json, qgraph_from_json
from core.pattern import PatternGraph, named_pattern
from services import report_service
from services.report_service import RunReport
from services.wstar_service import WeightFunction
from utils.logging_setup import setup_logging

logger = structlog.get_logger()

PatternRef = Union[str, Dict[str, Any]]


# ===== FASTAPI LIFESPAN =====

@asynccontextmanager
async def lifespan(app: FastAPI):
    setup_logging()
    logger.info("🚀 Starting q-turan API...", host=config.APP_HOST, port=config.APP_PORT)
    yield
    logger.info("👋 Shutdown complete")


app = FastAPI(title="q-turan", lifespan=lifespan)


@app.exception_handler(QTuranError)
async def qturan_error_handler(request: Request, exc: QTuranError):
    logger.warning("⚠️ Request rejected", path=request.url.path, error=str(exc))
    return JSONResponse(status_code=400, content={"success": False, "error": str(exc)})


def _pattern(ref: PatternRef) -> PatternGraph:
    """Только встроенное имя ('c5', 'k333'), без чтения файлов, или JSON {"n": ..., "edges": [[u, v], ...]}."""
    if isinstance(ref, str):
        return named_pattern(ref)
    return pattern_from_json(ref)


def _ok(report: RunReport) -> Dict[str, Any]:
    return {"success": True, **report.to_dict()}


# ===== МОДЕЛИ ЗАПРОСОВ =====

class HostRequest(BaseModel):
    host: Dict[str, Any]
    pattern: PatternRef
    s: int


class DetectRequest(HostRequest):
    all: bool = False
    limit: int = 100


class ExtremalRequest(BaseModel):
    n: int
    q: int
    s: int
    pattern: PatternRef
    budget_nodes: Optional[int] = None
    budget_secs: Optional[float] = None


class ConstructRequest(BaseModel):
    kind: str
    q: Optional[int] = None
    n: Optional[int] = None
    r: Optional[int] = None
    s: Optional[int] = None
    t: Optional[int] = None
    pattern: Optional[PatternRef] = None
    variant: Optional[Union[int, str]] = None
    blocks: Optional[List[List[int]]] = None
    allow_degenerate: bool = False


class PatternRequest(BaseModel):
    pattern: PatternRef
    method: str = "coloring"


class RandomChi1Request(BaseModel):
    m: int
    r: int
    p: float
    trials: int
    seed: int


class WStarMaxRequest(BaseModel):
    k: int
    method: str = "branch"


class WStarCheckRequest(BaseModel):
    k: int
    weights: List[List[int]]


# ===== ENDPOINTS =====

@app.post("/detect")
def detect(body: DetectRequest):
    report = report_service.run_detect(qgraph_from_json(body.host), _pattern(body.pattern), body.s,
                                       all_copies=body.all, limit=body.limit)
    return _ok(report)


@app.post("/verify")
def verify(body: HostRequest):
    return _ok(report_service.run_verify(qgraph_from_json(body.host), _pattern(body.pattern), body.s))


@app.post("/extremal")
def extremal(body: ExtremalRequest):
    report = report_service.run_extremal(body.n, body.q, body.s, _pattern(body.pattern),
                                         budget_nodes=body.budget_nodes, budget_secs=body.budget_secs)
    return _ok(report)


@app.post("/construct")
def construct(body: ConstructRequest):
    params = {key: getattr(body, key) for key in ("q", "n", "r", "s", "t", "variant", "blocks")
              if getattr(body, key) is not None}
    if body.pattern is not None:
        params["pattern"] = _pattern(body.pattern)
    if body.allow_degenerate:
        params["allow_degenerate"] = True
    return _ok(report_service.run_construct(body.kind, **params))


@app.post("/chi")
def chi(body: PatternRequest):
    return _ok(report_service.run_chi(_pattern(body.pattern)))


@app.post("/chi1")
def chi1(body: PatternRequest):
    return _ok(report_service.run_chi1(_pattern(body.pattern), method=body.method))


@app.post("/random-chi1")
def random_chi1(body: RandomChi1Request):
    return _ok(report_service.run_random_chi1(body.m, body.r, body.p, body.trials, body.seed))


@app.post("/wstar/max")
def wstar_max(body: WStarMaxRequest):
    return _ok(report_service.run_wstar_max(body.k, method=body.method))


@app.post("/wstar/check")
def wstar_check(body: WStarCheckRequest):
    if any(len(row) != 3 for row in body.weights):
        raise ValidationError("each weight row must be [u, v, w]")
    weights = {(u, v): w for u, v, w in body.weights}
    return _ok(report_service.run_wstar_check(WeightFunction.from_mapping(body.k, weights)))


# ===== HEALTHCHECK =====

@app.get("/health")
async def health():
    return {"status": "ok", "service": "q-turan"}
