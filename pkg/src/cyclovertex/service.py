"""HTTP front end: each route validates a request model and calls the matching handler."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from . import api
from .parser import ParseError
from .vla import AxiomError

app = FastAPI(title="cyclovertex", version="0.1.0")


def _call(fn, *args):
    try:
        return fn(*args)
    except ParseError as exc:
        raise HTTPException(status_code=422, detail={"error": "parse", "message": str(exc),
                                                     "position": exc.pos}) from exc
    except AxiomError as exc:
        raise HTTPException(status_code=422, detail={"error": "axioms", "message": str(exc)}) from exc
    except (KeyError, ValueError) as exc:
        raise HTTPException(status_code=400, detail={"error": "invalid", "message": str(exc)}) from exc


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "schema": api.SCHEMA}


@app.get("/algebras")
def algebras() -> dict:
    return api.algebra_list()


@app.post("/algebras/show", response_model=api.AlgebraInfo, response_model_by_alias=True)
def algebra_show(req: api.AlgebraRef):
    return _call(api.algebra_show, req)


@app.post("/algebras/check", response_model=api.AxiomCheck, response_model_by_alias=True)
def algebra_check(config: dict):
    return _call(api.algebra_check, config)


@app.post("/nthprod", response_model=api.ComputeResult, response_model_by_alias=True)
def nthprod(req: api.NthProdRequest):
    return _call(api.nthprod, req)


@app.post("/bracket", response_model=api.ComputeResult, response_model_by_alias=True)
def bracket(req: api.BracketRequest):
    return _call(api.bracket_modes_req, req)


@app.post("/ope", response_model=api.ComputeResult, response_model_by_alias=True)
def ope(req: api.OpeRequest):
    return _call(api.ope_req, req)


@app.post("/yw", response_model=api.ComputeResult, response_model_by_alias=True)
def yw(req: api.YwRequest):
    return _call(api.yw_req, req)


@app.post("/reduce", response_model=api.ComputeResult, response_model_by_alias=True)
def reduce(req: api.ReduceRequest):
    return _call(api.reduce_req, req)


@app.post("/verify")
def verify(req: api.VerifyRequest) -> dict:
    return _call(api.verify, req)
