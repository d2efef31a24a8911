"""Request/response models and the pure handlers shared by the HTTP service and the CLI."""

from __future__ import annotations

import json
import os
from pathlib import Path
from typing import Any, Literal, Optional, Union

from pydantic import BaseModel, Field

from .coinv import MarkedConfig, TensorState, coinvariant_value, swap_reduce
from .cycfield import scalar_from_json, scalar_str
from .fields import ope
from .modes import bracket
from .parser import parse_elem, parse_loop, parse_state
from .quasi import yw_apply
from .suites import SUITES, run_suite
from .verma import TWISTED, UNTWISTED
from .vla import PRESETS, VlaPresentation, check_axioms, nth_product, preset, product_support

SCHEMA = 1
ENV_T = "CYCLOVERTEX_DEFAULT_T"


def default_T() -> int:
    raw = os.environ.get(ENV_T, "").strip()
    if not raw:
        return 1
    try:
        T = int(raw)
    except ValueError:
        raise ValueError(f"{ENV_T} must be a positive integer, got {raw!r}") from None
    if T < 1:
        raise ValueError(f"{ENV_T} must be a positive integer, got {raw!r}")
    return T


def load_json(path: str | Path) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


# ---------------------------------------------------------------------------
# models
# ---------------------------------------------------------------------------

class AlgebraRef(BaseModel):
    algebra: Union[str, dict] = Field(..., description="preset name, path to a config file, or an inline config",
                                      examples=["virasoro"])
    T: Optional[int] = Field(None, ge=1, description="group order; defaults to the environment setting")
    sigma: str = Field("id", description="automorphism for presets: id, inner:<s>, swap")


class AlgebraInfo(BaseModel):
    schema_: int = Field(SCHEMA, alias="schema")
    name: str
    order: int
    central: str
    generators: list[dict]
    products: list[dict]

    model_config = {"populate_by_name": True}


class AxiomCheck(BaseModel):
    schema_: int = Field(SCHEMA, alias="schema")
    ok: bool
    checked: int
    message: str
    failure: Optional[dict] = None

    model_config = {"populate_by_name": True}


class NthProdRequest(AlgebraRef):
    x: str = Field(..., examples=["w"])
    y: str = Field(..., examples=["w"])
    n: Optional[int] = Field(None, ge=0, description="omit for every nonzero product")


class BracketRequest(AlgebraRef):
    x: str = Field(..., examples=["w[2]"])
    y: str = Field(..., examples=["w[-2]"])
    shifted: Optional[bool] = Field(None, description="print shifted modes a[n]; by default follow the input")


class OpeRequest(AlgebraRef):
    A: str = Field(..., examples=["e(-1)|0>"])
    B: str = Field(..., examples=["f(-1)|0>"])


class YwRequest(AlgebraRef):
    A: str = Field(..., examples=["e(-1)e*(-1)|0>"])
    w: str = Field("|0>", description="vector of the twisted vacuum module")
    order: int = Field(5, ge=-1, description="truncation order K of the series in u")


class CoinvConfig(BaseModel):
    algebra: Union[str, dict]
    T: Optional[int] = Field(None, ge=1)
    sigma: str = "id"
    points: list[Union[int, str, list]] = Field(default_factory=list)
    origin: bool = False


class ReduceRequest(BaseModel):
    config: CoinvConfig
    A: str = Field(..., description="state placed at the symbolic point u", examples=["e(-1)e*(-1)|0>"])
    tensor: Optional[list[str]] = Field(None, description="one state per marked point, then the origin vector")


class ComputeResult(BaseModel):
    schema_: int = Field(SCHEMA, alias="schema")
    kind: str
    algebra: str
    T: int
    input: dict
    result: Any
    text: str

    model_config = {"populate_by_name": True}


class VerifyRequest(BaseModel):
    suite: Literal[SUITES]  # type: ignore[valid-type]
    depth: int = Field(3, ge=0)
    modes: int = Field(4, ge=0)
    order: int = Field(5, ge=-1)
    T: Optional[int] = Field(None, ge=1)
    seed: int = 0
    k_max: Optional[int] = Field(None, ge=0)


# ---------------------------------------------------------------------------
# handlers
# ---------------------------------------------------------------------------

def resolve_algebra(algebra: Union[str, dict], T: int | None = None, sigma: str = "id") -> VlaPresentation:
    if isinstance(algebra, dict):
        cfg = dict(algebra)
        if T is not None:
            cfg["order"] = T
        return VlaPresentation.from_config(cfg)
    if algebra in PRESETS:
        return preset(algebra, T if T is not None else default_T(), sigma)
    if Path(algebra).is_file():
        return resolve_algebra(load_json(algebra), T, sigma)
    raise ValueError(f"unknown algebra {algebra!r}: not a preset ({', '.join(PRESETS)}) or a file")


def _ref(req: AlgebraRef) -> VlaPresentation:
    return resolve_algebra(req.algebra, req.T, req.sigma)


def algebra_list() -> dict:
    return {"schema": SCHEMA, "presets": list(PRESETS)}


def algebra_show(req: AlgebraRef) -> AlgebraInfo:
    P = _ref(req)
    cfg = P.to_config()
    prods = []
    for (a, b, n), v in sorted(P.products.items()):
        prods.append({"a": a, "b": b, "n": n, "value": str(v)})
    return AlgebraInfo(name=P.name, order=P.order, central=P.central,
                       generators=cfg["generators"], products=prods)


def algebra_check(config: dict, n_max: int = 6) -> AxiomCheck:
    try:
        P = VlaPresentation.from_config(config, check=False)
    except (KeyError, TypeError, ValueError) as exc:
        return AxiomCheck(ok=False, checked=0, message=f"invalid configuration: {exc}",
                          failure={"error": str(exc)})
    rep = check_axioms(P, n_max)
    failure = {k: str(v) for k, v in rep.failure.items()} if rep.failure else None
    return AxiomCheck(ok=rep.ok, checked=rep.checked, message=rep.message(), failure=failure)


def _result(kind: str, P: VlaPresentation, inp: dict, result: Any, text: str) -> ComputeResult:
    return ComputeResult(kind=kind, algebra=P.name, T=P.order, input=inp, result=result, text=text)


def nthprod(req: NthProdRequest) -> ComputeResult:
    P = _ref(req)
    x, y = parse_elem(P, req.x), parse_elem(P, req.y)
    ns = [req.n] if req.n is not None else range(product_support(P, x, y))
    rows = {}
    for n in ns:
        v = nth_product(P, x, y, n)
        if v or req.n is not None:
            rows[str(n)] = str(v)
    text = "\n".join(f"x_({n}) y = {v}" for n, v in rows.items()) or "all products vanish"
    return _result("nthprod", P, {"x": req.x, "y": req.y, "n": req.n}, rows, text)


def bracket_modes_req(req: BracketRequest) -> ComputeResult:
    P = _ref(req)
    v = bracket(P, parse_loop(P, req.x), parse_loop(P, req.y))
    shifted = req.shifted if req.shifted is not None else "[" in req.x + req.y
    text = v.render(P, shifted)
    return _result("bracket", P, {"x": req.x, "y": req.y}, text, text)


def ope_req(req: OpeRequest) -> ComputeResult:
    P = _ref(req)
    A, B = parse_state(P, req.A), parse_state(P, req.B)
    table = {str(n): str(v) for n, v in sorted(ope(A, B).items())}
    text = "\n".join(f"n={n}: {v}" for n, v in table.items()) or "regular"
    return _result("ope", P, {"A": req.A, "B": req.B}, table, text)


def yw_req(req: YwRequest) -> ComputeResult:
    P = _ref(req)
    A = parse_state(P, req.A, UNTWISTED)
    w = parse_state(P, req.w, TWISTED)
    ser = yw_apply(A, w, req.order)
    coeffs = {str(o): str(c) for o, c in ser.normalized().items()}
    text = "\n".join(f"u^{o}: {c}" for o, c in coeffs.items()) or "0"
    return _result("yw", P, {"A": req.A, "w": req.w, "order": req.order}, coeffs, text)


def marked_config(cfg: CoinvConfig) -> MarkedConfig:
    P = resolve_algebra(cfg.algebra, cfg.T, cfg.sigma)
    pts = tuple(scalar_from_json(z, P.order) for z in cfg.points)
    return MarkedConfig(P, pts, cfg.origin)


def reduce_req(req: ReduceRequest) -> ComputeResult:
    cfg = marked_config(req.config)
    P = cfg.P
    A = parse_state(P, req.A, UNTWISTED)
    texts = req.tensor or []
    if texts and len(texts) != cfg.slots:
        raise ValueError(f"tensor needs {cfg.slots} factors (points then origin), got {len(texts)}")
    if texts:
        states = [parse_state(P, t, UNTWISTED) for t in texts[:len(cfg.points)]]
        w = parse_state(P, texts[-1], TWISTED) if cfg.origin else None
        ten = TensorState.product(cfg, states, w)
    else:
        ten = TensorState.vacuum(cfg)
    R = swap_reduce(A, ten, cfg)
    out = {"terms": R.to_json()}
    if not R.is_symbolic():
        out["functional"] = scalar_str(coinvariant_value(R.constant()))
    inp = {"A": req.A, "tensor": texts, "points": [scalar_str(z) for z in cfg.points],
           "origin": cfg.origin}
    return _result("reduce", P, inp, out, str(R))


def verify(req: VerifyRequest) -> dict:
    rep = run_suite(req.suite, depth=req.depth, modes=req.modes, order=req.order,
                    T=req.T, seed=req.seed, k_max=req.k_max)
    return rep.to_json()
