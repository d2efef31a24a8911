"""Command-line client.

By default requests are handled in process; ``--server URL`` sends the same
request bodies to a running ``cyclovertex.service`` instead.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import api
from .parser import ParseError
from .suites import SUITES
from .vla import AxiomError

ROUTES = {
    "show": "/algebras/show", "check": "/algebras/check", "nthprod": "/nthprod",
    "bracket": "/bracket", "ope": "/ope", "yw": "/yw", "reduce": "/reduce", "verify": "/verify",
}


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _remote(server: str, route: str, body: dict) -> dict:
    import httpx

    resp = httpx.post(server.rstrip("/") + route, json=body, timeout=None)
    if resp.status_code >= 400:
        detail = resp.json().get("detail", resp.text)
        raise ValueError(detail.get("message", str(detail)) if isinstance(detail, dict) else str(detail))
    return resp.json()


def _run(args, key: str, model, handler):
    """Validate the request body, then dispatch locally or over HTTP."""
    if args.server:
        return _remote(args.server, ROUTES[key], model.model_dump(mode="json"))
    out = handler(model)
    return out.model_dump(by_alias=True, mode="json") if hasattr(out, "model_dump") else out


def _algebra_fields(args) -> dict:
    return {"algebra": args.algebra, "T": args.T, "sigma": args.sigma}


def cmd_algebra(args) -> int:
    if args.action == "list":
        out = api.algebra_list()
        print(_dump(out) if args.json else "\n".join(out["presets"]))
        return 0
    if args.target is None:
        raise ValueError(f"algebra {args.action} needs a preset name or a config file")
    if args.action == "show":
        out = _run(args, "show", api.AlgebraRef(algebra=args.target, T=args.T, sigma=args.sigma),
                   api.algebra_show)
        if args.json:
            print(_dump(out))
        else:
            gens = ", ".join(f"{g['name']} (degree {g['degree']}, sigma w^{g['sigma_exponent']})"
                             for g in out["generators"])
            print(f"{out['name']}  T={out['order']}  central={out['central']}")
            print(f"generators: {gens}")
            for p in out["products"]:
                print(f"  {p['a']}_({p['n']}){p['b']} = {p['value']}")
        return 0
    config = api.load_json(args.target)
    if args.server:
        out = _remote(args.server, ROUTES["check"], config)
    else:
        out = api.algebra_check(config, args.n_max).model_dump(by_alias=True)
    print(_dump(out) if args.json else ("ok: " if out["ok"] else "FAILED: ") + out["message"])
    return 0 if out["ok"] else 1


def _print_result(args, out: dict) -> None:
    print(_dump(out) if args.json else out["text"])


def cmd_nthprod(args) -> int:
    req = api.NthProdRequest(**_algebra_fields(args), x=args.x, y=args.y, n=args.n)
    _print_result(args, _run(args, "nthprod", req, api.nthprod))
    return 0


def cmd_bracket(args) -> int:
    req = api.BracketRequest(**_algebra_fields(args), x=args.x, y=args.y, shifted=args.shifted)
    _print_result(args, _run(args, "bracket", req, api.bracket_modes_req))
    return 0


def cmd_ope(args) -> int:
    req = api.OpeRequest(**_algebra_fields(args), A=args.A, B=args.B)
    _print_result(args, _run(args, "ope", req, api.ope_req))
    return 0


def cmd_yw(args) -> int:
    req = api.YwRequest(**_algebra_fields(args), A=args.A, w=args.w, order=args.order)
    _print_result(args, _run(args, "yw", req, api.yw_req))
    return 0


def cmd_reduce(args) -> int:
    cfg = api.CoinvConfig(**api.load_json(args.config))
    if args.T is not None:
        cfg.T = args.T
    req = api.ReduceRequest(config=cfg, A=args.A, tensor=args.tensor)
    _print_result(args, _run(args, "reduce", req, api.reduce_req))
    return 0


def cmd_verify(args) -> int:
    T = args.T
    if T is None and os.environ.get(api.ENV_T, "").strip():
        T = api.default_T()
    req = api.VerifyRequest(suite=args.suite, depth=args.depth, modes=args.modes, order=args.order,
                            T=T, seed=args.seed, k_max=args.k_max)
    out = _run(args, "verify", req, api.verify)
    if args.json:
        print(_dump(out))
    else:
        status = "PASS" if out["ok"] else "FAIL"
        print(f"[{status}] {out['suite']}: {out['passed']}/{out['cases']} passed (seed {out['seed']})")
        for key, val in out["info"].items():
            print(f"  {key}: {val}")
        for f in out["failures"]:
            print(f"  failed: {f['case']}")
            for k, v in f["witness"].items():
                print(f"    {k} = {v}")
    return 0 if out["ok"] else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--server", metavar="URL", help="send the request to a running service")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--T", type=int, default=None,
                     help=f"group order (default: ${api.ENV_T} or 1)")
    alg.add_argument("--sigma", default="id", help="preset automorphism: id, inner:<s>, swap")

    p = argparse.ArgumentParser(prog="cyclovertex", description="Exact vertex Lie algebra computations.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("algebra", parents=[common, alg], help="list, show or check algebras")
    a.add_argument("action", choices=["list", "show", "check"])
    a.add_argument("target", nargs="?", help="preset name or config file")
    a.add_argument("--n-max", type=int, default=6, help="largest n checked by the axiom suite")
    a.set_defaults(func=cmd_algebra)

    s = sub.add_parser("nthprod", parents=[common, alg], help="n-th products in the algebra")
    s.add_argument("algebra")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--n", type=int, default=None)
    s.set_defaults(func=cmd_nthprod)

    s = sub.add_parser("bracket", parents=[common, alg], help="bracket of loop elements")
    s.add_argument("algebra")
    s.add_argument("x")
    s.add_argument("y")
    s.add_argument("--shifted", action=argparse.BooleanOptionalAction, default=None,
                   help="print modes as a[n] (default: follow the input)")
    s.set_defaults(func=cmd_bracket)

    s = sub.add_parser("ope", parents=[common, alg], help="singular part A_(n)B, n >= 0")
    s.add_argument("algebra")
    s.add_argument("A")
    s.add_argument("B")
    s.set_defaults(func=cmd_ope)

    s = sub.add_parser("yw", parents=[common, alg], help="Y_W(A, u) w on the twisted vacuum module")
    s.add_argument("algebra")
    s.add_argument("A")
    s.add_argument("--w", default="|0>")
    s.add_argument("--order", type=int, default=5, help="truncation order in u")
    s.set_defaults(func=cmd_yw)

    s = sub.add_parser("reduce", parents=[common], help="reduce A at u against a marked configuration")
    s.add_argument("--config", required=True, help="JSON file {algebra, T, points, origin}")
    s.add_argument("A")
    s.add_argument("--tensor", nargs="+", default=None,
                   help="one state per marked point, then the origin vector")
    s.add_argument("--T", type=int, default=None, help="override the group order of the config")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("verify", parents=[common], help="run a verification battery")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--depth", type=int, default=3)
    s.add_argument("--modes", type=int, default=4)
    s.add_argument("--order", type=int, default=5)
    s.add_argument("--T", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--k-max", type=int, default=None, help="search bound for the quasi-Borcherds k")
    s.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except AxiomError as exc:
        print(f"axiom violation: {exc}", file=sys.stderr)
    except (OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return 2


if __name__ == "__main__":
    sys.exit(main())
