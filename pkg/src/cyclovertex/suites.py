"""Seeded verification batteries behind ``cyclovertex verify``."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .coinv import (MarkedConfig, TensorState, alpha_u_check, big_little_check,
                    coinvariant_value, need0_kernel_demo, need0_reduction, rationality_check,
                    residue_sum_check, swap_reduce, ym_consistency, yw_consistency)
from .cycfield import RatFun, inv, root, scalar_str
from .fields import (check_borcherds, check_commutator, check_gamma_equivariance,
                     check_grading, check_skew, check_translation, find_locality_order,
                     support_top, y_apply)
from .modes import (LoopElem, TwistedMode, bracket, project_by_sum, project_elem, survives,
                    twisted_bracket)
from .quasi import (check_periodicity, check_quasi_borcherds, check_wcom, kappa,
                    twisted_mode_series, yw_apply, yw_apply_modes)
from .verma import TWISTED, UNTWISTED, State, gamma_state, states_of
from .vla import PRESETS, VlaElem, check_axioms, gamma_act, preset, with_product

SUITES = ("borcherds", "quasi-borcherds", "wcom", "biglittle", "need0", "ymyw",
          "alpha-u", "locality", "skew", "gamma", "rationality")

DEFAULT_SIGMA = {"affine_sl2": "id", "heisenberg_sl2": "id", "virasoro": "id"}


@dataclass
class RunReport:
    suite: str
    seed: int
    params: dict
    cases: int = 0
    passed: int = 0
    failures: list = field(default_factory=list)
    info: dict = field(default_factory=dict)
    seconds: float = 0.0

    @property
    def failed(self) -> int:
        return self.cases - self.passed

    @property
    def ok(self) -> bool:
        return self.cases > 0 and self.passed == self.cases

    def record(self, label: str, ok: bool, witness: dict | None = None) -> None:
        self.cases += 1
        if ok:
            self.passed += 1
        else:
            self.failures.append({"case": label, "witness": witness or {}})

    def to_json(self, timing: bool = False) -> dict:
        out = {"schema": 1, "suite": self.suite, "seed": self.seed, "params": self.params,
               "cases": self.cases, "passed": self.passed, "failed": self.failed,
               "ok": self.ok, "failures": self.failures, "info": self.info}
        if timing:
            out["seconds"] = round(self.seconds, 3)
        return out

    def summary(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return (f"[{status}] {self.suite}: {self.passed}/{self.cases} passed "
                f"(seed {self.seed}, {self.seconds:.2f}s)")


def _w(res) -> dict | None:
    return getattr(res, "witness", None)


def sample_states(P, rng: random.Random, depth: int, grade: int, count: int,
                  kind: str = UNTWISTED, min_depth: int = 0) -> list[State]:
    """Deterministic sample of monomials and two-term combinations."""
    monos = [m for m in states_of(P, kind, depth, grade) if len(m) >= min_depth]
    if not monos:
        return []
    out = []
    for i in range(count):
        m = rng.choice(monos)
        s = State(P, kind, {m: Fraction(1)})
        if i % 4 == 3:
            m2 = rng.choice(monos)
            s = s + State(P, kind, {m2: Fraction(rng.randint(1, 3), rng.randint(1, 2))})
        out.append(s if s else State.vacuum(P, kind))
    return out


def _presets(T: int):
    for name in PRESETS:
        yield preset(name, T, DEFAULT_SIGMA[name])


def _twisted_presets(T: int):
    """Presets with a nontrivial sigma where one is available."""
    yield preset("heisenberg_sl2", T, "id")
    yield preset("affine_sl2", T, "id")
    if T > 1:
        yield preset("affine_sl2", T, "inner:1")
    if T % 2 == 0:
        yield preset("affine_sl2", T, "swap")
    yield preset("virasoro", T, "id")


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

def suite_borcherds(rep: RunReport, rng: random.Random, depth: int, modes: int, T: int, **_) -> None:
    per = 70
    for P in _presets(T):
        states = sample_states(P, rng, depth, modes, 3 * per)
        for i in range(per):
            A, B, C = states[3 * i], states[3 * i + 1], states[3 * i + 2]
            f = (rng.randint(-3, 3), rng.randint(-3, 3), rng.randint(-3, 0))
            res = check_borcherds(A, B, C, f)
            rep.record(f"{P.name} A={A} B={B} C={C} f={f}", res.ok, _w(res))


def twisted_locality_order(A: State, B: State) -> int:
    """Largest pole order of Y(A, x) Y(R_alpha B, y) over alpha != 1."""
    P = A.P
    best = 0
    for kk in range(1, P.order):
        RB = gamma_state(P, kk, B)
        for n in range(support_top(A, RB), -1, -1):
            if y_apply(A, RB, n):
                best = max(best, n + 1)
                break
    return best


def suite_quasi_borcherds(rep: RunReport, rng: random.Random, depth: int, modes: int,
                          T: int | None, k_max: int | None = None, **_) -> None:
    Ts = [T] if T else [1, 2, 3]
    per = 6
    ks: dict = {}
    d = min(depth, 2)
    search = 8 if k_max is None else k_max
    for t in Ts:
        for P in _twisted_presets(t):
            Vs = sample_states(P, rng, d, min(modes, 3), 2 * per)
            Ws = sample_states(P, rng, 1, 2, per, TWISTED)
            for i in range(per):
                A, B, w = Vs[2 * i], Vs[2 * i + 1], Ws[i]
                f = (rng.randint(-2, 2), rng.randint(-2, 2), rng.randint(-2, 0))
                label = f"{P.name}[{t}] A={A} B={B} w={w} f={f}"
                res = check_quasi_borcherds(A, B, w, f, search)
                k = res.info.get("k")
                ks.setdefault(f"T={t}", []).append(k)
                rep.record(f"identity holds for some k <= {search}: {label}", res.ok, _w(res))
                if not res.ok:
                    continue
                bound = A.depth() + B.depth() + 2
                loc = twisted_locality_order(A, B)
                rep.record(f"k={k} <= depth(A)+depth(B)+2={bound}: {label}", k <= bound,
                           {"k": k, "bound": bound, "twisted_locality_order": loc})
                rep.record(f"k={k} <= twisted locality order {loc}: {label}", k <= loc,
                           {"k": k, "twisted_locality_order": loc})
                if t == 1:
                    rep.record(f"k=0 at T=1: {label}", k == 0, {"k": k})
    rep.info["k_values"] = {t: sorted(set(v), key=lambda x: (x is None, x)) for t, v in ks.items()}
    rep.info["samples"] = sum(len(v) for v in ks.values())


def suite_wcom(rep: RunReport, rng: random.Random, depth: int, modes: int, T: int | None, **_) -> None:
    Ts = [T] if T else [1, 2, 3]
    M = min(modes, 4)
    for t in Ts:
        for P in _twisted_presets(t):
            Vs = sample_states(P, rng, min(depth, 2), 2, 4)
            Ws = [State.vacuum(P, TWISTED)] + sample_states(P, rng, 1, 3, 1, TWISTED, 1)
            for A in Vs[:2]:
                for B in Vs[2:]:
                    for w in Ws:
                        bad = None
                        n_cases = 0
                        for m in range(-M, M + 1):
                            for n in range(-M, M + 1):
                                n_cases += 1
                                res = check_wcom(A, B, m, n, w)
                                if not res.ok:
                                    bad = res.witness
                                    break
                            if bad:
                                break
                        rep.record(f"{P.name}[{t}] A={A} B={B} w={w} window={M}", bad is None, bad)


def _sample_f(rng: random.Random, cfg: MarkedConfig, var: str, decay: bool = False) -> RatFun:
    """An f with poles in 0 and the orbits, vanishing at infinity.

    With ``decay`` the simple-pole residues cancel, so f = O(var^-2) and
    f(u) F_u has no residue at infinity whatever the constant term of F_u.
    """
    poles = cfg.pole_set()
    f = RatFun((), (1,), var)
    for _ in range(rng.randint(1, 3)):
        q = rng.choice(poles)
        c = Fraction(rng.randint(-3, 3) or 1)
        k = rng.randint(1, 2)
        if decay and k == 1:
            q2 = rng.choice(poles)
            f = f + (RatFun.pole(q, 1, var) - RatFun.pole(q2, 1, var)) * c
        else:
            f = f + RatFun.pole(q, k, var) * c
    if not f:
        f = RatFun.pole(poles[-1], 2, var)
    return f


def _configs(P, rng: random.Random, origin: bool | None, npts: int | None = None):
    n = rng.randint(0 if origin else 1, 2) if npts is None else npts
    pts = [Fraction(2), Fraction(3, 1) if P.order != 1 else Fraction(5)][:n]
    if origin is None:
        origin = rng.random() < 0.5
    return MarkedConfig(P, tuple(pts), origin)


def _tensor(P, cfg: MarkedConfig, rng: random.Random, depth: int) -> TensorState:
    pts = [sample_states(P, rng, depth, 2, 1)[0] for _ in cfg.points]
    w = sample_states(P, rng, 1, 2, 1, TWISTED)[0] if cfg.origin else None
    return TensorState.product(cfg, pts, w)


def suite_biglittle(rep: RunReport, rng: random.Random, depth: int, T: int | None, **_) -> None:
    Ts = [T] if T else [2, 3]
    per = 4
    bounds = []
    for t in Ts:
        for P in _twisted_presets(t):
            for _ in range(per):
                cfg = _configs(P, rng, True, rng.randint(1, 2))
                A = sample_states(P, rng, min(depth, 2), 3, 1, min_depth=1)[0]
                ten = _tensor(P, cfg, rng, 1)
                f = _sample_f(rng, cfg, "t")
                res = big_little_check(A, f, ten, cfg)
                bounds.append((res.info.get("depth_bound"), res.info.get("mode_bound")))
                rep.record(f"{P.name}[{t}] A={A} f={f} tensor={ten}", res.ok, _w(res))
    # the composite state of the example, with the origin present
    for t in Ts:
        P = preset("heisenberg_sl2", t, "id")
        cfg = MarkedConfig(P, (Fraction(1),), True)
        A = State.from_word(P, [("e", -1), ("e*", -1)])
        f = RatFun.pole(Fraction(1), 1, "t")
        res = big_little_check(A, f, TensorState.vacuum(cfg), cfg)
        rep.record(f"need0 state with origin T={t}", res.ok, _w(res))
    rep.info["membership_bounds"] = "depth(v)+2 / grade(v)+4"


def need0_closed_form(T: int) -> RatFun:
    """The printed value -(T-1)/(2u)."""
    return RatFun.pole(Fraction(0), 1) * Fraction(-(T - 1), 2)


def need0_weighted_sum(T: int) -> RatFun:
    """sum over alpha != 1 of alpha^e/((alpha-1) u), e the Gamma weight of e in n."""
    P = preset("heisenberg_sl2", T, "id")
    e = P.deg("e") + P.sig("e")
    return RatFun.pole(Fraction(0), 1) * kappa(T, e, 0)


def suite_need0(rep: RunReport, rng: random.Random, T: int | None, **_) -> None:
    Ts = [T] if T else [1, 2, 3, 4]
    values = {}
    for t in Ts:
        got = need0_reduction(t)
        got_last = need0_reduction(t, "last")
        values[t] = str(got)
        rep.record(f"T={t} reduction independent of elimination order", got == got_last,
                   {"first": str(got), "last": str(got_last)})
        rep.record(f"T={t} reduction equals the alpha-weighted root of unity sum",
                   got == need0_weighted_sum(t),
                   {"got": str(got), "sum": str(need0_weighted_sum(t))})
        want = need0_closed_form(t)
        rep.record(f"T={t} reduction equals -(T-1)/(2u)", got == want,
                   {"got": str(got), "expected": str(want)})
        if t > 1:
            demo = need0_kernel_demo(t)
            rep.record(f"T={t} big swap kills the vacuum class without origin",
                       demo["kernel_demonstrated"], {k: str(v) for k, v in demo.items()})
    rep.info["reduced_coefficient"] = values


def suite_ymyw(rep: RunReport, rng: random.Random, depth: int, order: int, T: int | None, **_) -> None:
    Ts = [T] if T else [1, 2]
    per = 3
    for t in Ts:
        for P in _twisted_presets(t):
            for i in range(per):
                cfg = _configs(P, rng, i % 2 == 0, 1)
                A = sample_states(P, rng, min(depth, 2), 2, 1)[0]
                ten = _tensor(P, cfg, rng, 1)
                res = ym_consistency(A, ten, cfg, 0, order)
                rep.record(f"ym {P.name}[{t}] A={A} tensor={ten}", res.ok, _w(res))
                if cfg.origin:
                    res = yw_consistency(A, ten, cfg, order)
                    rep.record(f"yw {P.name}[{t}] A={A} tensor={ten}", res.ok, _w(res))
    rep.info["order"] = order


def suite_alpha_u(rep: RunReport, rng: random.Random, depth: int, T: int | None, order: int, **_) -> None:
    Ts = [T] if T else [2, 3, 4]
    for t in Ts:
        for P in _twisted_presets(t):
            for i in range(2):
                cfg = _configs(P, rng, i % 2 == 0, 1)
                A = sample_states(P, rng, min(depth, 2), 2, 1)[0]
                ten = _tensor(P, cfg, rng, 1)
                for k in range(t):
                    res = alpha_u_check(A, ten, cfg, k)
                    rep.record(f"{P.name}[{t}] alpha=w^{k} A={A} tensor={ten}", res.ok, _w(res))
            w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
            A = sample_states(P, rng, 2, 2, 1, min_depth=1)[0]
            res = check_periodicity(A, w, order)
            rep.record(f"Y_W periodicity {P.name}[{t}] A={A} w={w}", res.ok, _w(res))


def suite_locality(rep: RunReport, rng: random.Random, depth: int, modes: int, T: int, **_) -> None:
    H = preset("heisenberg_sl2", T, "id")
    Vir = preset("virasoro", T, "id")
    e, es = State.from_word(H, [("e", -1)]), State.from_word(H, [("e*", -1)])
    w = State.from_word(Vir, [("w", -1)])
    for label, A, B, want in (("heisenberg e,e*", e, es, 1), ("virasoro w,w", w, w, 4)):
        tests = [State.vacuum(A.P)] + sample_states(A.P, rng, 2, 2, 2)
        rs = [find_locality_order(A, B, c) for c in tests]
        rep.record(f"locality {label} expected r={want}", max(rs) == want,
                   {"orders": str(rs)})
    rep.record("locality with the vacuum is 0",
               find_locality_order(State.vacuum(Vir), w, w) == 0)
    M = min(modes, 4)
    for P in _presets(T):
        states = sample_states(P, rng, min(depth, 3), 3, 8)
        for i in range(0, 8, 2):
            A, B = states[i], states[i + 1]
            tests = sample_states(P, rng, 2, 2, 2)
            bad = None
            for m in range(-M, M + 1):
                for n in range(-M, M + 1):
                    res = check_commutator(A, B, m, n, tests)
                    if not res.ok:
                        bad = res.witness
                        break
                if bad:
                    break
            rep.record(f"commutator {P.name} A={A} B={B} |m|,|n|<={M}", bad is None, bad)


def suite_skew(rep: RunReport, rng: random.Random, depth: int, modes: int, T: int, **_) -> None:
    M = min(modes, 4)
    for P in _presets(T):
        states = sample_states(P, rng, depth, 3, 24)
        for i in range(0, 24, 2):
            A, B = states[i], states[i + 1]
            bad = None
            for n in range(0, M + 1):
                res = check_skew(A, B, n)
                if not res.ok:
                    bad = res.witness
                    break
            rep.record(f"skew {P.name} A={A} B={B}", bad is None, bad)
        for i in range(0, 12):
            A = states[i]
            res = check_translation(A, rng.randint(-M, M), states[12:16])
            rep.record(f"translation {P.name} A={A}", res.ok, _w(res))
        monos = states_of(P, UNTWISTED, depth, 3)
        for i in range(10):
            A = State(P, UNTWISTED, {rng.choice(monos): Fraction(1)})
            B = State(P, UNTWISTED, {rng.choice(monos): Fraction(1)})
            bad = None
            for n in range(-M, M + 1):
                res = check_grading(A, B, n)
                if not res.ok:
                    bad = res.witness
                    break
            rep.record(f"grading {P.name} A={A} B={B}", bad is None, bad)


def degeneration_checks(rep: RunReport, rng: random.Random, depth: int, order: int) -> None:
    """At T=1 every Gamma-sum collapses."""
    for P in _presets(1):
        Vs = sample_states(P, rng, min(depth, 2), 3, 6)
        for A in Vs[:3]:
            for B in Vs[3:]:
                Bw = State(P, TWISTED, B.terms)
                ser = yw_apply(A, Bw, order)
                ok = all(c == State(P, TWISTED, y_apply(A, B, -o - 1).terms)
                         for o, c in ser.items())
                rep.record(f"T=1 yw equals y {P.name} A={A} B={B}", ok)
        for g1 in P.generators:
            for g2 in P.generators:
                for m in range(-2, 3):
                    for n in range(-2, 3):
                        tw = twisted_bracket(P, TwistedMode(g1.name, m), TwistedMode(g2.name, n))
                        un = bracket(P, LoopElem.gen(g1.name, m), LoopElem.gen(g2.name, n))
                        rep.record(f"T=1 twisted bracket [{g1.name}({m}),{g2.name}({n})]", tw == un,
                                   {"twisted": str(tw), "untwisted": str(un)})
        rep.record(f"T=1 kappa sums vanish {P.name}", all(not kappa(1, e, j)
                                                          for e in range(4) for j in range(4)))


def suite_gamma(rep: RunReport, rng: random.Random, depth: int, modes: int, T: int | None,
                order: int, **_) -> None:
    Ts = [T] if T else [1, 2, 3, 4]
    M = min(modes, 4)
    for t in Ts:
        for P in _twisted_presets(t):
            rep.record(f"axioms {P.name}[{t}] sigma", check_axioms(P, 6).ok)
            states = sample_states(P, rng, min(depth, 3), 3, 8)
            for i in range(0, 8, 2):
                A, B = states[i], states[i + 1]
                bad = None
                for n in range(-M, M + 1):
                    res = check_gamma_equivariance(A, B, n)
                    if not res.ok:
                        bad = res.witness
                        break
                rep.record(f"equivariance {P.name}[{t}] A={A} B={B}", bad is None, bad)
            hom = all(gamma_act(P, i, gamma_act(P, j, VlaElem.gen(g.name, d)))
                      == gamma_act(P, i + j, VlaElem.gen(g.name, d))
                      for g in P.generators for i in range(t) for j in range(t) for d in range(3))
            rep.record(f"R is a group action {P.name}[{t}]", hom)
            proj = all(project_elem(P, VlaElem.gen(g.name, d), n)
                       == project_by_sum(P, VlaElem.gen(g.name, d), n)
                       for g in P.generators for d in range(3) for n in range(-5, 6))
            rep.record(f"twisted projection equals the alpha sum {P.name}[{t}]", proj)
            w = sample_states(P, rng, 1, 2, 1, TWISTED)[0]
            base = all(twisted_mode_series(P, g.name, w, order)
                       == yw_apply(State.from_word(P, [(g.name, -1)]), w, order)
                       for g in P.generators)
            rep.record(f"Y_W base case equals twisted modes {P.name}[{t}]", base)
    if 1 in Ts:
        degeneration_checks(rep, rng, depth, order)


def suite_rationality(rep: RunReport, rng: random.Random, depth: int, T: int | None, **_) -> None:
    Ts = [T] if T else [1, 2, 3]
    per = 5
    configs = 0
    for t in Ts:
        for P in _twisted_presets(t):
            for i in range(per):
                cfg = _configs(P, rng, None, rng.randint(1 if i == 0 else 0, 2))
                if not cfg.slots:
                    cfg = MarkedConfig(P, (Fraction(2),), False)
                A = sample_states(P, rng, depth, 3, 1)[0]
                ten = _tensor(P, cfg, rng, 1)
                label = f"{P.name}[{t}] points={[str(z) for z in cfg.points]} origin={cfg.origin} A={A}"
                R = swap_reduce(A, ten, cfg)
                configs += 1
                first = rationality_check(R, cfg)
                rep.record(f"rationality {label}", first.ok, _w(first))
                for _ in range(5):
                    f = _sample_f(rng, cfg, "u", decay=True)
                    res = residue_sum_check(A, ten, cfg, f, R)
                    rep.record(f"residue f={f} {label}", res.ok, _w(res))
    rep.info["configurations"] = configs
    rep.info["functions_per_configuration"] = 5


RUNNERS: dict[str, Callable] = {
    "borcherds": suite_borcherds,
    "quasi-borcherds": suite_quasi_borcherds,
    "wcom": suite_wcom,
    "biglittle": suite_biglittle,
    "need0": suite_need0,
    "ymyw": suite_ymyw,
    "alpha-u": suite_alpha_u,
    "locality": suite_locality,
    "skew": suite_skew,
    "gamma": suite_gamma,
    "rationality": suite_rationality,
}


def run_suite(name: str, *, depth: int = 3, modes: int = 4, order: int = 5,
              T: int | None = None, seed: int = 0, k_max: int | None = None) -> RunReport:
    if name not in RUNNERS:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    params = {"depth": depth, "modes": modes, "order": order, "T": T}
    if k_max is not None:
        params["k_max"] = k_max
    rep = RunReport(name, seed, params)
    rng = random.Random(seed)
    t0 = time.perf_counter()
    single_T = T if T is not None else 1
    RUNNERS[name](rep, rng, depth=depth, modes=modes, order=order,
                  T=T if name in ("quasi-borcherds", "wcom", "biglittle", "need0", "ymyw",
                                  "alpha-u", "gamma", "rationality") else single_T,
                  k_max=k_max)
    rep.seconds = time.perf_counter() - t0
    return rep
