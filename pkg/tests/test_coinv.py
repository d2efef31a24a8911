import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from cyclovertex.coinv import (MarkedConfig, SwapFunction, TensorState, alpha_u_check,
                               big_action, big_little_check, coinvariant_value,
                               little_image_membership, need0_kernel_demo, need0_reduction,
                               rationality_check, residue_sum_check, swap_reduce,
                               ym_consistency, yw_consistency)
from cyclovertex.cycfield import RatFun, root
from cyclovertex.modes import LoopElem
from cyclovertex.suites import sample_states
from cyclovertex.verma import TWISTED, State, apply_loop, states_of
from cyclovertex.vla import preset

F = Fraction


def test_config_validation():
    P = preset("affine_sl2", 2)
    with pytest.raises(ValueError):
        MarkedConfig(P, (F(0),), False)
    with pytest.raises(ValueError):
        MarkedConfig(P, (F(2), F(-2)), False)  # same orbit under w = -1
    MarkedConfig(preset("affine_sl2", 1), (F(2), F(-2)), False)
    cfg = MarkedConfig(preset("affine_sl2", 3), (F(1),), True)
    assert cfg.slots == 2 and len(cfg.pole_set()) == 4
    with pytest.raises(ValueError):
        cfg.check_aux(root(3, 1))


@pytest.mark.parametrize("a", ["e", "f", "h"])
def test_single_point_T1_matches_expansion_of_the_swap(a):
    # F_u(a(-1)|0> (x) m) = sum_n (u - z)^(-n-1) a(n) m for one point z and T = 1
    P = preset("affine_sl2", 1)
    z = F(2)
    cfg = MarkedConfig(P, (z,), False)
    m = State.from_word(P, [("f", -1), ("h", -1)])
    got = swap_reduce(State.from_word(P, [(a, -1)]), TensorState.product(cfg, [m]), cfg)
    want = TensorState(cfg)
    for n in range(0, 4):
        am = apply_loop(LoopElem.gen(a, n), m)
        want = want + TensorState(cfg, {(k,): RatFun.pole(z, n + 1) * c for k, c in am.terms.items()})
    assert got == want


def need0_closed_form(T):
    """sum over alpha != 1 of alpha^e / ((alpha - 1) u) with e = deg e = 1, summed with sympy."""
    w = sp.exp(2 * sp.pi * sp.I / T)
    total = sum(w ** k / (w ** k - 1) for k in range(1, T))
    return sp.nsimplify(sp.simplify(sp.expand_complex(total)))


@pytest.mark.parametrize("T", [1, 2, 3, 4])
def test_need0_reduction_value(T):
    got = need0_reduction(T)
    want = need0_closed_form(T)
    assert want == sp.Rational(T - 1, 2)
    assert got == RatFun.pole(F(0), 1) * F(T - 1, 2)
    assert got == need0_reduction(T, "last")


@pytest.mark.parametrize("T", [2, 3, 4])
def test_need0_kernel_demonstration(T):
    demo = need0_kernel_demo(T)
    assert demo["big_swap_equals_A"]
    assert demo["little_value_of_vacuum"] == 1
    assert demo["little_value_of_A"] == F(T - 1, 2)
    assert demo["kernel_demonstrated"]


CASES = [("affine_sl2", 2, "id"), ("affine_sl2", 3, "inner:1"), ("heisenberg_sl2", 2, "id"),
         ("virasoro", 2, "id"), ("affine_sl2", 1, "id")]


def _setup(name, T, sigma, origin, seed=0):
    P = preset(name, T, sigma)
    rng = random.Random(seed)
    cfg = MarkedConfig(P, (F(2),), origin)
    m = sample_states(P, rng, 1, 2, 1)[0]
    w = sample_states(P, rng, 1, 2, 1, TWISTED)[0] if origin else None
    A = sample_states(P, rng, 2, 3, 1, min_depth=1)[0]
    return P, cfg, A, TensorState.product(cfg, [m], w)


@pytest.mark.parametrize("case", CASES)
@pytest.mark.parametrize("origin", [False, True])
def test_confluence_rationality_and_residues(case, origin):
    P, cfg, A, ten = _setup(*case, origin)
    R = swap_reduce(A, ten, cfg)
    assert R == swap_reduce(A, ten, cfg, "last")
    assert rationality_check(R, cfg).ok
    poles = cfg.pole_set()
    for q in poles:
        f = RatFun.pole(q, 2) + RatFun.pole(q, 1) - RatFun.pole(poles[0], 1)
        assert residue_sum_check(A, ten, cfg, f, R).ok


def test_rationality_and_residue_negative_controls():
    P, cfg, A, ten = _setup("affine_sl2", 2, "id", True)
    R = swap_reduce(A, ten, cfg)
    key = next(iter(R.terms))
    stray = R + TensorState(cfg, {key: RatFun.pole(F(5), 1)})
    assert not rationality_check(stray, cfg).ok
    # growth at infinity keeps the poles admissible but breaks the residue theorem
    grown = R + TensorState(cfg, {key: RatFun.symbol()})
    assert rationality_check(grown, cfg).ok
    f = RatFun.pole(F(0), 2) + RatFun.pole(F(2), 2)
    assert residue_sum_check(A, ten, cfg, f, R).ok
    assert not residue_sum_check(A, ten, cfg, f, grown).ok


@pytest.mark.parametrize("case", CASES)
def test_alpha_u(case):
    P, cfg, A, ten = _setup(*case, True)
    for k in range(cfg.T):
        assert alpha_u_check(A, ten, cfg, k).ok


@pytest.mark.parametrize("case", CASES[:3])
def test_ym_and_yw_consistency(case):
    P, cfg, A, ten = _setup(*case, True)
    assert ym_consistency(A, ten, cfg, 0, 3).ok
    assert yw_consistency(A, ten, cfg, 3).ok


@pytest.mark.parametrize("case", CASES[:4])
def test_big_action_lies_in_the_little_image(case):
    P, cfg, A, ten = _setup(*case, True)
    for f in (RatFun.pole(F(2), 1, "t"), RatFun.pole(F(0), 2, "t") * 3 - RatFun.pole(F(2), 2, "t")):
        res = big_little_check(A, f, ten, cfg)
        assert res.ok, res.witness


def test_vacuum_is_not_in_the_little_image():
    P = preset("affine_sl2", 2)
    cfg = MarkedConfig(P, (F(2),), True)
    vac = TensorState.vacuum(cfg)
    mem = little_image_membership(vac, cfg)
    assert mem.answer == "unknown" and mem.functional == 1
    mem = little_image_membership(vac, cfg, 2, 3, exhaustive=True)
    assert mem.answer == "unknown"
    assert coinvariant_value(vac) == 1


@settings(max_examples=25, deadline=None)
@given(gi=st.integers(0, 2), r=st.integers(1, 3), at_origin=st.booleans(),
       i=st.integers(0, 20), j=st.integers(0, 8), T=st.sampled_from([1, 2, 3]))
def test_little_swaps_are_sound(gi, r, at_origin, i, j, T):
    # every g.w is recognised as a little swap, and the functional kills it
    P = preset("affine_sl2", T)
    cfg = MarkedConfig(P, (F(2),), True)
    gname = P.generators[gi].name
    g = SwapFunction(gname, F(0) if at_origin else F(2), r)
    assert g.is_equivariant(P)
    ms = states_of(P, "V", 2, 2)
    ws = states_of(P, TWISTED, 1, 3)
    key = (ms[i % len(ms)], ws[j % len(ws)])
    vec = TensorState(cfg, g.act(cfg, key))
    if vec:
        assert little_image_membership(vec, cfg).yes
        assert coinvariant_value(vec) == 0


def test_functional_matches_membership_verdicts():
    P = preset("heisenberg_sl2", 2)
    cfg = MarkedConfig(P, (F(1),), False)
    A = State.from_word(P, [("e", -1), ("e*", -1)])
    vac = TensorState.vacuum(cfg)
    big = big_action(A, RatFun.pole(F(1), 1, "t"), vac, cfg)
    assert big == TensorState.product(cfg, [A])
    rel = vac - big.scale(F(1) / coinvariant_value(big))
    assert coinvariant_value(rel) == 0
    assert little_image_membership(rel, cfg).yes
