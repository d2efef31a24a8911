from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cyclovertex.modes import LoopElem, bracket
from cyclovertex.verma import (TWISTED, UNTWISTED, State, apply_loop, gamma_state, states_of,
                               translate, twisted_from_word)
from cyclovertex.vla import preset


def graded_count(parts_per_grade: dict[int, int], g: int) -> int:
    """Coefficient of q^g in prod_k (1 - q^k)^(-parts_per_grade[k])."""
    series = [1] + [0] * g
    for k, colours in parts_per_grade.items():
        for _ in range(colours):
            for i in range(k, g + 1):
                series[i] += series[i - k]
    return series[g]


@pytest.mark.parametrize("g", range(0, 8))
def test_virasoro_pbw_dimensions(g):
    P = preset("virasoro")
    got = sum(1 for m in states_of(P, UNTWISTED, 10, g, g))
    assert got == graded_count({k: 1 for k in range(2, g + 1)}, g)


@pytest.mark.parametrize("g", range(0, 6))
def test_affine_pbw_dimensions(g):
    P = preset("affine_sl2")
    got = sum(1 for m in states_of(P, UNTWISTED, 10, g, g))
    assert got == graded_count({k: 3 for k in range(1, g + 1)}, g)


def test_vacuum_is_annihilated_by_nonnegative_modes():
    P = preset("affine_sl2")
    vac = State.vacuum(P)
    for a in P.index:
        for n in range(0, 4):
            assert not apply_loop(LoopElem.gen(a, n), vac)


def test_normal_ordering():
    P = preset("affine_sl2")
    v = State.from_word(P, [("e", -1), ("f", -1)])
    w = State.from_word(P, [("f", -1), ("e", -1)])
    # e(-1) f(-1) - f(-1) e(-1) = h(-2)
    assert v - w == State.from_word(P, [("h", -2)])


words = st.lists(st.tuples(st.sampled_from(["e", "f", "h"]), st.integers(-3, -1)), max_size=3)
modes = st.tuples(st.sampled_from(["e", "f", "h"]), st.integers(-3, 3))


@settings(max_examples=60, deadline=None)
@given(word=words, x=modes, y=modes, twisted=st.booleans())
def test_modes_represent_the_bracket(word, x, y, twisted):
    P = preset("affine_sl2", 2)
    kind = TWISTED if twisted else UNTWISTED
    v = State.from_word(P, word, kind)
    X, Y = LoopElem.gen(*x), LoopElem.gen(*y)
    lhs = apply_loop(X, apply_loop(Y, v)) - apply_loop(Y, apply_loop(X, v))
    assert lhs == apply_loop(bracket(P, X, Y), v)


def test_central_level_on_twisted_module():
    P = preset("affine_sl2", 3)
    assert apply_loop(LoopElem.cent(1), State.vacuum(P, TWISTED)) == State.vacuum(P, TWISTED).scale(Fraction(1, 3))
    assert apply_loop(LoopElem.cent(1), State.vacuum(P)) == State.vacuum(P)


def test_translation():
    P = preset("virasoro")
    w = State.from_word(P, [("w", -1)])
    assert translate(w) == State.from_word(P, [("w", -2)])
    assert not translate(State.vacuum(P))
    ww = State.from_word(P, [("w", -1), ("w", -1)])
    # w(-1) w(-2) = w(-2) w(-1) + [w(-1), w(-2)] and [w(-1), w(-2)] = w(-4)
    want = State.from_word(P, [("w", -2), ("w", -1)]).scale(2) + State.from_word(P, [("w", -4)])
    assert translate(ww) == want


def test_gamma_on_states_is_an_action():
    T = 4
    P = preset("affine_sl2", T, "inner:1")
    v = State.from_word(P, [("e", -2), ("f", -1), ("h", -3)])
    for i in range(T):
        for j in range(T):
            assert gamma_state(P, i, gamma_state(P, j, v)) == gamma_state(P, i + j, v)


def test_twisted_words_need_surviving_modes():
    P = preset("heisenberg_sl2", 2)
    twisted_from_word(P, [("e", -2)])
    with pytest.raises(ValueError):
        twisted_from_word(P, [("e", -1)])


def test_states_from_different_modules_do_not_mix():
    P = preset("virasoro")
    with pytest.raises(ValueError):
        State.vacuum(P) + State.vacuum(P, TWISTED)
