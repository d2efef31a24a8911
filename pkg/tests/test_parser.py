from fractions import Fraction

import pytest

from cyclovertex.modes import LoopElem
from cyclovertex.parser import ParseError, parse_elem, parse_loop, parse_state
from cyclovertex.verma import TWISTED, State
from cyclovertex.vla import VlaElem, preset


def test_states():
    P = preset("heisenberg_sl2")
    v = parse_state(P, "2*e(-2)e*(-1)|0> - 1/2*|0>")
    want = State.from_word(P, [("e", -2), ("e*", -1)], coeff=2) - State.vacuum(P).scale(Fraction(1, 2))
    assert v == want
    # normal ordering happens on input
    assert parse_state(P, "e*(-1)e(-1)|0>") == parse_state(P, "e(-1)e*(-1)|0>")


def test_shifted_modes():
    P = preset("virasoro")
    assert parse_state(P, "w[-3]|0>") == State.from_word(P, [("w", -2)])
    assert not parse_state(P, "w[-1]|0>")
    assert parse_loop(P, "w[2] - 3*w(0)") == LoopElem.gen("w", 3) - LoopElem.gen("w", 0, 3)
    assert parse_loop(P, "c(-1)") == LoopElem.cent(1)


def test_elements():
    P = preset("virasoro")
    assert parse_elem(P, "D^2 w + 1/2*c") == VlaElem.gen("w", 2) + VlaElem.cent(Fraction(1, 2))
    assert parse_elem(P, "-D w") == VlaElem.gen("w", 1, -1)


def test_twisted_states_need_surviving_modes():
    P = preset("heisenberg_sl2", 2)
    parse_state(P, "e(-2)|0>", TWISTED)
    with pytest.raises(ValueError):
        parse_state(P, "e(-1)|0>", TWISTED)


@pytest.mark.parametrize("text,pos", [("x(-1)|0>", 0), ("w(-1|0>", 4), ("w(-1)|0> w", 9), ("w(a)|0>", 2)])
def test_errors_report_positions(text, pos):
    P = preset("virasoro")
    with pytest.raises(ParseError) as err:
        parse_state(P, text)
    assert err.value.pos == pos


def test_central_modes_are_restricted():
    P = preset("virasoro")
    with pytest.raises(ParseError):
        parse_loop(P, "c(0)")
    with pytest.raises(ParseError):
        parse_elem(P, "D c")
