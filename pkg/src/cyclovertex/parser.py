"""Text syntax for states and loop elements.

States:        "2*a(-2)b(-1)|0> - 1/2*|0>"
Loop elements: "w[2]", "e(1) + 3*h(0)", "c(-1)" for the central mode
VLA elements:  "D^2 w", "e + 1/2*K"  (used by nthprod)
"""

from __future__ import annotations

import re
from fractions import Fraction

from .modes import LoopElem
from .verma import TWISTED, UNTWISTED, State, twisted_from_word
from .vla import VlaElem, VlaPresentation


class ParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        super().__init__(f"{msg} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.pos = pos


_NUM = re.compile(r"\s*(\d+(?:/\d+)?)\s*\*?\s*")
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\**")
_INT = re.compile(r"\s*([+-]?\d+)\s*")


class _Cursor:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self, s: str) -> bool:
        self.ws()
        return self.text.startswith(s, self.pos)

    def eat(self, s: str) -> None:
        if not self.peek(s):
            raise ParseError(self.text, self.pos, f"expected {s!r}")
        self.pos += len(s)

    def done(self) -> bool:
        self.ws()
        return self.pos >= len(self.text)

    def match(self, rx: re.Pattern):
        self.ws()
        m = rx.match(self.text, self.pos)
        if m:
            self.pos = m.end()
        return m

    def fail(self, msg: str):
        raise ParseError(self.text, self.pos, msg)


def _terms(cur: _Cursor, atom):
    """sign? coeff? atom ((+|-) coeff? atom)*"""
    out = []
    sign = 1
    if cur.peek("-"):
        cur.eat("-")
        sign = -1
    elif cur.peek("+"):
        cur.eat("+")
    while True:
        m = cur.match(_NUM)
        c = Fraction(m.group(1)) if m else Fraction(1)
        out.append((sign * c, atom(cur)))
        if cur.done():
            return out
        if cur.peek("+"):
            cur.eat("+")
            sign = 1
        elif cur.peek("-"):
            cur.eat("-")
            sign = -1
        else:
            cur.fail("expected '+' or '-'")


def _gen_name(cur: _Cursor, P: VlaPresentation, allow_central: bool = False) -> str:
    start = cur.pos
    m = cur.match(_NAME)
    if not m:
        cur.fail("expected a generator name")
    name = m.group(0)
    if name in P.index or (allow_central and name == P.central):
        return name
    raise ParseError(cur.text, start, f"unknown generator {name!r}")


def _mode_index(cur: _Cursor) -> tuple[str, int]:
    for open_, close in (("(", ")"), ("[", "]")):
        if cur.peek(open_):
            cur.eat(open_)
            m = cur.match(_INT)
            if not m:
                cur.fail("expected an integer mode")
            cur.eat(close)
            return open_, int(m.group(1))
    cur.fail("expected '(' or '['")


def parse_state(P: VlaPresentation, text: str, kind: str = UNTWISTED) -> State:
    cur = _Cursor(text)

    def atom(c: _Cursor):
        word = []
        while not c.peek("|0>"):
            a = _gen_name(c, P)
            br, n = _mode_index(c)
            if br == "[":
                n = n + P.deg(a) - 1
            word.append((a, n))
        c.eat("|0>")
        return word

    total = State(P, kind)
    for coeff, word in _terms(cur, atom):
        if kind == TWISTED:
            total = total + twisted_from_word(P, word, coeff)
        else:
            total = total + State.from_word(P, word, kind, coeff)
    return total


def parse_loop(P: VlaPresentation, text: str) -> LoopElem:
    cur = _Cursor(text)

    def atom(c: _Cursor):
        a = _gen_name(c, P, allow_central=True)
        br, n = _mode_index(c)
        if a == P.central:
            if br != "(" or n != -1:
                c.fail("the central element only has the mode c(-1)")
            return LoopElem.cent(1)
        if br == "[":
            n = n + P.deg(a) - 1
        return LoopElem.gen(a, n)

    out = LoopElem()
    for coeff, x in _terms(cur, atom):
        out = out + x.scale(coeff)
    return out


_DPOW = re.compile(r"D(?:\^(\d+))?\s+")


def parse_elem(P: VlaPresentation, text: str) -> VlaElem:
    cur = _Cursor(text)

    def atom(c: _Cursor):
        c.ws()
        m = _DPOW.match(c.text, c.pos)
        j = 0
        if m:
            c.pos = m.end()
            j = int(m.group(1) or 1)
        a = _gen_name(c, P, allow_central=True)
        if a == P.central:
            if j:
                c.fail("D annihilates the central element")
            return VlaElem.cent(1)
        return VlaElem.gen(a, j)

    out = VlaElem()
    for coeff, x in _terms(cur, atom):
        out = out + x.scale(coeff)
    return out
