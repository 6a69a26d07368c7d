"""Recursive-descent parsers for the field/form/element literal syntax.

Grammar (ASCII, whitespace tolerated between tokens):

    field    :=  ("Q" | "R" | "F" int) ( "((" ident "))" )*
    form     :=  "[" monomial ("," monomial)* "]"  |  pfister
    pfister  :=  "<<" [ monomial ("," monomial)* ] ">>"
    slots    :=  monomial ("," monomial)*
    element  :=  "(" poly ("," poly)* ")"
    poly     :=  ["+"|"-"] monomial (("+"|"-") monomial)*
    monomial :=  factor ("*" factor)*
    factor   :=  int ["/" int]  |  ident ["^" ["-"] int]

The rightmost field variable is the outermost uniformizer.  Over a
prime base the identifier ``u`` denotes the canonical nonresidue unless
a Laurent variable of that name shadows it.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParseError, ZeroSlot
from .fields import FieldTower, SquareClass, canonical_square_class
from .laurent import LaurentPoly
from .qform import DiagonalForm, pfister


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def match(self, token: str) -> bool:
        self.skip_ws()
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def expect(self, token: str):
        if not self.match(token):
            raise self.error(f"expected {token!r}")

    def at_end(self) -> bool:
        self.skip_ws()
        return self.pos >= len(self.text)

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected an integer")
        return int(self.text[start : self.pos])

    def ident(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and (
            self.text[self.pos].isalpha() or self.text[self.pos] == "_"
        ):
            self.pos += 1
            while self.pos < len(self.text) and (
                self.text[self.pos].isalnum() or self.text[self.pos] == "_"
            ):
                self.pos += 1
        if self.pos == start:
            raise self.error("expected an identifier")
        return self.text[start : self.pos]


def parse_field(text: str) -> FieldTower:
    s = _Scanner(text)
    s.skip_ws()
    ch = s.peek()
    if ch == "Q":
        s.pos += 1
        kind, p = "Q", None
    elif ch == "R":
        s.pos += 1
        kind, p = "R", None
    elif ch == "F":
        s.pos += 1
        kind, p = "F", s.integer()
    else:
        raise s.error("expected a base field: Q, R or F<odd prime>")
    names = []
    while s.match("(("):
        names.append(s.ident())
        s.expect("))")
    if not s.at_end():
        raise s.error("trailing characters after field descriptor")
    try:
        return FieldTower(kind, p, tuple(names))
    except ValueError as exc:
        raise ParseError(str(exc), text, 0) from exc


def _parse_factor(s: _Scanner, tower: FieldTower, coeff, exps):
    s.skip_ws()
    ch = s.peek()
    if ch.isdigit():
        num = s.integer()
        if s.match("/"):
            den = s.integer()
            if den == 0:
                raise s.error("division by zero")
            coeff = coeff * Fraction(num, den)
        else:
            coeff = coeff * num
        return coeff
    name = s.ident()
    e = 1
    if s.match("^"):
        sign = -1 if s.match("-") else 1
        e = sign * s.integer()
    if name in tower.laurent_vars:
        exps[name] = exps.get(name, 0) + e
        return coeff
    if name == "u" and tower.kind == "F" and tower.degree == 1:
        return coeff * tower.nonresidue**e if e >= 0 else coeff * Fraction(1, tower.nonresidue ** (-e))
    raise s.error(f"unknown identifier {name!r} over {tower}")


def _parse_monomial(s: _Scanner, tower: FieldTower):
    coeff = 1
    s.skip_ws()
    while s.peek() in ("+", "-"):
        if s.peek() == "-":
            coeff = -coeff
        s.pos += 1
        s.skip_ws()
    exps: dict[str, int] = {}
    coeff = _parse_factor(s, tower, coeff, exps)
    while s.match("*"):
        coeff = _parse_factor(s, tower, coeff, exps)
    return coeff, exps


def parse_class(text: str, tower: FieldTower) -> SquareClass:
    s = _Scanner(text)
    coeff, exps = _parse_monomial(s, tower)
    if not s.at_end():
        raise s.error("trailing characters after monomial")
    return canonical_square_class(tower, coeff, exps)


def _parse_slot_list(s: _Scanner, tower: FieldTower, stop: str):
    slots = []
    s.skip_ws()
    if s.match(stop):
        return tuple(slots)
    while True:
        coeff, exps = _parse_monomial(s, tower)
        if coeff == 0:
            raise ZeroSlot("slot must be nonzero")
        slots.append(canonical_square_class(tower, coeff, exps))
        if s.match(stop):
            return tuple(slots)
        s.expect(",")


def parse_slots(text: str, tower: FieldTower) -> tuple[SquareClass, ...]:
    s = _Scanner(text)
    slots = []
    while True:
        coeff, exps = _parse_monomial(s, tower)
        if coeff == 0:
            raise ZeroSlot("slot must be nonzero")
        slots.append(canonical_square_class(tower, coeff, exps))
        if s.at_end():
            return tuple(slots)
        s.expect(",")


def parse_form(text: str, tower: FieldTower) -> DiagonalForm:
    s = _Scanner(text)
    if s.match("<<"):
        slots = _parse_slot_list(s, tower, ">>")
        if not s.at_end():
            raise s.error("trailing characters after Pfister literal")
        return pfister(tower, slots)
    s.expect("[")
    entries = []
    while True:
        coeff, exps = _parse_monomial(s, tower)
        entries.append(canonical_square_class(tower, coeff, exps))
        if s.match("]"):
            break
        s.expect(",")
    if not s.at_end():
        raise s.error("trailing characters after form literal")
    return DiagonalForm(tower, tuple(entries))


def parse_poly(text_or_scanner, tower: FieldTower) -> LaurentPoly:
    s = (
        text_or_scanner
        if isinstance(text_or_scanner, _Scanner)
        else _Scanner(text_or_scanner)
    )
    out = LaurentPoly.zero(tower)
    coeff, exps = _parse_monomial(s, tower)
    out = out + LaurentPoly.monomial(tower, coeff, exps) if coeff else out
    s.skip_ws()
    while s.peek() in ("+", "-"):
        coeff, exps = _parse_monomial(s, tower)
        if coeff:
            out = out + LaurentPoly.monomial(tower, coeff, exps)
        s.skip_ws()
    if not isinstance(text_or_scanner, _Scanner) and not s.at_end():
        raise s.error("trailing characters after polynomial")
    return out


def parse_element_coords(text: str, tower: FieldTower) -> tuple[LaurentPoly, ...]:
    s = _Scanner(text)
    s.expect("(")
    coords = []
    while True:
        coords.append(parse_poly(s, tower))
        if s.match(")"):
            break
        s.expect(",")
    if not s.at_end():
        raise s.error("trailing characters after element literal")
    return tuple(coords)
