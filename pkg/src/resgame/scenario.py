"""Scenario files: parsing, validation and canonical serialization.

A scenario is a line-oriented text file::

    # comments run to end of line
    name zoogle_plus
    game { n = 3, a = 10, c = 2 }          # parametric baseline, or ...
    worths {                               # ... an explicit worth table
      size 1 = 0                           # every coalition of one size
      set {0,1} = 2                        # a single coalition
    }
    offer { set {0,1}, worth 12 }          # repeatable
    provider_worths { size 1 = 0 ... }     # optional provider estimates

Commas between items are optional. Inside a worth block ``n = k`` fixes the
number of services; otherwise it is inferred from the largest size or index.
A block with only ``size`` lines is size-symmetric; once any ``set`` line
appears the table is explicit, and ``size`` lines fill the coalitions not
given individually.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Union

from .errors import ParseError, ResourceGameError, ValidationError
from .game_model import (
    CharacteristicFunction,
    Coalition,
    CompetitorOffer,
    CournotGame,
    Mode,
    iter_coalitions,
    worth_by_size,
    worth_from_table,
)

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<number>[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?(?![A-Za-z_]))
  | (?P<word>[A-Za-z_][A-Za-z0-9_.+\-]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<punct>[{}=,])
    """,
    re.VERBOSE,
)
_BARE_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.+\-]*\Z")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = match.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, match.group(), line, pos - line_start + 1))
        newlines = match.group().count("\n")
        if newlines:
            line += newlines
            line_start = match.start() + match.group().rfind("\n") + 1
        pos = match.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


@dataclass(frozen=True)
class Scenario:
    name: str
    game: Optional[CournotGame] = None
    worth_table: Optional[CharacteristicFunction] = None
    offers: tuple[CompetitorOffer, ...] = ()
    provider_estimates: Optional[CharacteristicFunction] = None

    def __post_init__(self):
        if (self.game is None) == (self.worth_table is None):
            raise ValidationError("a scenario needs exactly one of a game block or a worths block")
        n = self.n
        for offer in self.offers:
            if offer.coalition.max_index >= n:
                raise ValidationError(
                    f"offer coalition {offer.coalition} references a service outside 0..{n - 1}"
                )
        if self.provider_estimates is not None and self.provider_estimates.n != n:
            raise ValidationError(
                f"provider_worths cover {self.provider_estimates.n} services, baseline has {n}"
            )

    @property
    def n(self) -> int:
        return self.game.n if self.game is not None else self.worth_table.n


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message: str, tok: Optional[Token] = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, tok.line, tok.column)

    def expect(self, kind: str, text: Optional[str] = None) -> Token:
        tok = self.next()
        if tok.kind != kind or (text is not None and tok.text != text):
            want = repr(text) if text is not None else kind
            got = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise self.error(f"expected {want}, got {got}", tok)
        return tok

    def accept(self, kind: str, text: Optional[str] = None) -> Optional[Token]:
        tok = self.peek()
        if tok.kind == kind and (text is None or tok.text == text):
            return self.next()
        return None

    def number(self) -> float:
        return float(self.expect("number").text)

    def integer(self) -> int:
        tok = self.expect("number")
        try:
            return int(tok.text)
        except ValueError:
            raise self.error(f"expected an integer, got {tok.text!r}", tok) from None

    def coalition_literal(self) -> tuple[Coalition, Token]:
        start = self.expect("punct", "{")
        indices = [self.integer()]
        while self.accept("punct", ","):
            indices.append(self.integer())
        self.expect("punct", "}")
        try:
            return Coalition.from_indices(indices), start
        except ResourceGameError as exc:
            raise ValidationError(f"line {start.line}: {exc}") from None

    def block_items(self, item):
        """Run ``item`` for each entry of a ``{ ... }`` block."""
        self.expect("punct", "{")
        while not self.accept("punct", "}"):
            if self.peek().kind == "eof":
                raise self.error("unterminated block")
            item()
            self.accept("punct", ",")

    # statements

    def scenario(self) -> Scenario:
        seen: dict[str, Token] = {}
        name = "scenario"
        game = worths = provider = None
        offers = []
        while self.peek().kind != "eof":
            tok = self.expect("word")
            key = tok.text
            if key != "offer":
                if key in seen:
                    raise ValidationError(f"line {tok.line}: duplicate '{key}' statement")
                seen[key] = tok
            if key == "name":
                self.accept("punct", "=")
                value = self.next()
                if value.kind == "string":
                    name = json.loads(value.text)
                elif value.kind in ("word", "number"):
                    name = value.text
                else:
                    raise self.error("expected a scenario name", value)
            elif key == "game":
                game = self.game_block(tok)
            elif key in ("worths", "provider_worths"):
                cf = self.worth_block(tok)
                if key == "worths":
                    worths = cf
                else:
                    provider = cf
            elif key == "offer":
                offers.append(self.offer_block(tok))
            else:
                raise self.error(f"unknown statement {key!r}", tok)
        return Scenario(name, game, worths, tuple(offers), provider)

    def game_block(self, start: Token) -> CournotGame:
        params: dict[str, float] = {}

        def item():
            tok = self.expect("word")
            if tok.text not in ("n", "a", "c", "gamma"):
                raise self.error(f"unknown game parameter {tok.text!r}", tok)
            if tok.text in params:
                raise ValidationError(f"line {tok.line}: game parameter '{tok.text}' repeated")
            self.expect("punct", "=")
            params[tok.text] = self.integer() if tok.text == "n" else self.number()

        self.block_items(item)
        missing = [k for k in ("n", "a", "c") if k not in params]
        if missing:
            raise ValidationError(f"line {start.line}: game block lacks {', '.join(missing)}")
        try:
            return CournotGame(params["n"], params["a"], params["c"], params.get("gamma"))
        except ResourceGameError as exc:
            raise ValidationError(f"line {start.line}: {exc}") from None

    def worth_block(self, start: Token) -> CharacteristicFunction:
        declared_n = None
        sizes: dict[int, float] = {}
        sets: dict[Coalition, float] = {}

        def item():
            nonlocal declared_n
            tok = self.expect("word")
            if tok.text == "n":
                self.expect("punct", "=")
                declared_n = self.integer()
            elif tok.text == "size":
                k = self.integer()
                self.expect("punct", "=")
                if k in sizes:
                    raise ValidationError(f"line {tok.line}: size {k} given twice")
                sizes[k] = self.number()
            elif tok.text == "set":
                coalition, _ = self.coalition_literal()
                self.expect("punct", "=")
                if coalition in sets:
                    raise ValidationError(f"line {tok.line}: coalition {coalition} given twice")
                sets[coalition] = self.number()
            else:
                raise self.error(f"expected 'size', 'set' or 'n', got {tok.text!r}", tok)

        self.block_items(item)
        where = f"line {start.line}"
        if declared_n is not None:
            n = declared_n
        else:
            n = max(
                [max(sizes, default=0)] + [c.max_index + 1 for c in sets]
            )
        if n < 1:
            raise ValidationError(f"{where}: empty worth block")
        if any(not 1 <= k <= n for k in sizes):
            raise ValidationError(f"{where}: sizes must lie in 1..{n}")
        for coalition in sets:
            if coalition.max_index >= n:
                raise ValidationError(
                    f"{where}: coalition {coalition} references a service outside 0..{n - 1}"
                )
        try:
            if not sets:
                return worth_by_size(n, sizes)
            table = dict(sets)
            for coalition in iter_coalitions(n):
                if coalition not in table and coalition.size in sizes:
                    table[coalition] = sizes[coalition.size]
            return worth_from_table(n, table)
        except ResourceGameError as exc:
            raise ValidationError(f"{where}: {exc}") from None

    def offer_block(self, start: Token) -> CompetitorOffer:
        found: dict[str, object] = {}

        def item():
            tok = self.expect("word")
            if tok.text not in ("set", "worth"):
                raise self.error(f"expected 'set' or 'worth', got {tok.text!r}", tok)
            if tok.text in found:
                raise ValidationError(f"line {tok.line}: offer '{tok.text}' repeated")
            if tok.text == "set":
                found["set"], _ = self.coalition_literal()
            else:
                self.accept("punct", "=")
                found["worth"] = self.number()

        self.block_items(item)
        if len(found) != 2:
            raise ValidationError(f"line {start.line}: offer needs both a set and a worth")
        try:
            return CompetitorOffer(found["set"], found["worth"])
        except ResourceGameError as exc:
            raise ValidationError(f"line {start.line}: {exc}") from None


def parse_scenario(source: Union[str, Path]) -> Scenario:
    """Parse scenario text, or the file at ``source`` when given a :class:`Path`.

    Raises:
        ParseError: malformed syntax (with line and column).
        ValidationError: well-formed text describing an invalid scenario.
    """
    text = source.read_text() if isinstance(source, Path) else source
    return _Parser(text).scenario()


def load_scenario(path: Union[str, Path]) -> Scenario:
    return parse_scenario(Path(path))


def _num(x: float) -> str:
    return repr(float(x))


def _worth_block(key: str, cf: CharacteristicFunction) -> list[str]:
    lines = [key + " {"]
    if cf.mode is Mode.EXPLICIT_TABLE:
        lines.append(f"  n = {cf.n}")
        lines += [f"  set {c} = {_num(cf.worth(c))}" for c in iter_coalitions(cf.n)]
    else:
        lines += [f"  size {s} = {_num(v)}" for s, v in enumerate(cf.by_size, start=1)]
    lines.append("}")
    return lines


def dump_scenario(scenario: Scenario) -> str:
    """Canonical text form; ``parse_scenario(dump_scenario(s)) == s``."""
    name = scenario.name if _BARE_NAME.match(scenario.name) else json.dumps(scenario.name)
    lines = [f"name {name}"]
    if scenario.game is not None:
        g = scenario.game
        params = f"n = {g.n}, a = {_num(g.a)}, c = {_num(g.c)}"
        if g.gamma is not None:
            params += f", gamma = {_num(g.gamma)}"
        lines.append("game { " + params + " }")
    else:
        lines += _worth_block("worths", scenario.worth_table)
    for offer in scenario.offers:
        lines.append(f"offer {{ set {offer.coalition}, worth {_num(offer.worth)} }}")
    if scenario.provider_estimates is not None:
        lines += _worth_block("provider_worths", scenario.provider_estimates)
    return "\n".join(lines) + "\n"
