"""Tokenizer for game files."""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..errors import LexError

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<number>\d+(?:\.\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<op>>>|\|\||\^\*|->|\.\.|==|!=|<=|>=|[=<>+\-*/()\[\]{},;:])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "name", "number", "op" or "eof"
    value: str
    line: int
    col: int

    def __str__(self):
        return "end of input" if self.kind == "eof" else repr(self.value)


def tokenize(text: str, path: str | None = None) -> list[Token]:
    tokens = []
    line, line_start, i = 1, 0, 0
    while i < len(text):
        m = _TOKEN.match(text, i)
        if m is None:
            raise LexError(f"unexpected character {text[i]!r}", line, i - line_start + 1, path)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, m.group(), line, m.start() - line_start + 1))
        i = m.end()
    tokens.append(Token("eof", "", line, i - line_start + 1))
    return tokens
