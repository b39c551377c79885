"""Text front end: parse, check and elaborate ``.og`` game files."""
from __future__ import annotations

from ..core import OpenGame
from .dot import export_dot
from .elaborate import elaborate
from .parser import parse
from .printer import format_program
from .typecheck import TypedProgram, typecheck


def check_source(text: str, path: str | None = None) -> TypedProgram:
    return typecheck(parse(text, path), path)


def load_source(text: str, path: str | None = None) -> OpenGame:
    return elaborate(check_source(text, path))


def load_file(path) -> OpenGame:
    with open(path, encoding="utf-8") as fh:
        return load_source(fh.read(), str(path))


__all__ = [
    "parse",
    "typecheck",
    "elaborate",
    "export_dot",
    "format_program",
    "check_source",
    "load_source",
    "load_file",
    "TypedProgram",
]
