"""Article commands and their line-based text form.

One command per LF-terminated line: a decimal integer, a double-quoted
name (backslash escapes ``\\"`` and ``\\\\``) or a command word. Lines
starting with ``#`` are comments.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Iterable, List, Optional, Union

from src.errors import ArticleSyntaxError, UnknownCommand

logger = logging.getLogger(__name__)

ARTICLE_VERSION = 6

STANDARD_COMMANDS = frozenset({
    "absTerm", "absThm", "appTerm", "appThm", "assume", "axiom", "betaConv", "cons",
    "const", "constTerm", "deductAntisym", "def", "defineConst", "defineTypeOp", "eqMp",
    "hdTl", "nil", "opType", "pop", "pragma", "proveHyp", "ref", "refl", "remove", "subst",
    "sym", "thm", "trans", "typeOp", "var", "varTerm", "varType", "version",
})

EXTENSION_COMMANDS = frozenset({"mp", "disch", "gen", "spec"})

_INT_RE = re.compile(r"-?[0-9]+")
_WORD_RE = re.compile(r"[A-Za-z]+")


class Dialect(str, Enum):
    STANDARD = "standard"
    EXTENDED = "extended"

    @classmethod
    def parse(cls, value: Union[str, "Dialect"]) -> "Dialect":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown article dialect {value!r}; expected 'standard' or 'extended'") from None

    def commands(self) -> frozenset:
        if self is Dialect.EXTENDED:
            return STANDARD_COMMANDS | EXTENSION_COMMANDS
        return STANDARD_COMMANDS


@dataclass(frozen=True)
class IntLit:
    value: int
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class StrLit:
    value: str
    line: Optional[int] = field(default=None, compare=False)


@dataclass(frozen=True)
class Named:
    name: str
    line: Optional[int] = field(default=None, compare=False)


ArticleCommand = Union[IntLit, StrLit, Named]


def quote_name(name: str) -> str:
    if "\n" in name:
        raise ArticleSyntaxError(f"name {name!r} contains a line break")
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def unquote_name(text: str, line: Optional[int] = None) -> str:
    if len(text) < 2 or not (text.startswith('"') and text.endswith('"')):
        raise ArticleSyntaxError(f"malformed name {text}", line)
    chars: List[str] = []
    body = text[1:-1]
    i = 0
    while i < len(body):
        ch = body[i]
        if ch == "\\":
            if i + 1 >= len(body) or body[i + 1] not in ('"', "\\"):
                raise ArticleSyntaxError(f"bad escape in name {text}", line)
            chars.append(body[i + 1])
            i += 2
            continue
        if ch == '"':
            raise ArticleSyntaxError(f"unescaped quote in name {text}", line)
        chars.append(ch)
        i += 1
    return "".join(chars)


def format_command(cmd: ArticleCommand) -> str:
    if isinstance(cmd, IntLit):
        return str(cmd.value)
    if isinstance(cmd, StrLit):
        return quote_name(cmd.value)
    return cmd.name


def format_article(cmds: Iterable[ArticleCommand]) -> bytes:
    """Render commands as UTF-8 text, one LF-terminated line each."""
    return "".join(format_command(cmd) + "\n" for cmd in cmds).encode("utf-8")


def parse_line(text: str, line: int, dialect: Dialect = Dialect.EXTENDED) -> ArticleCommand:
    if _INT_RE.fullmatch(text):
        return IntLit(int(text), line)
    if text.startswith('"'):
        return StrLit(unquote_name(text, line), line)
    if _WORD_RE.fullmatch(text):
        if text in dialect.commands():
            return Named(text, line)
        if text in EXTENSION_COMMANDS:
            raise UnknownCommand(f"{text} is an extended-dialect command", line)
        raise UnknownCommand(f"unknown command {text}", line)
    raise ArticleSyntaxError(f"cannot parse {text!r}", line)


def parse(data: Union[bytes, str], dialect: Union[str, Dialect] = Dialect.EXTENDED) -> List[ArticleCommand]:
    """Parse article text; blank and ``#`` lines are skipped, line numbers kept."""
    dialect = Dialect.parse(dialect)
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            line = data[:e.start].count(b"\n") + 1
            raise ArticleSyntaxError(f"invalid UTF-8: {e.reason}", line) from None
    cmds: List[ArticleCommand] = []
    for number, raw in enumerate(data.split("\n"), start=1):
        text = raw.strip()
        if not text or text.startswith("#"):
            continue
        cmds.append(parse_line(text, number, dialect))
    return cmds


def write_file(cmds: Iterable[ArticleCommand], path: Union[str, Path]) -> int:
    """Write an article; returns the number of bytes written."""
    data = format_article(cmds)
    Path(path).write_bytes(data)
    logger.debug(f"Wrote {len(data)} bytes to {path}")
    return len(data)


def read_file(path: Union[str, Path], dialect: Union[str, Dialect] = Dialect.EXTENDED) -> List[ArticleCommand]:
    return parse(Path(path).read_bytes(), dialect)
