"""Reading and writing ``.lp`` files.

One stanza per line::

    (; comment ;)
    name : T.
    [x, y] lhs --> rhs.
    def name : T := V.
    thm name : T := V.

Terms use ``x : A => b`` for abstraction, ``x : A -> B`` for dependent
products, ``A -> B`` for plain arrows and ``{|...|}`` for names that are
not identifiers.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import List, Sequence, Tuple, Union

from src.errors import LpSyntaxError
from src.lp.terms import (ANON, KIND, TYPE, ConstRef, Lam, LpTerm, Pi, Sort, VarRef, app,
                          format_lp, format_name)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Comment:
    text: str


@dataclass(frozen=True)
class Decl:
    name: str
    ty: LpTerm


@dataclass(frozen=True)
class Def:
    name: str
    ty: LpTerm
    value: LpTerm


@dataclass(frozen=True)
class Thm:
    name: str
    ty: LpTerm
    value: LpTerm


@dataclass(frozen=True)
class Rewrite:
    variables: Tuple[str, ...]
    lhs: LpTerm
    rhs: LpTerm


LpEntry = Union[Comment, Decl, Def, Thm, Rewrite]


@dataclass
class LpFile:
    header: str = ""
    entries: List[LpEntry] = field(default_factory=list)

    def names(self) -> List[str]:
        return [e.name for e in self.entries if isinstance(e, (Decl, Def, Thm))]


# ----------------------------------------------------------------------
# Emitting

def format_entry(entry: LpEntry) -> str:
    if isinstance(entry, Comment):
        if ";)" in entry.text or "\n" in entry.text:
            raise LpSyntaxError(f"comment {entry.text!r} cannot be written")
        return f"(; {entry.text} ;)"
    if isinstance(entry, Decl):
        return f"{format_name(entry.name)} : {format_lp(entry.ty)}."
    if isinstance(entry, Def):
        return f"def {format_name(entry.name)} : {format_lp(entry.ty)} := {format_lp(entry.value)}."
    if isinstance(entry, Thm):
        return f"thm {format_name(entry.name)} : {format_lp(entry.ty)} := {format_lp(entry.value)}."
    variables = ", ".join(format_name(v) for v in entry.variables)
    return f"[{variables}] {format_lp(entry.lhs)} --> {format_lp(entry.rhs)}."


def emit_lp_file(lp_file: LpFile) -> bytes:
    lines = [format_entry(Comment(lp_file.header))] if lp_file.header else []
    lines += [format_entry(entry) for entry in lp_file.entries]
    return "".join(line + "\n" for line in lines).encode("utf-8")


def write_lp_file(lp_file: LpFile, path: Union[str, Path]) -> int:
    data = emit_lp_file(lp_file)
    Path(path).write_bytes(data)
    logger.debug(f"Wrote {len(data)} bytes to {path}")
    return len(data)


# ----------------------------------------------------------------------
# Parsing

_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+)
  | (?P<comment>\(;.*?;\))
  | (?P<qname>\{\|.*?\|\})
  | (?P<punct>-->|->|=>|:=|[()\[\],:.])
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
""", re.S | re.X)


@dataclass(frozen=True)
class _Token:
    kind: str   # comment, ident, keyword, sort, punct, eof
    text: str
    line: int


def _tokenize(text: str) -> List[_Token]:
    tokens: List[_Token] = []
    pos, line = 0, 1
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise LpSyntaxError(f"unexpected character {text[pos]!r}", line)
        kind = m.lastgroup
        value = m.group()
        if kind == "comment":
            tokens.append(_Token("comment", value[2:-2].strip(), line))
        elif kind == "qname":
            tokens.append(_Token("ident", value[2:-2], line))
        elif kind == "ident":
            if value in ("def", "thm"):
                tokens.append(_Token("keyword", value, line))
            elif value in (TYPE, KIND):
                tokens.append(_Token("sort", value, line))
            else:
                tokens.append(_Token("ident", value, line))
        elif kind == "punct":
            tokens.append(_Token("punct", value, line))
        line += value.count("\n")
        pos = m.end()
    tokens.append(_Token("eof", "", line))
    return tokens


class _Parser:
    def __init__(self, tokens: List[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.bound: List[str] = []

    def peek(self, offset: int = 0) -> _Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> _Token:
        token = self.peek()
        self.pos += 1
        return token

    def at(self, text: str, offset: int = 0) -> bool:
        token = self.peek(offset)
        return token.kind == "punct" and token.text == text

    def expect(self, text: str) -> _Token:
        token = self.advance()
        if token.kind != "punct" or token.text != text:
            raise LpSyntaxError(f"expected {text!r}, found {token.text or 'end of file'!r}", token.line)
        return token

    def ident(self) -> str:
        token = self.advance()
        if token.kind != "ident":
            raise LpSyntaxError(f"expected a name, found {token.text or 'end of file'!r}", token.line)
        return token.text

    # entries

    def entries(self) -> List[LpEntry]:
        result: List[LpEntry] = []
        while self.peek().kind != "eof":
            result.append(self.entry())
        return result

    def entry(self) -> LpEntry:
        token = self.peek()
        if token.kind == "comment":
            self.advance()
            return Comment(token.text)
        if token.kind == "keyword":
            self.advance()
            name = self.ident()
            self.expect(":")
            ty = self.term()
            self.expect(":=")
            value = self.term()
            self.expect(".")
            return Def(name, ty, value) if token.text == "def" else Thm(name, ty, value)
        if self.at("["):
            return self.rewrite()
        name = self.ident()
        self.expect(":")
        ty = self.term()
        self.expect(".")
        return Decl(name, ty)

    def rewrite(self) -> Rewrite:
        self.expect("[")
        variables: List[str] = []
        if not self.at("]"):
            variables.append(self.ident())
            while self.at(","):
                self.advance()
                variables.append(self.ident())
        self.expect("]")
        self.bound = list(variables)
        try:
            lhs = self.term()
            self.expect("-->")
            rhs = self.term()
        finally:
            self.bound = []
        self.expect(".")
        return Rewrite(tuple(variables), lhs, rhs)

    # terms

    def term(self) -> LpTerm:
        if self.peek().kind == "ident" and self.at(":", 1):
            return self.binder()
        left = self.application()
        if self.at("->"):
            self.advance()
            return Pi(ANON, left, self.term())
        return left

    def binder(self) -> LpTerm:
        name = self.ident()
        self.expect(":")
        domain = self.application()
        token = self.advance()
        if token.kind != "punct" or token.text not in ("=>", "->"):
            raise LpSyntaxError(f"expected '=>' or '->' after binder {name}", token.line)
        self.bound.append(name)
        try:
            body = self.term()
        finally:
            self.bound.pop()
        return Lam(name, domain, body) if token.text == "=>" else Pi(name, domain, body)

    def application(self) -> LpTerm:
        head = self.atom()
        args: List[LpTerm] = []
        while self._starts_atom():
            args.append(self.atom())
        return app(head, *args)

    def _starts_atom(self) -> bool:
        token = self.peek()
        if token.kind == "ident":
            return not self.at(":", 1)
        return token.kind == "sort" or self.at("(")

    def atom(self) -> LpTerm:
        token = self.advance()
        if token.kind == "ident":
            return VarRef(token.text) if token.text in self.bound else ConstRef(token.text)
        if token.kind == "sort":
            return Sort(token.text)
        if token.kind == "punct" and token.text == "(":
            inner = self.term()
            self.expect(")")
            return inner
        raise LpSyntaxError(f"unexpected {token.text or 'end of file'!r}", token.line)


def parse_entries(data: Union[bytes, str]) -> List[LpEntry]:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise LpSyntaxError(f"invalid UTF-8: {e.reason}", data[:e.start].count(b"\n") + 1) from None
    return _Parser(_tokenize(data)).entries()


def parse_lp_file(data: Union[bytes, str]) -> LpFile:
    """Parse a file; a leading comment becomes the header."""
    entries = parse_entries(data)
    header = ""
    if entries and isinstance(entries[0], Comment):
        header = entries.pop(0).text
    return LpFile(header, entries)


def read_lp_file(path: Union[str, Path]) -> LpFile:
    return parse_lp_file(Path(path).read_bytes())


def parse_term(text: str, bound: Sequence[str] = ()) -> LpTerm:
    parser = _Parser(_tokenize(text))
    parser.bound = list(bound)
    term = parser.term()
    if parser.peek().kind != "eof":
        raise LpSyntaxError(f"trailing input {parser.peek().text!r}", parser.peek().line)
    return term
