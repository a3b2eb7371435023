"""Named λΠ-modulo terms and their concrete syntax."""

from __future__ import annotations

import re
import sys
from dataclasses import dataclass
from typing import Iterable, List, Sequence, Set, Tuple, Union

# proof terms nest as deep as the trace they come from
if sys.getrecursionlimit() < 20000:
    sys.setrecursionlimit(20000)

TYPE = "TYPE"
KIND = "KIND"

# binder name of a non-dependent product
ANON = "_"

KEYWORDS = frozenset({"def", "thm", TYPE, KIND})
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*")


@dataclass(frozen=True)
class Sort:
    name: str


@dataclass(frozen=True)
class ConstRef:
    name: str


@dataclass(frozen=True)
class VarRef:
    name: str


@dataclass(frozen=True)
class LpApp:
    fun: "LpTerm"
    arg: "LpTerm"


@dataclass(frozen=True)
class Lam:
    name: str
    annot: "LpTerm"
    body: "LpTerm"


@dataclass(frozen=True)
class Pi:
    name: str
    domain: "LpTerm"
    codomain: "LpTerm"


LpTerm = Union[Sort, ConstRef, VarRef, LpApp, Lam, Pi]

TYPE_SORT = Sort(TYPE)
KIND_SORT = Sort(KIND)


def app(fun: LpTerm, *args: LpTerm) -> LpTerm:
    for arg in args:
        fun = LpApp(fun, arg)
    return fun


def arrow(domain: LpTerm, codomain: LpTerm) -> Pi:
    return Pi(ANON, domain, codomain)


def pis(binders: Sequence[Tuple[str, LpTerm]], body: LpTerm) -> LpTerm:
    for name, ty in reversed(binders):
        body = Pi(name, ty, body)
    return body


def lams(binders: Sequence[Tuple[str, LpTerm]], body: LpTerm) -> LpTerm:
    for name, ty in reversed(binders):
        body = Lam(name, ty, body)
    return body


def strip_app(t: LpTerm) -> Tuple[LpTerm, List[LpTerm]]:
    args: List[LpTerm] = []
    while isinstance(t, LpApp):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def head_name(t: LpTerm) -> str:
    head, _ = strip_app(t)
    if isinstance(head, (ConstRef, VarRef)):
        return head.name
    return ""


def is_identifier(name: str) -> bool:
    return bool(_IDENT_RE.fullmatch(name)) and name not in KEYWORDS


def format_name(name: str) -> str:
    """Identifier as written in files; anything else is wrapped in ``{| |}``."""
    if is_identifier(name):
        return name
    if "|}" in name or "\n" in name:
        raise ValueError(f"name {name!r} cannot be written")
    return "{|" + name + "|}"


# precedence levels of the printer
_TOP, _APP, _ATOM = 0, 1, 2


def _format(t: LpTerm, level: int) -> str:
    if isinstance(t, Sort):
        return t.name
    if isinstance(t, (ConstRef, VarRef)):
        return format_name(t.name)
    if isinstance(t, LpApp):
        text = f"{_format(t.fun, _APP)} {_format(t.arg, _ATOM)}"
        return f"({text})" if level >= _ATOM else text
    if isinstance(t, Lam):
        text = f"{format_name(t.name)} : {_format(t.annot, _APP)} => {_format(t.body, _TOP)}"
    elif t.name == ANON:
        text = f"{_format(t.domain, _APP)} -> {_format(t.codomain, _TOP)}"
    else:
        text = f"{format_name(t.name)} : {_format(t.domain, _APP)} -> {_format(t.codomain, _TOP)}"
    return f"({text})" if level > _TOP else text


def format_lp(t: LpTerm) -> str:
    return _format(t, _TOP)


def free_names(t: LpTerm, bound: Iterable[str] = ()) -> List[str]:
    """Names referenced by VarRef outside any binder of the same name."""
    found: List[str] = []

    def walk(u: LpTerm, scope: Tuple[str, ...]) -> None:
        if isinstance(u, VarRef):
            if u.name not in scope and u.name not in found:
                found.append(u.name)
        elif isinstance(u, LpApp):
            walk(u.fun, scope)
            walk(u.arg, scope)
        elif isinstance(u, Lam):
            walk(u.annot, scope)
            walk(u.body, scope + (u.name,))
        elif isinstance(u, Pi):
            walk(u.domain, scope)
            walk(u.codomain, scope + (u.name,))

    walk(t, tuple(bound))
    return found


def const_names(t: LpTerm) -> Set[str]:
    found: Set[str] = set()
    stack = [t]
    while stack:
        u = stack.pop()
        if isinstance(u, ConstRef):
            found.add(u.name)
        elif isinstance(u, LpApp):
            stack += [u.fun, u.arg]
        elif isinstance(u, Lam):
            stack += [u.annot, u.body]
        elif isinstance(u, Pi):
            stack += [u.domain, u.codomain]
    return found


def term_size(t: LpTerm) -> int:
    size = 0
    stack = [t]
    while stack:
        u = stack.pop()
        size += 1
        if isinstance(u, LpApp):
            stack += [u.fun, u.arg]
        elif isinstance(u, Lam):
            stack += [u.annot, u.body]
        elif isinstance(u, Pi):
            stack += [u.domain, u.codomain]
    return size
