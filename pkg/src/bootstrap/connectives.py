"""Definitions of the logical connectives for each kernel mode."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

from src.errors import UnknownConstant
from src.hol.terms import (Abs, App, Const, TermExpr, Var, list_mk_abs, mk_binder, mk_eq,
                           mk_forall, mk_imp)
from src.hol.types import ALPHA, BOOL, mk_fun_type, mk_fun_types
from src.kernel.context import KernelContext, KernelMode
from src.kernel.theorem import Theorem

TRUE = "T"
FALSE = "F"
AND = "/\\"
OR = "\\/"
NOT = "~"
EXISTS = "?"
IMP = "==>"
FORALL = "!"

# dependency order of the definitions
MINIMAL_ORDER = (TRUE, AND, IMP, FORALL, EXISTS, OR, FALSE, NOT)
EXTENDED_ORDER = (TRUE, FALSE, AND, OR, EXISTS, NOT)

BOOL_BINOP = mk_fun_types([BOOL, BOOL], BOOL)
BOOL_UNOP = mk_fun_type(BOOL, BOOL)
PRED = mk_fun_type(ALPHA, BOOL)

_p = Var("p", BOOL)
_q = Var("q", BOOL)
_r = Var("r", BOOL)
_x_bool = Var("x", BOOL)
_P = Var("P", PRED)
_x = Var("x", ALPHA)
_f = Var("f", BOOL_BINOP)


def mk_true() -> Const:
    return Const(TRUE, BOOL)


def mk_false() -> Const:
    return Const(FALSE, BOOL)


def mk_conj(p: TermExpr, q: TermExpr) -> App:
    return App(App(Const(AND, BOOL_BINOP), p), q)


def mk_disj(p: TermExpr, q: TermExpr) -> App:
    return App(App(Const(OR, BOOL_BINOP), p), q)


def mk_neg(p: TermExpr) -> App:
    return App(Const(NOT, BOOL_UNOP), p)


def mk_iff(p: TermExpr, q: TermExpr) -> App:
    """Bi-implication is equality at bool."""
    return mk_eq(p, q)


def mk_exists(bound: Var, body: TermExpr) -> App:
    return mk_binder(EXISTS, bound, body)


def _common_definitions() -> Dict[str, TermExpr]:
    """Right-hand sides shared by both modes."""
    imp = mk_imp
    exists_rhs = Abs(_P, mk_forall(_q, imp(mk_forall(_x, imp(App(_P, _x), _q)), _q)))
    or_rhs = list_mk_abs([_p, _q], mk_forall(_r, imp(imp(_p, _r), imp(imp(_q, _r), _r))))
    false_rhs = mk_forall(_p, _p)
    not_rhs = Abs(_p, imp(_p, mk_false()))
    return {EXISTS: exists_rhs, OR: or_rhs, FALSE: false_rhs, NOT: not_rhs}


def minimal_definitions() -> Dict[str, TermExpr]:
    """Equality-based definitions used when ==> and ! are not primitive."""
    ident = Abs(_p, _p)
    defs = {
        TRUE: mk_eq(ident, ident),
        AND: list_mk_abs([_p, _q], mk_eq(Abs(_f, App(App(_f, _p), _q)),
                                         Abs(_f, App(App(_f, mk_true()), mk_true())))),
        IMP: list_mk_abs([_p, _q], mk_eq(mk_conj(_p, _q), _p)),
        FORALL: Abs(_P, mk_eq(_P, Abs(_x, mk_true()))),
    }
    defs.update(_common_definitions())
    return {name: defs[name] for name in MINIMAL_ORDER}


def extended_definitions() -> Dict[str, TermExpr]:
    defs = {
        TRUE: mk_forall(_x_bool, mk_imp(_x_bool, _x_bool)),
        AND: list_mk_abs([_p, _q], mk_forall(_r, mk_imp(mk_imp(_p, mk_imp(_q, _r)), _r))),
    }
    defs.update(_common_definitions())
    return {name: defs[name] for name in EXTENDED_ORDER}


def printed_extended_conjunction() -> TermExpr:
    """The extended-mode conjunction as usually printed: \\p q. !x. p ==> ((q ==> x) ==> x).

    It does not support the left projection, so it is kept for
    comparison only; ``extended_definitions`` uses the curried form.
    """
    return list_mk_abs([_p, _q], mk_forall(_x_bool, mk_imp(_p, mk_imp(mk_imp(_q, _x_bool), _x_bool))))


@dataclass
class ConnectiveTable:
    """Defined connective constants of one context with their defining theorems."""

    mode: KernelMode
    entries: Dict[str, Tuple[Const, Theorem]] = field(default_factory=dict)

    def definition(self, name: str) -> Theorem:
        try:
            return self.entries[name][1]
        except KeyError:
            raise UnknownConstant(f"connective {name} is not defined in {self.mode.value} mode") from None

    def const(self, name: str) -> Const:
        try:
            return self.entries[name][0]
        except KeyError:
            raise UnknownConstant(f"connective {name} is not defined in {self.mode.value} mode") from None

    @property
    def names(self) -> List[str]:
        return list(self.entries)

    def __contains__(self, name: str) -> bool:
        return name in self.entries


def install_connectives(ctx: KernelContext) -> ConnectiveTable:
    """Define every connective of ``ctx.mode`` in dependency order."""
    logger = logging.getLogger(__name__)
    definitions = extended_definitions() if ctx.extended else minimal_definitions()
    table = ConnectiveTable(ctx.mode)
    for name, rhs in definitions.items():
        table.entries[name] = ctx.define_const(name, rhs)
    logger.debug(f"Installed {len(table.entries)} connectives for {ctx.mode.value} mode")
    return table
