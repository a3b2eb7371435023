"""Serialize a theorem's step trace as an article.

Output is a version header, a prelude defining every constant the proof
mentions, the proof itself and a closing ``thm``. Objects requested at
least twice are stored in the object table with ``def`` on first use and
recalled with ``ref`` afterwards; keys are numbered in first-occurrence
order, so output is deterministic.
"""

from __future__ import annotations

import logging
from collections import Counter
from typing import Any, Dict, List, Optional, Set, Tuple, Union

from src.article.commands import ARTICLE_VERSION, ArticleCommand, Dialect, IntLit, Named, StrLit
from src.errors import ArticleError, DialectTooWeak, UnknownConstant
from src.hol.terms import App, Const, TermExpr, Var, term_constants
from src.hol.types import TypeVar
from src.kernel import trace as rules
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem
from src.kernel.trace import StepTrace

logger = logging.getLogger(__name__)

# primitive in at least one kernel mode; defined ones are emitted instead
BUILTIN_CONSTANTS = {"=", "==>", "!"}

_RULE_COMMANDS = {
    rules.TRANS: "trans",
    rules.MK_COMB: "appThm",
    rules.EQ_MP: "eqMp",
    rules.DEDUCT_ANTISYM: "deductAntisym",
    rules.MP: "mp",
}

Action = Tuple[str, Any]


class _ArticleWriter:
    """Runs the same emission twice: once counting requests, once writing."""

    def __init__(self, definitions: List[Tuple[str, TermExpr, StepTrace]]):
        self.definitions = definitions
        self.counts: Counter = Counter()
        self.seen: Set[Any] = set()
        self.table: Dict[Any, int] = {}
        self.out: Optional[List[ArticleCommand]] = None

    def write(self, root: StepTrace) -> List[ArticleCommand]:
        self._emit_all(root)
        self.out = []
        self._emit_all(root)
        return self.out

    # ------------------------------------------------------------------

    def _emit_all(self, root: StepTrace) -> None:
        self._cmd(IntLit(ARTICLE_VERSION), Named("version"))
        for name, rhs, node in self.definitions:
            self._run([("name", name), ("term", rhs), ("cmd", "defineConst")])
            self._store(("thm", id(node)))
            self._cmd(Named("pop"))
            self._store(("const", name))
            self._cmd(Named("pop"))
        actions: List[Action] = [("thm", root)]
        actions += self._list_actions([("term", h) for h in root.hyps])
        actions += [("term", root.concl), ("cmd", "thm")]
        self._run(actions)

    def _cmd(self, *cmds: ArticleCommand) -> None:
        if self.out is not None:
            self.out.extend(cmds)

    def _store(self, key: Any) -> None:
        """Table the object on top of the stack unconditionally."""
        if self.out is None:
            self.seen.add(key)
            return
        self.table[key] = len(self.table)
        self._cmd(IntLit(self.table[key]), Named("def"))

    def _run(self, actions: List[Action]) -> None:
        stack = list(reversed(actions))
        while stack:
            kind, value = stack.pop()
            if kind == "cmd":
                self._cmd(Named(value))
            elif kind == "name":
                self._cmd(StrLit(value))
            elif kind == "num":
                self._cmd(IntLit(value))
            elif kind == "share":
                if self.out is not None and self.counts[value] >= 2:
                    self.table[value] = len(self.table)
                    self._cmd(IntLit(self.table[value]), Named("def"))
            else:
                key, expansion = self._expand(kind, value)
                if self._reuse(key):
                    continue
                stack.append(("share", key))
                stack.extend(reversed(expansion))

    def _reuse(self, key: Any) -> bool:
        if self.out is None:
            self.counts[key] += 1
            if key in self.seen:
                return True
            self.seen.add(key)
            return False
        if key in self.table:
            self._cmd(IntLit(self.table[key]), Named("ref"))
            return True
        return False

    @staticmethod
    def _list_actions(items: List[Action]) -> List[Action]:
        return items + [("cmd", "nil")] + [("cmd", "cons")] * len(items)

    def _expand(self, kind: str, value: Any) -> Tuple[Any, List[Action]]:
        if kind == "type":
            if isinstance(value, TypeVar):
                return ("type", value), [("name", value.name), ("cmd", "varType")]
            args = self._list_actions([("type", arg) for arg in value.args])
            return ("type", value), [("typeop", value.op)] + args + [("cmd", "opType")]
        if kind == "typeop":
            return ("typeop", value), [("name", value), ("cmd", "typeOp")]
        if kind == "const":
            return ("const", value), [("name", value), ("cmd", "const")]
        if kind == "var":
            return ("var", value), [("name", value.name), ("type", value.ty), ("cmd", "var")]
        if kind == "term":
            return ("term", value), self._term_actions(value)
        if kind == "thm":
            return ("thm", id(value)), self._thm_actions(value)
        raise ArticleError(f"cannot serialize a {kind}")

    @staticmethod
    def _term_actions(t: TermExpr) -> List[Action]:
        if isinstance(t, Var):
            return [("var", t), ("cmd", "varTerm")]
        if isinstance(t, Const):
            return [("const", t.name), ("type", t.ty), ("cmd", "constTerm")]
        if isinstance(t, App):
            return [("term", t.fun), ("term", t.arg), ("cmd", "appTerm")]
        return [("var", t.bound), ("term", t.body), ("cmd", "absTerm")]

    def _thm_actions(self, node: StepTrace) -> List[Action]:
        rule = node.rule
        premises = [("thm", p) for p in node.premises]
        if rule in _RULE_COMMANDS:
            return premises + [("cmd", _RULE_COMMANDS[rule])]
        if rule == rules.REFL:
            return [("term", node.payload[0]), ("cmd", "refl")]
        if rule == rules.BETA:
            return [("term", node.payload[0]), ("cmd", "betaConv")]
        if rule == rules.ASSUME:
            return [("term", node.payload[0]), ("cmd", "assume")]
        if rule == rules.ABS:
            return [("var", node.payload[0])] + premises + [("cmd", "absThm")]
        if rule == rules.GEN:
            return [("var", node.payload[0])] + premises + [("cmd", "gen")]
        if rule == rules.DISCH:
            return [("term", node.payload[0])] + premises + [("cmd", "disch")]
        if rule == rules.SPEC:
            return [("term", node.payload[0])] + premises + [("cmd", "spec")]
        if rule == rules.INST:
            sigma = [("list", [("var", v), ("term", t)]) for v, t in node.payload[0]]
            return self._subst_actions([], sigma) + premises + [("cmd", "subst")]
        if rule == rules.INST_TYPE:
            theta = [("list", [("name", tv.name), ("type", ty)]) for tv, ty in node.payload[0]]
            return self._subst_actions(theta, []) + premises + [("cmd", "subst")]
        if rule == rules.AXIOM:
            return (self._list_actions([("term", h) for h in node.hyps])
                    + [("term", node.payload[0]), ("cmd", "axiom")])
        if rule == rules.DEFINE_CONST:
            raise ArticleError(f"definition of {node.payload[0].name} missing from the prelude")
        raise ArticleError(f"trace node {rule} cannot be serialized")

    def _subst_actions(self, theta: List[Action], sigma: List[Action]) -> List[Action]:
        def flatten(items: List[Action]) -> List[Action]:
            out: List[Action] = []
            for _, pair in items:
                out += self._list_actions(pair)
            return out + [("cmd", "nil")] + [("cmd", "cons")] * len(items)

        return flatten(theta) + flatten(sigma) + [("cmd", "nil"), ("cmd", "cons"), ("cmd", "cons")]


def _needed_definitions(root: StepTrace, ctx: Optional[KernelContext]) -> List[Tuple[str, TermExpr, StepTrace]]:
    """Definitions the proof relies on, closed under dependency, in definition order."""
    available: Dict[str, Tuple[TermExpr, StepTrace]] = {}
    if ctx is not None:
        for name, (_, th) in ctx.definitions.items():
            available[name] = (th.concl.arg, th.trace)
    mentioned: Dict[str, None] = {}
    for node in root.walk():
        if node.rule == rules.DEFINE_TYPE_OP:
            raise ArticleError("type definitions are not serialized")
        if node.rule == rules.DEFINE_CONST:
            const, rhs = node.payload
            available.setdefault(const.name, (rhs, node))
            mentioned[const.name] = None
        for term in node.hyps + (node.concl,):
            term_constants(term, mentioned)

    needed: Set[str] = set()
    pending = list(mentioned)
    while pending:
        name = pending.pop()
        if name in needed:
            continue
        if name not in available:
            if name in BUILTIN_CONSTANTS:
                continue
            raise UnknownConstant(f"no definition available for constant {name}")
        needed.add(name)
        pending.extend(term_constants(available[name][0]))

    ordered: List[str] = []
    visited: Set[str] = set()

    def visit(name: str) -> None:
        if name in visited or name not in needed:
            return
        visited.add(name)
        for dep in term_constants(available[name][0]):
            visit(dep)
        ordered.append(name)

    for name in available:
        visit(name)
    return [(name,) + available[name] for name in ordered]


def serialize(th: Theorem, dialect: Union[str, Dialect] = Dialect.EXTENDED,
              ctx: Optional[KernelContext] = None) -> List[ArticleCommand]:
    """Commands whose replay in a fresh context of the same mode re-derives ``th``."""
    dialect = Dialect.parse(dialect)
    if dialect is Dialect.STANDARD and th.trace.uses_extended_rules():
        raise DialectTooWeak("the proof uses MP, DISCH, GEN or SPEC; use the extended dialect")
    definitions = _needed_definitions(th.trace, ctx)
    cmds = _ArticleWriter(definitions).write(th.trace)
    logger.debug(f"Serialized {th.step_count} steps as {len(cmds)} commands")
    return cmds
