"""Stack machine replaying article commands against a kernel context."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.article.commands import ARTICLE_VERSION, ArticleCommand, IntLit, Named, StrLit
from src.errors import (ArticleError, ExportMismatch, HolkitError, OperandKindMismatch,
                        StackUnderflow)
from src.hol.terms import Abs, App, Const, Var, alpha_equal
from src.hol.types import TypeApp, TypeVar
from src.kernel import conv
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem, sequents_alpha_equal


class ObjectKind(str, Enum):
    NUM = "Num"
    NAME = "Name"
    LIST = "List"
    TYPE_OP = "TypeOp"
    TYPE = "Type"
    VAR = "Var"
    TERM = "Term"
    THM = "Thm"
    CONST = "Const"


@dataclass(frozen=True)
class ArticleObject:
    kind: ObjectKind
    value: Any

    def __str__(self) -> str:
        return f"{self.kind.value}({self.value})"


@dataclass
class VmState:
    stack: List[ArticleObject] = field(default_factory=list)
    table: Dict[int, ArticleObject] = field(default_factory=dict)
    assumptions: List[Theorem] = field(default_factory=list)
    exported: List[Theorem] = field(default_factory=list)


@dataclass
class ReplayResult:
    exported: List[Theorem]
    assumed: List[Theorem]


class ArticleVM:
    """Replays one article into ``ctx``; one VM per article."""

    def __init__(self, ctx: KernelContext):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.state = VmState()

    # ------------------------------------------------------------------
    # Stack access

    def _push(self, kind: ObjectKind, value: Any) -> None:
        self.state.stack.append(ArticleObject(kind, value))

    def _pop_any(self) -> ArticleObject:
        if not self.state.stack:
            raise StackUnderflow("pop from an empty stack")
        return self.state.stack.pop()

    def _pop(self, kind: ObjectKind) -> Any:
        if not self.state.stack:
            raise StackUnderflow(f"expected {kind.value} on an empty stack")
        top = self.state.stack[-1]
        if top.kind is not kind:
            raise OperandKindMismatch(f"expected {kind.value}, found {top.kind.value}")
        return self.state.stack.pop().value

    def _pop_list(self, kind: ObjectKind) -> List[Any]:
        items = self._pop(ObjectKind.LIST)
        for item in items:
            if item.kind is not kind:
                raise OperandKindMismatch(f"expected a list of {kind.value}, found {item.kind.value}")
        return [item.value for item in items]

    def _pop_pairs(self, first: ObjectKind, second: ObjectKind) -> List[tuple]:
        pairs = []
        for item in self._pop_list(ObjectKind.LIST):
            if len(item) != 2 or item[0].kind is not first or item[1].kind is not second:
                raise OperandKindMismatch(f"expected a [{first.value}, {second.value}] pair")
            pairs.append((item[0].value, item[1].value))
        return pairs

    # ------------------------------------------------------------------
    # Replay loop

    def run(self, cmds: Sequence[ArticleCommand]) -> ReplayResult:
        for cmd in cmds:
            try:
                self.step(cmd)
            except HolkitError as e:
                if e.line is None:
                    e.line = cmd.line
                raise
            except (ValueError, KeyError) as e:
                raise ArticleError(str(e), cmd.line) from e
        self.logger.debug(
            f"Replayed {len(cmds)} commands: {len(self.state.exported)} exported, "
            f"{len(self.state.assumptions)} assumed")
        return ReplayResult(list(self.state.exported), list(self.state.assumptions))

    def step(self, cmd: ArticleCommand) -> None:
        if isinstance(cmd, IntLit):
            self._push(ObjectKind.NUM, cmd.value)
        elif isinstance(cmd, StrLit):
            self._push(ObjectKind.NAME, cmd.value)
        else:
            self._get_handler_function(cmd)()

    def _get_handler_function(self, cmd: Named) -> Callable[[], None]:
        handlers = {
            "absTerm": self._abs_term,
            "absThm": self._abs_thm,
            "appTerm": self._app_term,
            "appThm": self._app_thm,
            "assume": self._assume,
            "axiom": self._axiom,
            "betaConv": self._beta_conv,
            "cons": self._cons,
            "const": self._const,
            "constTerm": self._const_term,
            "deductAntisym": self._deduct_antisym,
            "def": self._def,
            "defineConst": self._define_const,
            "defineTypeOp": self._define_type_op,
            "eqMp": self._eq_mp,
            "hdTl": self._hd_tl,
            "nil": self._nil,
            "opType": self._op_type,
            "pop": self._pop_command,
            "pragma": self._pragma,
            "proveHyp": self._prove_hyp,
            "ref": self._ref,
            "refl": self._refl,
            "remove": self._remove,
            "subst": self._subst,
            "sym": self._sym,
            "thm": self._thm,
            "trans": self._trans,
            "typeOp": self._type_op,
            "var": self._var,
            "varTerm": self._var_term,
            "varType": self._var_type,
            "version": self._version,
            "mp": self._mp,
            "disch": self._disch,
            "gen": self._gen,
            "spec": self._spec,
        }
        handler = handlers.get(cmd.name)
        if handler is None:
            raise ArticleError(f"no handler for command {cmd.name}", cmd.line)
        return handler

    # ------------------------------------------------------------------
    # Object table and lists

    def _version(self) -> None:
        version = self._pop(ObjectKind.NUM)
        if version != ARTICLE_VERSION:
            raise ArticleError(f"unsupported article version {version}")

    def _def(self) -> None:
        key = self._pop(ObjectKind.NUM)
        if key < 0:
            raise ArticleError(f"negative object table key {key}")
        if not self.state.stack:
            raise StackUnderflow("def with an empty stack")
        self.state.table[key] = self.state.stack[-1]

    def _ref(self) -> None:
        key = self._pop(ObjectKind.NUM)
        if key not in self.state.table:
            raise ArticleError(f"object table has no entry {key}")
        self.state.stack.append(self.state.table[key])

    def _remove(self) -> None:
        key = self._pop(ObjectKind.NUM)
        if key not in self.state.table:
            raise ArticleError(f"object table has no entry {key}")
        self.state.stack.append(self.state.table.pop(key))

    def _pop_command(self) -> None:
        self._pop_any()

    def _nil(self) -> None:
        self._push(ObjectKind.LIST, ())

    def _cons(self) -> None:
        tail = self._pop(ObjectKind.LIST)
        head = self._pop_any()
        self._push(ObjectKind.LIST, (head,) + tail)

    def _hd_tl(self) -> None:
        items = self._pop(ObjectKind.LIST)
        if not items:
            raise ArticleError("hdTl of an empty list")
        self.state.stack.append(items[0])
        self._push(ObjectKind.LIST, items[1:])

    def _pragma(self) -> None:
        self._pop_any()

    # ------------------------------------------------------------------
    # Types and terms

    def _type_op(self) -> None:
        name = self._pop(ObjectKind.NAME)
        self.ctx.type_op(name)
        self._push(ObjectKind.TYPE_OP, name)

    def _op_type(self) -> None:
        args = self._pop_list(ObjectKind.TYPE)
        op = self._pop(ObjectKind.TYPE_OP)
        ty = TypeApp(op, tuple(args))
        self.ctx.check_type(ty)
        self._push(ObjectKind.TYPE, ty)

    def _var_type(self) -> None:
        self._push(ObjectKind.TYPE, TypeVar(self._pop(ObjectKind.NAME)))

    def _var(self) -> None:
        ty = self._pop(ObjectKind.TYPE)
        name = self._pop(ObjectKind.NAME)
        self._push(ObjectKind.VAR, Var(name, ty))

    def _const(self) -> None:
        name = self._pop(ObjectKind.NAME)
        self.ctx.const(name)
        self._push(ObjectKind.CONST, name)

    def _const_term(self) -> None:
        ty = self._pop(ObjectKind.TYPE)
        name = self._pop(ObjectKind.CONST)
        self._push(ObjectKind.TERM, self.ctx.const(name, ty))

    def _var_term(self) -> None:
        self._push(ObjectKind.TERM, self._pop(ObjectKind.VAR))

    def _app_term(self) -> None:
        arg = self._pop(ObjectKind.TERM)
        fun = self._pop(ObjectKind.TERM)
        term = App(fun, arg)
        self.ctx.check_term(term)
        self._push(ObjectKind.TERM, term)

    def _abs_term(self) -> None:
        body = self._pop(ObjectKind.TERM)
        bound = self._pop(ObjectKind.VAR)
        self._push(ObjectKind.TERM, Abs(bound, body))

    # ------------------------------------------------------------------
    # Proof commands

    def _push_thm(self, th: Theorem) -> None:
        self._push(ObjectKind.THM, th)

    def _refl(self) -> None:
        self._push_thm(self.ctx.refl(self._pop(ObjectKind.TERM)))

    def _assume(self) -> None:
        self._push_thm(self.ctx.assume(self._pop(ObjectKind.TERM)))

    def _beta_conv(self) -> None:
        self._push_thm(self.ctx.beta(self._pop(ObjectKind.TERM)))

    def _trans(self) -> None:
        bc = self._pop(ObjectKind.THM)
        ab = self._pop(ObjectKind.THM)
        self._push_thm(self.ctx.trans(ab, bc))

    def _app_thm(self) -> None:
        xy = self._pop(ObjectKind.THM)
        fg = self._pop(ObjectKind.THM)
        self._push_thm(self.ctx.mk_comb(fg, xy))

    def _abs_thm(self) -> None:
        th = self._pop(ObjectKind.THM)
        bound = self._pop(ObjectKind.VAR)
        self._push_thm(self.ctx.abs(bound, th))

    def _eq_mp(self) -> None:
        p = self._pop(ObjectKind.THM)
        pq = self._pop(ObjectKind.THM)
        self._push_thm(self.ctx.eq_mp(pq, p))

    def _deduct_antisym(self) -> None:
        b = self._pop(ObjectKind.THM)
        a = self._pop(ObjectKind.THM)
        self._push_thm(self.ctx.deduct_antisym(a, b))

    def _sym(self) -> None:
        self._push_thm(conv.sym(self.ctx, self._pop(ObjectKind.THM)))

    def _prove_hyp(self) -> None:
        ath = self._pop(ObjectKind.THM)
        bth = self._pop(ObjectKind.THM)
        self._push_thm(conv.prove_hyp(self.ctx, ath, bth))

    def _subst(self) -> None:
        th = self._pop(ObjectKind.THM)
        items = self._pop(ObjectKind.LIST)
        if len(items) != 2:
            raise OperandKindMismatch("subst expects a [type substitution, term substitution] list")
        self.state.stack.extend(items)
        sigma = self._pop_pairs(ObjectKind.VAR, ObjectKind.TERM)
        theta = self._pop_pairs(ObjectKind.NAME, ObjectKind.TYPE)
        if theta:
            th = self.ctx.inst_type([(TypeVar(name), ty) for name, ty in theta], th)
        # an empty subst still records one inference step
        if sigma or not theta:
            th = self.ctx.inst(sigma, th)
        self._push_thm(th)

    def _mp(self) -> None:
        p = self._pop(ObjectKind.THM)
        pq = self._pop(ObjectKind.THM)
        self._push_thm(self.ctx.mp(pq, p))

    def _disch(self) -> None:
        th = self._pop(ObjectKind.THM)
        p = self._pop(ObjectKind.TERM)
        self._push_thm(self.ctx.disch(p, th))

    def _gen(self) -> None:
        th = self._pop(ObjectKind.THM)
        x = self._pop(ObjectKind.VAR)
        self._push_thm(self.ctx.gen(x, th))

    def _spec(self) -> None:
        th = self._pop(ObjectKind.THM)
        u = self._pop(ObjectKind.TERM)
        self._push_thm(self.ctx.spec(u, th))

    # ------------------------------------------------------------------
    # Theory interface

    def _axiom(self) -> None:
        concl = self._pop(ObjectKind.TERM)
        hyps = self._pop_list(ObjectKind.TERM)
        th = self._find_axiom(hyps, concl) or self.ctx.new_axiom(concl, hyps)
        self.state.assumptions.append(th)
        self._push_thm(th)

    def _find_axiom(self, hyps, concl) -> Optional[Theorem]:
        for th in self.ctx.axioms:
            if sequents_alpha_equal(th.hyps, th.concl, hyps, concl):
                return th
        return None

    def _define_const(self) -> None:
        rhs = self._pop(ObjectKind.TERM)
        name = self._pop(ObjectKind.NAME)
        existing = self.ctx.definitions.get(name)
        if existing is not None and alpha_equal(existing[1].concl.arg, rhs):
            self.logger.debug(f"Reusing existing definition of {name}")
            th = existing[1]
        else:
            _, th = self.ctx.define_const(name, rhs)
        self._push(ObjectKind.CONST, name)
        self._push_thm(th)

    def _define_type_op(self) -> None:
        witness = self._pop(ObjectKind.THM)
        tyvars = [TypeVar(name) for name in self._pop_list(ObjectKind.NAME)]
        rep_name = self._pop(ObjectKind.NAME)
        abs_name = self._pop(ObjectKind.NAME)
        name = self._pop(ObjectKind.NAME)
        abs_rep, rep_abs = self.ctx.define_type_op(name, abs_name, rep_name, tyvars, witness)
        record = self.ctx.type_definitions[name]
        a = abs_rep.concl.arg
        r = rep_abs.concl.fun.arg.arg
        # |- (\a. abs (rep a)) = (\a. a) and |- (\r. rep (abs r) = r) = (\r. P r)
        abs_rep_fn = self.ctx.abs(a, abs_rep)
        rep_abs_fn = self.ctx.abs(r, conv.sym(self.ctx, rep_abs))
        self._push(ObjectKind.TYPE_OP, name)
        self._push(ObjectKind.CONST, record.abs_const.name)
        self._push(ObjectKind.CONST, record.rep_const.name)
        self._push_thm(abs_rep_fn)
        self._push_thm(rep_abs_fn)

    def _thm(self) -> None:
        concl = self._pop(ObjectKind.TERM)
        hyps = self._pop_list(ObjectKind.TERM)
        th = self._pop(ObjectKind.THM)
        if not sequents_alpha_equal(th.hyps, th.concl, hyps, concl):
            raise ExportMismatch(f"exported {th} does not match the declared sequent")
        if th.concl != concl:
            th = self.ctx.eq_mp(self.ctx.refl(concl), th)
        self.state.exported.append(th)


def replay(cmds: Sequence[ArticleCommand], ctx: KernelContext) -> ReplayResult:
    """Run ``cmds`` against ``ctx``, returning the exported and assumed theorems."""
    return ArticleVM(ctx).run(cmds)
