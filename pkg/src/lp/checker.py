"""A small λΠ-modulo type checker.

Conversion is β plus unfolding of ``def`` constants plus the signature's
first-order rewrite rules, tried in declaration order at the head
(leftmost-outermost). Terms are checked in a de Bruijn representation so
that binder names never matter.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union

from config import Config
from src.errors import BudgetExceeded, LpError, LpTypeError, UnboundName
from src.lp.lpfile import Comment, Decl, LpEntry, LpFile, Rewrite, Thm
from src.lp.signature import LpSignature, RewriteRule
from src.lp.terms import (ANON, KIND, TYPE, ConstRef, Lam, LpApp, LpTerm, Pi, Sort, VarRef,
                          format_lp)

logger = logging.getLogger(__name__)


# ----------------------------------------------------------------------
# de Bruijn representation; binder names are kept for printing only

@dataclass(frozen=True)
class _DSort:
    name: str


@dataclass(frozen=True)
class _DConst:
    name: str


@dataclass(frozen=True)
class _DVar:
    index: int


@dataclass(frozen=True)
class _DMeta:
    name: str


@dataclass(frozen=True)
class _DApp:
    fun: "_Db"
    arg: "_Db"


@dataclass(frozen=True)
class _DLam:
    ty: "_Db"
    body: "_Db"
    name: str = field(default=ANON, compare=False)


@dataclass(frozen=True)
class _DPi:
    ty: "_Db"
    body: "_Db"
    name: str = field(default=ANON, compare=False)


_Db = Union[_DSort, _DConst, _DVar, _DMeta, _DApp, _DLam, _DPi]

_TYPE = _DSort(TYPE)
_KIND = _DSort(KIND)


def _to_db(t: LpTerm, scope: List[str], metas: Sequence[str] = ()) -> _Db:
    if isinstance(t, VarRef):
        for depth, name in enumerate(reversed(scope)):
            if name == t.name:
                return _DVar(depth)
        if t.name in metas:
            return _DMeta(t.name)
        raise UnboundName(f"unbound variable {t.name}")
    if isinstance(t, ConstRef):
        return _DConst(t.name)
    if isinstance(t, Sort):
        return _DSort(t.name)
    if isinstance(t, LpApp):
        return _DApp(_to_db(t.fun, scope, metas), _to_db(t.arg, scope, metas))
    binder_ty = _to_db(t.annot if isinstance(t, Lam) else t.domain, scope, metas)
    scope.append(t.name)
    try:
        body = _to_db(t.body if isinstance(t, Lam) else t.codomain, scope, metas)
    finally:
        scope.pop()
    if isinstance(t, Lam):
        return _DLam(binder_ty, body, t.name)
    return _DPi(binder_ty, body, t.name)


def _mentions(t: _Db, depth: int) -> bool:
    if isinstance(t, _DVar):
        return t.index == depth
    if isinstance(t, _DApp):
        return _mentions(t.fun, depth) or _mentions(t.arg, depth)
    if isinstance(t, (_DLam, _DPi)):
        return _mentions(t.ty, depth) or _mentions(t.body, depth + 1)
    return False


def _from_db(t: _Db, names: List[str]) -> LpTerm:
    if isinstance(t, _DVar):
        if t.index >= len(names):
            return VarRef(f"#{t.index - len(names)}")
        return VarRef(names[len(names) - 1 - t.index])
    if isinstance(t, _DConst):
        return ConstRef(t.name)
    if isinstance(t, _DSort):
        return Sort(t.name)
    if isinstance(t, _DMeta):
        return VarRef(t.name)
    if isinstance(t, _DApp):
        return LpApp(_from_db(t.fun, names), _from_db(t.arg, names))
    name = t.name
    if name == ANON and _mentions(t.body, 0):
        name = "x"
    if name != ANON:
        while name in names:
            name += "'"
    binder_ty = _from_db(t.ty, names)
    names.append(name)
    try:
        body = _from_db(t.body, names)
    finally:
        names.pop()
    if isinstance(t, _DLam):
        return Lam(name, binder_ty, body)
    return Pi(name, binder_ty, body)


def _shift(t: _Db, by: int, cutoff: int = 0) -> _Db:
    if by == 0:
        return t
    if isinstance(t, _DVar):
        return _DVar(t.index + by) if t.index >= cutoff else t
    if isinstance(t, _DApp):
        return _DApp(_shift(t.fun, by, cutoff), _shift(t.arg, by, cutoff))
    if isinstance(t, _DLam):
        return _DLam(_shift(t.ty, by, cutoff), _shift(t.body, by, cutoff + 1), t.name)
    if isinstance(t, _DPi):
        return _DPi(_shift(t.ty, by, cutoff), _shift(t.body, by, cutoff + 1), t.name)
    return t


def _subst(t: _Db, depth: int, value: _Db) -> _Db:
    """Replace variable ``depth`` by ``value`` and close the gap."""
    if isinstance(t, _DVar):
        if t.index == depth:
            return _shift(value, depth)
        return _DVar(t.index - 1) if t.index > depth else t
    if isinstance(t, _DApp):
        return _DApp(_subst(t.fun, depth, value), _subst(t.arg, depth, value))
    if isinstance(t, _DLam):
        return _DLam(_subst(t.ty, depth, value), _subst(t.body, depth + 1, value), t.name)
    if isinstance(t, _DPi):
        return _DPi(_subst(t.ty, depth, value), _subst(t.body, depth + 1, value), t.name)
    return t


def _fill_metas(t: _Db, binding: Dict[str, _Db], depth: int = 0) -> _Db:
    if isinstance(t, _DMeta):
        return _shift(binding[t.name], depth)
    if isinstance(t, _DApp):
        return _DApp(_fill_metas(t.fun, binding, depth), _fill_metas(t.arg, binding, depth))
    if isinstance(t, _DLam):
        return _DLam(_fill_metas(t.ty, binding, depth), _fill_metas(t.body, binding, depth + 1), t.name)
    if isinstance(t, _DPi):
        return _DPi(_fill_metas(t.ty, binding, depth), _fill_metas(t.body, binding, depth + 1), t.name)
    return t


def _unwind(t: _Db) -> Tuple[_Db, List[_Db]]:
    args: List[_Db] = []
    while isinstance(t, _DApp):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


def _rewind(head: _Db, args: Sequence[_Db]) -> _Db:
    for arg in args:
        head = _DApp(head, arg)
    return head


@dataclass
class _CompiledRule:
    head: str
    patterns: List[_Db]
    rhs: _Db


Context = List[Tuple[str, _Db]]


class LpChecker:
    """Type checker bound to one signature; ``budget`` caps reduction steps per check."""

    def __init__(self, sig: LpSignature, budget: Optional[int] = None):
        self.logger = logging.getLogger(__name__)
        self.sig = sig
        self.budget = budget if budget is not None else Config.STEP_BUDGET
        self.steps = 0
        self._declarations: Dict[str, _Db] = {}
        self._definitions: Dict[str, _Db] = {}
        self._rules: Dict[str, List[_CompiledRule]] = {}
        self._rule_count = -1
        # types of the pattern variables of the rule being checked
        self._meta_types: Dict[str, _Db] = {}

    # ------------------------------------------------------------------
    # Signature access

    def _declaration(self, name: str) -> _Db:
        ty = self._declarations.get(name)
        if ty is None:
            ty = self._declarations[name] = _to_db(self.sig.type_of(name), [])
        return ty

    def _definition(self, name: str) -> Optional[_Db]:
        if name in self._definitions:
            return self._definitions[name]
        value = self.sig.definition(name)
        if value is None:
            return None
        compiled = self._definitions[name] = _to_db(value, [])
        return compiled

    def _rules_for(self, name: str) -> List[_CompiledRule]:
        if self._rule_count != len(self.sig.rewrites):
            self._rules = {}
            for rule in self.sig.rewrites:
                compiled = _compile_rule(rule)
                self._rules.setdefault(compiled.head, []).append(compiled)
            self._rule_count = len(self.sig.rewrites)
        return self._rules.get(name, [])

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.budget:
            raise BudgetExceeded(f"reduction exceeded the budget of {self.budget} steps")

    # ------------------------------------------------------------------
    # Reduction and conversion

    def whnf(self, t: _Db) -> _Db:
        while True:
            head, args = _unwind(t)
            if isinstance(head, _DLam) and args:
                self._tick()
                t = _rewind(_subst(head.body, 0, args[0]), args[1:])
                continue
            if isinstance(head, _DConst):
                value = self._definition(head.name)
                if value is not None:
                    self._tick()
                    t = _rewind(value, args)
                    continue
                reduct = self._rewrite(head.name, args)
                if reduct is not None:
                    self._tick()
                    t = reduct
                    continue
            return t

    def _rewrite(self, name: str, args: List[_Db]) -> Optional[_Db]:
        for rule in self._rules_for(name):
            arity = len(rule.patterns)
            if len(args) < arity:
                continue
            binding: Dict[str, _Db] = {}
            if all(self._match(p, a, binding) for p, a in zip(rule.patterns, args)):
                return _rewind(_fill_metas(rule.rhs, binding), args[arity:])
        return None

    def _match(self, pattern: _Db, t: _Db, binding: Dict[str, _Db]) -> bool:
        if isinstance(pattern, _DMeta):
            if pattern.name in binding:
                return self.conv(binding[pattern.name], t)
            binding[pattern.name] = t
            return True
        t = self.whnf(t)
        if isinstance(pattern, (_DConst, _DSort)):
            return pattern == t
        if isinstance(pattern, _DApp):
            p_head, p_args = _unwind(pattern)
            t_head, t_args = _unwind(t)
            return (len(p_args) == len(t_args) and self._match(p_head, t_head, binding)
                    and all(self._match(p, a, binding) for p, a in zip(p_args, t_args)))
        return False

    def conv(self, a: _Db, b: _Db) -> bool:
        if a == b:
            return True
        a = self.whnf(a)
        b = self.whnf(b)
        if a == b:
            return True
        if isinstance(a, _DLam) and isinstance(b, _DLam) or isinstance(a, _DPi) and isinstance(b, _DPi):
            return self.conv(a.ty, b.ty) and self.conv(a.body, b.body)
        if isinstance(a, _DLam):
            return self.conv(a.body, _DApp(_shift(b, 1), _DVar(0)))
        if isinstance(b, _DLam):
            return self.conv(_DApp(_shift(a, 1), _DVar(0)), b.body)
        if isinstance(a, _DApp) and isinstance(b, _DApp):
            a_head, a_args = _unwind(a)
            b_head, b_args = _unwind(b)
            return (len(a_args) == len(b_args) and a_head == b_head
                    and all(self.conv(x, y) for x, y in zip(a_args, b_args)))
        return False

    # ------------------------------------------------------------------
    # Typing

    def _show(self, ctx: Context, t: _Db) -> str:
        text = format_lp(_from_db(t, [name for name, _ in ctx]))
        return text if len(text) <= 240 else text[:237] + "..."

    def _check_domain(self, ctx: Context, ty: _Db, path: str) -> None:
        sort = self.whnf(self.infer(ctx, ty, path))
        if sort != _TYPE:
            raise LpTypeError(path, TYPE, self._show(ctx, sort))

    def infer(self, ctx: Context, t: _Db, path: str) -> _Db:
        if isinstance(t, _DSort):
            if t.name == TYPE:
                return _KIND
            raise LpTypeError(path, "a typable term", KIND)
        if isinstance(t, _DConst):
            return self._declaration(t.name)
        if isinstance(t, _DVar):
            if t.index >= len(ctx):
                raise UnboundName(f"at {path or '<root>'}: variable #{t.index} is out of scope")
            return _shift(ctx[len(ctx) - 1 - t.index][1], t.index + 1)
        if isinstance(t, _DMeta):
            if t.name in self._meta_types:
                return self._meta_types[t.name]
            raise LpError(f"at {path or '<root>'}: pattern variable {t.name} outside a rewrite rule")
        if isinstance(t, _DApp):
            head, args = _unwind(t)
            ty = self.infer(ctx, head, path)
            for position, arg in enumerate(args, start=1):
                ty = self.whnf(ty)
                if not isinstance(ty, _DPi):
                    raise LpTypeError(f"{path}.{position}", "a product type", self._show(ctx, ty))
                self.check(ctx, arg, ty.ty, f"{path}.{position}")
                ty = _subst(ty.body, 0, arg)
            return ty
        self._check_domain(ctx, t.ty, f"{path}/{t.name}")
        ctx.append((t.name, t.ty))
        try:
            body_ty = self.infer(ctx, t.body, f"{path}/{t.name}")
        finally:
            ctx.pop()
        if isinstance(t, _DLam):
            return _DPi(t.ty, body_ty, t.name)
        sort = self.whnf(body_ty)
        if not isinstance(sort, _DSort):
            raise LpTypeError(f"{path}/{t.name}", "a sort", self._show(ctx, sort))
        return sort

    def check(self, ctx: Context, t: _Db, expected: _Db, path: str) -> None:
        if isinstance(t, _DLam):
            target = self.whnf(expected)
            if isinstance(target, _DPi):
                self._check_domain(ctx, t.ty, f"{path}/{t.name}")
                if not self.conv(t.ty, target.ty):
                    raise LpTypeError(f"{path}/{t.name}", self._show(ctx, target.ty), self._show(ctx, t.ty))
                ctx.append((t.name, t.ty))
                try:
                    self.check(ctx, t.body, target.body, f"{path}/{t.name}")
                finally:
                    ctx.pop()
                return
        found = self.infer(ctx, t, path)
        if not self.conv(found, expected):
            raise LpTypeError(path, self._show(ctx, expected), self._show(ctx, found))

    # ------------------------------------------------------------------
    # Rewrite rules: pattern variables take their types from their positions

    def _check_pattern(self, t: _Db, expected: _Db, path: str) -> None:
        if isinstance(t, _DMeta):
            known = self._meta_types.get(t.name)
            if known is None:
                self._meta_types[t.name] = expected
            elif not self.conv(known, expected):
                raise LpTypeError(path, self._show([], expected), self._show([], known))
            return
        found = self._infer_pattern(t, path)
        if not self.conv(found, expected):
            raise LpTypeError(path, self._show([], expected), self._show([], found))

    def _infer_pattern(self, t: _Db, path: str) -> _Db:
        head, args = _unwind(t)
        if not isinstance(head, _DConst):
            raise LpError(f"at {path}: patterns are applications of constants to patterns")
        ty = self._declaration(head.name)
        for position, arg in enumerate(args, start=1):
            ty = self.whnf(ty)
            if not isinstance(ty, _DPi):
                raise LpTypeError(f"{path}.{position}", "a product type", self._show([], ty))
            self._check_pattern(arg, ty.ty, f"{path}.{position}")
            ty = _subst(ty.body, 0, arg)
        return ty

    def check_rule(self, entry: Rewrite) -> None:
        """Both sides of ``entry`` must have the same type."""
        rule = _compile_rule(RewriteRule(entry.variables, entry.lhs, entry.rhs))
        self.sig.check_open(rule.head)
        path = f"rule for {rule.head}"
        self._meta_types = {}
        try:
            lhs_ty = self._infer_pattern(_to_db(entry.lhs, [], entry.variables), path)
            for name in entry.variables:
                if name not in self._meta_types:
                    raise LpError(f"{path}: pattern variable {name} does not occur on the left-hand side")
            self.check([], rule.rhs, lhs_ty, path)
        finally:
            self._meta_types = {}

    # ------------------------------------------------------------------
    # Public entry points over named terms

    def check_type(self, ty: LpTerm, path: str = "") -> _Db:
        compiled = _to_db(ty, [])
        sort = self.whnf(self.infer([], compiled, path))
        if not isinstance(sort, _DSort):
            raise LpTypeError(path, "a sort", self._show([], sort))
        return compiled

    def check_typed(self, term: LpTerm, ty: LpTerm, path: str = "") -> None:
        expected = self.check_type(ty, path)
        self.check([], _to_db(term, []), expected, path)

    def check_entry(self, entry: LpEntry) -> None:
        self.steps = 0
        if isinstance(entry, Comment):
            return
        if isinstance(entry, Rewrite):
            self.check_rule(entry)
        elif entry.name in self.sig:
            raise LpError(f"{entry.name} is already declared")
        elif isinstance(entry, Decl):
            self.check_type(entry.ty, entry.name)
        else:
            self.check_typed(entry.value, entry.ty, entry.name)
        self.sig.add_entry(entry)
        self.logger.debug(f"Checked {type(entry).__name__.lower()} {getattr(entry, 'name', '')} "
                          f"in {self.steps} steps")


def _compile_rule(rule: RewriteRule) -> _CompiledRule:
    lhs = _to_db(rule.lhs, [], rule.variables)
    head, patterns = _unwind(lhs)
    if not isinstance(head, _DConst):
        raise LpError("rewrite rule left-hand side must start with a constant")
    return _CompiledRule(head.name, patterns, _to_db(rule.rhs, [], rule.variables))


def whnf(sig: LpSignature, t: LpTerm, budget: Optional[int] = None) -> LpTerm:
    """Weak-head normal form of a closed term."""
    checker = LpChecker(sig, budget)
    return _from_db(checker.whnf(_to_db(t, [])), [])


def convertible(sig: LpSignature, a: LpTerm, b: LpTerm, budget: Optional[int] = None) -> bool:
    return LpChecker(sig, budget).conv(_to_db(a, []), _to_db(b, []))


def lp_check(sig: LpSignature, term: LpTerm, ty: LpTerm, budget: Optional[int] = None,
             path: str = "") -> None:
    """Raise unless ``term`` has a type convertible to ``ty`` under ``sig``."""
    LpChecker(sig, budget).check_typed(term, ty, path)


def check_entries(entries: Sequence[LpEntry], sig: Optional[LpSignature] = None,
                  budget: Optional[int] = None) -> LpSignature:
    """Check entries in order, extending ``sig`` (a fresh one by default)."""
    checker = LpChecker(sig if sig is not None else LpSignature(), budget)
    for entry in entries:
        checker.check_entry(entry)
    return checker.sig


def check_file(lp_file: LpFile, budget: Optional[int] = None) -> LpSignature:
    sig = check_entries(lp_file.entries, budget=budget)
    theorems = sum(1 for e in lp_file.entries if isinstance(e, Thm))
    logger.info(f"Checked {len(lp_file.entries)} entries ({theorems} theorems)")
    return sig
