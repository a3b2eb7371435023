"""Translation of kernel theorems and their traces into λΠ-modulo proof terms.

HOL types become LP terms of type ``type``, HOL terms of type A become LP
terms of type ``term |A|`` and a theorem ``h1, ..., hn |- c`` becomes a
closed proof of::

    Π type variables. Π free variables. proof |h1| -> ... -> proof |hn| -> proof |c|

Every name bound anywhere in one translation is distinct, so no binder can
capture another.
"""

from __future__ import annotations

import logging
import re
from contextlib import contextmanager
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Set, Tuple, Union

from src.errors import LpError, UnknownTypeOp, UnregisteredConstant, UnsupportedTraceNode
from src.hol.terms import (Abs, App, Const, TermExpr, Var, alpha_equal, dest_binary, free_vars,
                           free_vars_of, subst_term, subst_type, term_type_vars, type_of)
from src.hol.types import TypeExpr, TypeVar, dest_fun_type, type_key, type_match, type_subst, type_vars
from src.kernel import trace as rules
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem
from src.kernel.trace import StepTrace
from src.lp.lpfile import Decl, LpEntry, LpFile, Rewrite, Thm
from src.lp.signature import HOL_BUILTINS, base_entries, reserved_names
from src.lp.terms import (ANON, KEYWORDS, ConstRef, Lam, LpApp, LpTerm, VarRef, app, lams,
                          pis)

logger = logging.getLogger(__name__)

_TYPE = ConstRef("type")
_TERM = ConstRef("term")
_PROOF = ConstRef("proof")

_INVALID_CHARS = re.compile(r"[^A-Za-z0-9_']")

Binder = Tuple[str, LpTerm]


def _var_key(v: Var) -> tuple:
    return (v.name, type_key(v.ty))


def _sanitize(name: str) -> str:
    name = _INVALID_CHARS.sub("_", name)
    if not name or not (name[0].isalpha() or name[0] == "_"):
        name = "v" + name
    if name in KEYWORDS or name == ANON:
        name += "_"
    return name


class _Scope:
    """LP names of the HOL variables in scope, plus the hypotheses with their proof variables.

    The name map is shared with child scopes and only changed through
    ``bound``; the set of used names is shared by the whole translation.
    """

    def __init__(self, used: Set[str], reserved: Set[str],
                 names: Optional[Dict[Union[Var, TypeVar], str]] = None,
                 hyps: Tuple[Tuple[TermExpr, str], ...] = ()):
        self.used = used
        self.reserved = reserved
        self.names = names if names is not None else {}
        self.hyps = hyps

    def fresh(self, base: str) -> str:
        base = _sanitize(base)
        name, suffix = base, 0
        while name in self.used or name in self.reserved or name.startswith("axiom_"):
            suffix += 1
            name = f"{base}_{suffix}"
        self.used.add(name)
        return name

    @contextmanager
    def bound(self, names: Mapping[Union[Var, TypeVar], str]) -> Iterator[None]:
        saved = {key: self.names.get(key) for key in names}
        self.names.update(names)
        try:
            yield
        finally:
            for key, previous in saved.items():
                if previous is None:
                    del self.names[key]
                else:
                    self.names[key] = previous

    def with_hyps(self, hyps: Sequence[Tuple[TermExpr, str]], replace: bool = False) -> "_Scope":
        base = () if replace else self.hyps
        return _Scope(self.used, self.reserved, self.names, base + tuple(hyps))

    def name_of(self, key: Union[Var, TypeVar]) -> str:
        try:
            return self.names[key]
        except KeyError:
            raise LpError(f"{type(key).__name__} {key.name} is not in scope") from None

    def hyp_name(self, h: TermExpr) -> str:
        for term, name in reversed(self.hyps):
            if alpha_equal(term, h):
                return name
        raise LpError(f"hypothesis {h} is not in scope")


class LpTranslator:
    """Translator for the signature of one kernel context.

    Without a context only the logical builtins ``=``, ``==>`` and ``!`` are
    known.
    """

    def __init__(self, ctx: Optional[KernelContext] = None):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.definitions: Dict[str, Const] = (
            {name: const for name, (const, _) in ctx.definitions.items()} if ctx is not None else {})
        self.builtins = {name: lp for name, lp in HOL_BUILTINS.items() if name not in self.definitions}
        base = set(reserved_names(True))
        self.lp_names = {name: f"hol_{name}" if name in base else name for name in self.definitions}
        self.reserved = base | set(self.lp_names.values())
        self.mentioned: Dict[str, None] = {}
        self.axioms: Dict[int, Tuple[Tuple[TermExpr, ...], TermExpr]] = {}
        self._pv: Dict[int, Set[Var]] = {}
        self._ptv: Dict[int, Set[TypeVar]] = {}

    def new_scope(self) -> _Scope:
        return _Scope(set(), self.reserved)

    def open_scope(self, terms: Sequence[TermExpr] = (), types: Sequence[TypeExpr] = ()) -> _Scope:
        """Scope in which the free variables of ``terms`` and ``types`` keep their own names."""
        scope = self.new_scope()
        tyvars: List[TypeVar] = []
        for t in terms:
            term_type_vars(t, tyvars)
        for ty in types:
            type_vars(ty, tyvars)
        for tv in tyvars:
            scope.names[tv] = scope.fresh(tv.name)
        for v in sorted(free_vars_of(terms), key=_var_key):
            scope.names[v] = scope.fresh(v.name)
        return scope

    # ------------------------------------------------------------------
    # Types and terms

    def type_(self, ty: TypeExpr, scope: _Scope) -> LpTerm:
        if isinstance(ty, TypeVar):
            return VarRef(scope.name_of(ty))
        if ty.op in ("bool", "ind") and not ty.args:
            return ConstRef(ty.op)
        if ty.op == "->":
            return app(ConstRef("arr"), self.type_(ty.args[0], scope), self.type_(ty.args[1], scope))
        raise UnknownTypeOp(f"type operator {ty.op} has no LP counterpart")

    def term_type(self, ty: TypeExpr, scope: _Scope) -> LpTerm:
        return LpApp(_TERM, self.type_(ty, scope))

    def proof_type(self, p: TermExpr, scope: _Scope) -> LpTerm:
        return LpApp(_PROOF, self.term(p, scope))

    def const(self, c: Const, scope: _Scope) -> LpTerm:
        if c.name in self.builtins:
            if c.name == "==>":
                return ConstRef("imp")
            dom = dest_fun_type(c.ty)[0]
            if c.name == "!":
                dom = dest_fun_type(dom)[0]
            return LpApp(ConstRef(self.builtins[c.name]), self.type_(dom, scope))
        generic = self.definitions.get(c.name)
        if generic is None:
            raise UnregisteredConstant(f"constant {c.name} has no LP definition")
        theta = type_match(generic.ty, c.ty) or {}
        self.mentioned.setdefault(c.name, None)
        args = [self.type_(type_subst(theta, tv), scope) for tv in type_vars(generic.ty)]
        return app(ConstRef(self.lp_names[c.name]), *args)

    def term(self, t: TermExpr, scope: _Scope) -> LpTerm:
        if isinstance(t, Var):
            return VarRef(scope.name_of(t))
        if isinstance(t, Const):
            return self.const(t, scope)
        if isinstance(t, App):
            return LpApp(self.term(t.fun, scope), self.term(t.arg, scope))
        name = scope.fresh(t.bound.name)
        annot = self.term_type(t.bound.ty, scope)
        with scope.bound({t.bound: name}):
            return Lam(name, annot, self.term(t.body, scope))

    # ------------------------------------------------------------------
    # Variables a proof refers to

    def _collect(self, root: StepTrace) -> None:
        for node in root.walk():
            if id(node) in self._pv:
                continue
            own = node.hyps + (node.concl,)
            payload = _payload_terms(node)
            pv: Set[Var] = set(free_vars_of(own + payload))
            ptv: Set[TypeVar] = set()
            for t in own + payload:
                ptv.update(term_type_vars(t))
            for premise in node.premises:
                prem_pv, prem_ptv = self._pv[id(premise)], self._ptv[id(premise)]
                if node.rule == rules.INST:
                    sigma = dict(node.payload[0])
                    for v in prem_pv:
                        if v in sigma:
                            pv |= free_vars(sigma[v])
                        else:
                            pv.add(v)
                    ptv |= prem_ptv
                elif node.rule == rules.INST_TYPE:
                    theta = dict(node.payload[0])
                    pv |= {Var(v.name, type_subst(theta, v.ty)) for v in prem_pv}
                    for tv in prem_ptv:
                        ptv.update(type_vars(theta.get(tv, tv)))
                elif node.rule in (rules.ABS, rules.GEN):
                    pv |= prem_pv - {node.payload[0]}
                    ptv |= prem_ptv
                else:
                    pv |= prem_pv
                    ptv |= prem_ptv
            self._pv[id(node)] = pv
            self._ptv[id(node)] = ptv

    def _hyp_binders(self, hyps: Sequence[TermExpr], scope: _Scope,
                     replace: bool = False) -> Tuple[List[Binder], _Scope]:
        binders: List[Binder] = []
        named: List[Tuple[TermExpr, str]] = []
        for h in hyps:
            name = scope.fresh("h")
            binders.append((name, self.proof_type(h, scope)))
            named.append((h, name))
        return binders, scope.with_hyps(named, replace)

    # ------------------------------------------------------------------
    # Proofs

    def proof(self, node: StepTrace, scope: _Scope) -> LpTerm:
        handler = self._get_handler_function(node.rule)
        return handler(node, scope)

    def _get_handler_function(self, rule: str):
        handlers = {
            rules.REFL: self._refl,
            rules.TRANS: self._trans,
            rules.MK_COMB: self._mk_comb,
            rules.ABS: self._abs,
            rules.BETA: self._beta,
            rules.ASSUME: self._assume,
            rules.EQ_MP: self._eq_mp,
            rules.DEDUCT_ANTISYM: self._deduct_antisym,
            rules.INST: self._inst,
            rules.INST_TYPE: self._inst_type,
            rules.MP: self._mp,
            rules.DISCH: self._disch,
            rules.GEN: self._gen,
            rules.SPEC: self._spec,
            rules.DEFINE_CONST: self._define_const,
            rules.AXIOM: self._axiom,
        }
        handler = handlers.get(rule)
        if handler is None:
            raise UnsupportedTraceNode(f"{rule} steps cannot be translated")
        return handler

    def _refl(self, node: StepTrace, scope: _Scope) -> LpTerm:
        t = node.payload[0]
        return app(ConstRef("REFL"), self.type_(type_of(t), scope), self.term(t, scope))

    def _trans(self, node: StepTrace, scope: _Scope) -> LpTerm:
        ab, bc = node.premises
        s, t = dest_binary("=", ab.concl)
        _, u = dest_binary("=", bc.concl)
        return app(ConstRef("TRANS"), self.type_(type_of(s), scope),
                   self.term(s, scope), self.term(t, scope), self.term(u, scope),
                   self.proof(ab, scope), self.proof(bc, scope))

    def _mk_comb(self, node: StepTrace, scope: _Scope) -> LpTerm:
        fg, xy = node.premises
        f, g = dest_binary("=", fg.concl)
        x, y = dest_binary("=", xy.concl)
        dom, cod = dest_fun_type(type_of(f))
        return app(ConstRef("MK_COMB"), self.type_(dom, scope), self.type_(cod, scope),
                   self.term(f, scope), self.term(g, scope), self.term(x, scope), self.term(y, scope),
                   self.proof(fg, scope), self.proof(xy, scope))

    def _abs(self, node: StepTrace, scope: _Scope) -> LpTerm:
        x = node.payload[0]
        premise = node.premises[0]
        s, t = dest_binary("=", premise.concl)
        name = scope.fresh(x.name)
        annot = self.term_type(x.ty, scope)
        with scope.bound({x: name}):
            body = self.proof(premise, scope)
        return app(ConstRef("ABS"), self.type_(x.ty, scope), self.type_(type_of(s), scope),
                   self.term(Abs(x, s), scope), self.term(Abs(x, t), scope), Lam(name, annot, body))

    def _beta(self, node: StepTrace, scope: _Scope) -> LpTerm:
        _, contracted = dest_binary("=", node.concl)
        return app(ConstRef("REFL"), self.type_(type_of(contracted), scope), self.term(contracted, scope))

    def _assume(self, node: StepTrace, scope: _Scope) -> LpTerm:
        return VarRef(scope.hyp_name(node.payload[0]))

    def _eq_mp(self, node: StepTrace, scope: _Scope) -> LpTerm:
        pq, p = node.premises
        left, right = dest_binary("=", pq.concl)
        return app(ConstRef("EQ_MP"), self.term(left, scope), self.term(right, scope),
                   self.proof(pq, scope), self.proof(p, scope))

    def _deduct_antisym(self, node: StepTrace, scope: _Scope) -> LpTerm:
        a, b = node.premises
        p, q = a.concl, b.concl
        binders_q, with_q = self._hyp_binders([q], scope)
        binders_p, with_p = self._hyp_binders([p], scope)
        return app(ConstRef("DEDUCT_ANTISYM"), self.term(p, scope), self.term(q, scope),
                   lams(binders_q, self.proof(a, with_q)), lams(binders_p, self.proof(b, with_p)))

    def _inst(self, node: StepTrace, scope: _Scope) -> LpTerm:
        premise = node.premises[0]
        sigma = dict(node.payload[0])
        replaced = sorted((v for v in self._pv[id(premise)] if v in sigma), key=_var_key)
        names = {v: scope.fresh(v.name) for v in replaced}
        binders = [(names[v], self.term_type(v.ty, scope)) for v in replaced]
        with scope.bound(names):
            hyp_binders, inner = self._hyp_binders(premise.hyps, scope, replace=True)
            body = self.proof(premise, inner)
        args = [self.term(sigma[v], scope) for v in replaced]
        args += [VarRef(scope.hyp_name(subst_term(sigma, h))) for h in premise.hyps]
        return app(lams(binders + hyp_binders, body), *args)

    def _inst_type(self, node: StepTrace, scope: _Scope) -> LpTerm:
        premise = node.premises[0]
        theta = dict(node.payload[0])
        tyvars = sorted((tv for tv in self._ptv[id(premise)] if tv in theta), key=lambda tv: tv.name)
        retyped = sorted((v for v in self._pv[id(premise)] if any(tv in theta for tv in type_vars(v.ty))),
                         key=_var_key)
        tv_names = {tv: scope.fresh(tv.name) for tv in tyvars}
        binders: List[Binder] = [(tv_names[tv], _TYPE) for tv in tyvars]
        with scope.bound(tv_names):
            var_names = {v: scope.fresh(v.name) for v in retyped}
            binders += [(var_names[v], self.term_type(v.ty, scope)) for v in retyped]
            with scope.bound(var_names):
                hyp_binders, inner = self._hyp_binders(premise.hyps, scope, replace=True)
                body = self.proof(premise, inner)
        args = [self.type_(theta[tv], scope) for tv in tyvars]
        args += [self.term(Var(v.name, type_subst(theta, v.ty)), scope) for v in retyped]
        args += [VarRef(scope.hyp_name(subst_type(theta, h))) for h in premise.hyps]
        return app(lams(binders + hyp_binders, body), *args)

    def _mp(self, node: StepTrace, scope: _Scope) -> LpTerm:
        ipq, ip = node.premises
        p, q = dest_binary("==>", ipq.concl)
        return app(ConstRef("MP"), self.term(p, scope), self.term(q, scope),
                   self.proof(ipq, scope), self.proof(ip, scope))

    def _disch(self, node: StepTrace, scope: _Scope) -> LpTerm:
        p = node.payload[0]
        premise = node.premises[0]
        binders, inner = self._hyp_binders([p], scope)
        return app(ConstRef("DISCH"), self.term(p, scope), self.term(premise.concl, scope),
                   lams(binders, self.proof(premise, inner)))

    def _gen(self, node: StepTrace, scope: _Scope) -> LpTerm:
        x = node.payload[0]
        premise = node.premises[0]
        predicate = self.term(Abs(x, premise.concl), scope)
        name = scope.fresh(x.name)
        annot = self.term_type(x.ty, scope)
        with scope.bound({x: name}):
            body = self.proof(premise, scope)
        return app(ConstRef("GEN"), self.type_(x.ty, scope), predicate, Lam(name, annot, body))

    def _spec(self, node: StepTrace, scope: _Scope) -> LpTerm:
        u = node.payload[0]
        premise = node.premises[0]
        return app(ConstRef("SPEC"), self.type_(type_of(u), scope), self.term(premise.concl.arg, scope),
                   self.term(u, scope), self.proof(premise, scope))

    def _define_const(self, node: StepTrace, scope: _Scope) -> LpTerm:
        const, _ = node.payload
        return app(ConstRef("REFL"), self.type_(const.ty, scope), self.term(const, scope))

    def _axiom(self, node: StepTrace, scope: _Scope) -> LpTerm:
        p, index = node.payload
        self.axioms.setdefault(index, (node.hyps, p))
        tyvars, variables = _axiom_parameters(node.hyps, p)
        args = [VarRef(scope.name_of(tv)) for tv in tyvars]
        args += [VarRef(scope.name_of(v)) for v in variables]
        args += [VarRef(scope.hyp_name(h)) for h in node.hyps]
        return app(ConstRef(f"axiom_{index}"), *args)

    # ------------------------------------------------------------------
    # Top level

    def theorem(self, th: Theorem) -> Tuple[LpTerm, LpTerm]:
        """``(proof term, expected type)`` of a closed proof of ``th``."""
        root = th.trace
        self._collect(root)
        scope = self.new_scope()
        tyvars = sorted(self._ptv[id(root)], key=lambda tv: tv.name)
        binders: List[Binder] = []
        for tv in tyvars:
            scope.names[tv] = scope.fresh(tv.name)
            binders.append((scope.names[tv], _TYPE))
        for v in sorted(self._pv[id(root)], key=_var_key):
            scope.names[v] = scope.fresh(v.name)
            binders.append((scope.names[v], self.term_type(v.ty, scope)))
        hyp_binders, inner = self._hyp_binders(th.hyps, scope)
        expected = pis(binders + [(ANON, ty) for _, ty in hyp_binders], self.proof_type(th.concl, scope))
        proof = lams(binders + hyp_binders, self.proof(root, inner))
        return proof, expected

    def definition(self, const: Const, rhs: TermExpr) -> List[LpEntry]:
        """``c : Π tvs. term |A|`` and the rewrite ``c tvs --> |t|``."""
        scope = self.new_scope()
        tyvars = type_vars(const.ty)
        names = [scope.fresh(tv.name) for tv in tyvars]
        scope.names.update(zip(tyvars, names))
        name = self.lp_names.get(const.name, const.name)
        ty = pis([(n, _TYPE) for n in names], self.term_type(const.ty, scope))
        lhs = app(ConstRef(name), *[VarRef(n) for n in names])
        return [Decl(name, ty), Rewrite(tuple(names), lhs, self.term(rhs, scope))]

    def axiom_declaration(self, index: int) -> Decl:
        hyps, p = self.axioms[index]
        tyvars, variables = _axiom_parameters(hyps, p)
        scope = self.new_scope()
        binders: List[Binder] = []
        for tv in tyvars:
            scope.names[tv] = scope.fresh(tv.name)
            binders.append((scope.names[tv], _TYPE))
        for v in variables:
            scope.names[v] = scope.fresh(v.name)
            binders.append((scope.names[v], self.term_type(v.ty, scope)))
        binders += [(ANON, self.proof_type(h, scope)) for h in hyps]
        return Decl(f"axiom_{index}", pis(binders, self.proof_type(p, scope)))

    def theorem_file(self, th: Theorem, name: str) -> LpFile:
        """A self-contained file: base signature, definitions, axioms, then the theorem."""
        mode = self.ctx.mode.value if self.ctx is not None else "unknown"
        return self.theorems_file([(name, th)], f"holkit proof of {name} ({mode} kernel)")

    def theorems_file(self, named: Sequence[Tuple[str, Theorem]], header: str) -> LpFile:
        if self.ctx is None:
            raise LpError("a kernel context is needed to emit a theorem file")
        theorems: List[LpEntry] = []
        taken: Set[str] = set()
        for name, th in named:
            proof, expected = self.theorem(th)
            thm_name = _sanitize(name)
            if thm_name in self.reserved or thm_name.startswith("axiom_"):
                thm_name = f"thm_{thm_name}"
            base, suffix = thm_name, 0
            while thm_name in taken:
                suffix += 1
                thm_name = f"{base}_{suffix}"
            taken.add(thm_name)
            theorems.append(Thm(thm_name, expected, proof))
        emitted: Dict[str, List[LpEntry]] = {}
        pending = list(self.mentioned)
        while pending:
            for const_name in pending:
                const, defthm = self.ctx.definitions[const_name]
                emitted[const_name] = self.definition(const, defthm.concl.arg)
            pending = [n for n in self.mentioned if n not in emitted]
        entries: List[LpEntry] = base_entries(self.ctx.extended)
        for const_name in self.definitions:
            entries += emitted.get(const_name, [])
        entries += [self.axiom_declaration(k) for k in sorted(self.axioms)]
        entries += theorems
        self.logger.debug(f"Translated {len(theorems)} theorem(s) with {len(emitted)} definitions "
                          f"and {len(self.axioms)} axioms")
        return LpFile(header, entries)


def _payload_terms(node: StepTrace) -> Tuple[TermExpr, ...]:
    if node.rule in (rules.REFL, rules.BETA, rules.ASSUME, rules.DISCH, rules.SPEC, rules.AXIOM):
        return (node.payload[0],)
    if node.rule == rules.INST:
        return tuple(t for _, t in node.payload[0])
    if node.rule == rules.DEFINE_CONST:
        return (node.payload[0],)
    return ()


def _axiom_parameters(hyps: Sequence[TermExpr], p: TermExpr) -> Tuple[List[TypeVar], List[Var]]:
    terms = (*hyps, p)
    tyvars: List[TypeVar] = []
    for t in terms:
        term_type_vars(t, tyvars)
    return (sorted(set(tyvars), key=lambda tv: tv.name),
            sorted(free_vars_of(terms), key=_var_key))


def translate_type(ty: TypeExpr, ctx: Optional[KernelContext] = None) -> LpTerm:
    translator = LpTranslator(ctx)
    return translator.type_(ty, translator.open_scope(types=[ty]))


def translate_term(t: TermExpr, ctx: Optional[KernelContext] = None) -> LpTerm:
    translator = LpTranslator(ctx)
    return translator.term(t, translator.open_scope([t]))


def translate_theorem(th: Theorem, ctx: Optional[KernelContext] = None) -> Tuple[LpTerm, LpTerm]:
    return LpTranslator(ctx).theorem(th)


def translate_definition(const: Const, defthm: Theorem, ctx: Optional[KernelContext] = None) -> List[LpEntry]:
    return LpTranslator(ctx).definition(const, defthm.concl.arg)


def theorem_file(th: Theorem, name: str, ctx: KernelContext) -> LpFile:
    return LpTranslator(ctx).theorem_file(th, name)


def theorems_file(named: Sequence[Tuple[str, Theorem]], ctx: KernelContext, header: str = "") -> LpFile:
    return LpTranslator(ctx).theorems_file(named, header or f"holkit proofs ({ctx.mode.value} kernel)")
