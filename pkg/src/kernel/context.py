"""The trusted kernel: signature, primitive rules and definitional extension."""

from __future__ import annotations

import logging
import weakref
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple, Union

from src.errors import (AntecedentMismatch, ArityMismatch, KernelError, MidpointMismatch,
                        NameClash, NonEmptyHyps, NotAForall, NotAnEquation, NotAnImplication,
                        NotBoolean, NotClosed, TypeMismatch, TypeVarEscape, UnknownConstant,
                        UnknownTypeOp, VarFreeInHyps, WrongMode)
from src.hol.terms import (Abs, App, Const, TermExpr, Var, alpha_equal, as_term_map,
                           beta_contract, dest_binary, dest_forall, free_vars, is_eq, is_forall,
                           is_imp, mk_eq, mk_forall, mk_imp, subst_term, subst_type,
                           term_remove, term_type_vars, term_union, type_of)
from src.hol.types import (ALPHA, BOOL, TypeApp, TypeExpr, TypeVar, as_type_map,
                           mk_fun_type, type_match, type_vars)
from src.kernel import trace as rules
from src.kernel.theorem import Theorem, make_theorem


class KernelMode(str, Enum):
    MINIMAL = "minimal"
    EXTENDED = "extended"

    @classmethod
    def parse(cls, value: Union[str, "KernelMode"]) -> "KernelMode":
        try:
            return cls(value)
        except ValueError:
            raise ValueError(f"unknown kernel mode {value!r}; expected 'minimal' or 'extended'") from None


@dataclass(frozen=True)
class TypeDefinition:
    """Record shared by the two theorems of one type definition."""

    name: str
    abs_const: Const
    rep_const: Const
    tyvars: Tuple[TypeVar, ...]
    predicate: TermExpr
    witness: Theorem


_BOOL_BINOP = mk_fun_type(BOOL, mk_fun_type(BOOL, BOOL))


class KernelContext:
    """One proof session: the signature in force plus every rule of the kernel.

    Minimal mode knows a single logical constant, ``=``. Extended mode also
    has ``==>`` and ``!`` as primitives together with MP, DISCH, GEN and SPEC.
    Definitional operations mutate the context; a context has one owner.
    """

    def __init__(self, mode: Union[str, KernelMode] = KernelMode.MINIMAL):
        self.logger = logging.getLogger(__name__)
        self.mode = KernelMode.parse(mode)
        self.type_ops: Dict[str, int] = {"bool": 0, "ind": 0, "->": 2}
        self.constants: Dict[str, TypeExpr] = {
            "=": mk_fun_type(ALPHA, mk_fun_type(ALPHA, BOOL)),
        }
        if self.mode is KernelMode.EXTENDED:
            self.constants["==>"] = _BOOL_BINOP
            self.constants["!"] = mk_fun_type(mk_fun_type(ALPHA, BOOL), BOOL)
        self.axioms: List[Theorem] = []
        self.definitions: Dict[str, Tuple[Const, Theorem]] = {}
        self.type_definitions: Dict[str, TypeDefinition] = {}
        # terms already validated, by identity; entries go with their terms
        self._checked: "weakref.WeakValueDictionary[int, TermExpr]" = weakref.WeakValueDictionary()

    @property
    def extended(self) -> bool:
        return self.mode is KernelMode.EXTENDED

    def __repr__(self) -> str:
        return (f"KernelContext(mode={self.mode.value}, constants={len(self.constants)}, "
                f"axioms={len(self.axioms)})")

    # ------------------------------------------------------------------
    # Signature

    def check_type(self, ty: TypeExpr) -> None:
        if isinstance(ty, TypeVar):
            return
        arity = self.type_ops.get(ty.op)
        if arity is None:
            raise UnknownTypeOp(f"unknown type operator {ty.op}")
        if arity != len(ty.args):
            raise ArityMismatch(f"type operator {ty.op} takes {arity} arguments, got {len(ty.args)}")
        for arg in ty.args:
            self.check_type(arg)

    def check_term(self, t: TermExpr) -> TermExpr:
        """Validate ``t`` against the signature and return it."""
        if id(t) in self._checked:
            return t
        type_of(t)
        visited: Dict[int, TermExpr] = {}
        stack = [t]
        while stack:
            node = stack.pop()
            if id(node) in self._checked or id(node) in visited:
                continue
            if isinstance(node, Var):
                self.check_type(node.ty)
            elif isinstance(node, Const):
                generic = self.constants.get(node.name)
                if generic is None:
                    raise UnknownConstant(f"unknown constant {node.name}")
                if type_match(generic, node.ty) is None:
                    raise TypeMismatch(f"{node.name} : {node.ty} is not an instance of {generic}")
                self.check_type(node.ty)
            elif isinstance(node, App):
                stack.append(node.fun)
                stack.append(node.arg)
            else:
                stack.append(node.bound)
                stack.append(node.body)
            visited[id(node)] = node
        self._checked.update(visited)
        return t

    def const(self, name: str, ty: Optional[TypeExpr] = None) -> Const:
        """The constant ``name`` at its generic type, or at the instance ``ty``."""
        generic = self.constants.get(name)
        if generic is None:
            raise UnknownConstant(f"unknown constant {name}")
        if ty is None:
            return Const(name, generic)
        if type_match(generic, ty) is None:
            raise TypeMismatch(f"{name} : {ty} is not an instance of {generic}")
        return Const(name, ty)

    def type_op(self, name: str) -> int:
        arity = self.type_ops.get(name)
        if arity is None:
            raise UnknownTypeOp(f"unknown type operator {name}")
        return arity

    def _require_extended(self, rule: str) -> None:
        if self.mode is not KernelMode.EXTENDED:
            raise WrongMode(f"{rule.upper()} is a primitive rule of the extended kernel only")

    # ------------------------------------------------------------------
    # Primitive rules

    def refl(self, t: TermExpr) -> Theorem:
        self.check_term(t)
        return make_theorem((), mk_eq(t, t), rules.REFL, payload=(t,))

    def trans(self, ab: Theorem, bc: Theorem) -> Theorem:
        s, t1 = _dest_eq(ab, "TRANS")
        t2, u = _dest_eq(bc, "TRANS")
        if not alpha_equal(t1, t2):
            raise MidpointMismatch(f"TRANS: middle terms differ: {t1} vs {t2}")
        concl = App(ab.concl.fun, u)
        return make_theorem(term_union(ab.hyps, bc.hyps), concl, rules.TRANS, (ab, bc))

    def mk_comb(self, fg: Theorem, xy: Theorem) -> Theorem:
        f, g = _dest_eq(fg, "MK_COMB")
        x, y = _dest_eq(xy, "MK_COMB")
        fun_ty = type_of(f)
        if not (isinstance(fun_ty, TypeApp) and fun_ty.op == "->" and fun_ty.args[0] == type_of(x)):
            raise TypeMismatch(f"MK_COMB: cannot apply {f} : {fun_ty} to {x} : {type_of(x)}")
        concl = mk_eq(App(f, x), App(g, y))
        return make_theorem(term_union(fg.hyps, xy.hyps), concl, rules.MK_COMB, (fg, xy))

    def abs(self, x: Var, st: Theorem) -> Theorem:
        if not isinstance(x, Var):
            raise TypeMismatch(f"ABS: expected a variable, got {x}")
        self.check_term(x)
        s, t = _dest_eq(st, "ABS")
        if any(x in free_vars(h) for h in st.hyps):
            raise VarFreeInHyps(f"ABS: {x.name} is free in the hypotheses")
        concl = mk_eq(Abs(x, s), Abs(x, t))
        return make_theorem(st.hyps, concl, rules.ABS, (st,), (x,))

    def beta(self, t: TermExpr) -> Theorem:
        self.check_term(t)
        return make_theorem((), mk_eq(t, beta_contract(t)), rules.BETA, payload=(t,))

    def assume(self, p: TermExpr) -> Theorem:
        self.check_term(p)
        if type_of(p) != BOOL:
            raise NotBoolean(f"ASSUME: {p} has type {type_of(p)}, not bool")
        return make_theorem((p,), p, rules.ASSUME, payload=(p,))

    def eq_mp(self, pq: Theorem, p: Theorem) -> Theorem:
        a, b = _dest_eq(pq, "EQ_MP")
        if type_of(a) != BOOL:
            raise NotAnEquation(f"EQ_MP: {pq.concl} is not an equation between propositions")
        if not alpha_equal(a, p.concl):
            raise AntecedentMismatch(f"EQ_MP: {p.concl} does not match {a}")
        return make_theorem(term_union(pq.hyps, p.hyps), b, rules.EQ_MP, (pq, p))

    def deduct_antisym(self, a: Theorem, b: Theorem) -> Theorem:
        hyps = term_union(term_remove(b.concl, a.hyps), term_remove(a.concl, b.hyps))
        return make_theorem(hyps, mk_eq(a.concl, b.concl), rules.DEDUCT_ANTISYM, (a, b))

    def inst(self, sigma, th: Theorem) -> Theorem:
        theta = as_term_map(sigma)
        for var, replacement in theta.items():
            self.check_term(var)
            self.check_term(replacement)
        pairs = tuple(theta.items())
        hyps = [subst_term(theta, h) for h in th.hyps]
        concl = subst_term(theta, th.concl)
        return make_theorem(hyps, concl, rules.INST, (th,), (pairs,))

    def inst_type(self, theta, th: Theorem) -> Theorem:
        tymap = as_type_map(theta)
        for ty in tymap.values():
            self.check_type(ty)
        pairs = tuple(tymap.items())
        hyps = [subst_type(tymap, h) for h in th.hyps]
        concl = subst_type(tymap, th.concl)
        return make_theorem(hyps, concl, rules.INST_TYPE, (th,), (pairs,))

    # ------------------------------------------------------------------
    # Extended rules

    def mp(self, ipq: Theorem, ip: Theorem) -> Theorem:
        self._require_extended(rules.MP)
        if not is_imp(ipq.concl):
            raise NotAnImplication(f"MP: {ipq.concl} is not an implication")
        p, q = dest_binary("==>", ipq.concl)
        if not alpha_equal(p, ip.concl):
            raise AntecedentMismatch(f"MP: {ip.concl} does not match {p}")
        return make_theorem(term_union(ipq.hyps, ip.hyps), q, rules.MP, (ipq, ip))

    def disch(self, p: TermExpr, th: Theorem) -> Theorem:
        self._require_extended(rules.DISCH)
        self.check_term(p)
        if type_of(p) != BOOL:
            raise NotBoolean(f"DISCH: {p} has type {type_of(p)}, not bool")
        return make_theorem(term_remove(p, th.hyps), mk_imp(p, th.concl), rules.DISCH, (th,), (p,))

    def gen(self, x: Var, th: Theorem) -> Theorem:
        self._require_extended(rules.GEN)
        if not isinstance(x, Var):
            raise TypeMismatch(f"GEN: expected a variable, got {x}")
        self.check_term(x)
        if any(x in free_vars(h) for h in th.hyps):
            raise VarFreeInHyps(f"GEN: {x.name} is free in the hypotheses")
        return make_theorem(th.hyps, mk_forall(x, th.concl), rules.GEN, (th,), (x,))

    def spec(self, u: TermExpr, th: Theorem) -> Theorem:
        self._require_extended(rules.SPEC)
        if not is_forall(th.concl):
            raise NotAForall(f"SPEC: {th.concl} is not universally quantified")
        self.check_term(u)
        x, body = dest_forall(th.concl)
        if type_of(u) != x.ty:
            raise TypeMismatch(f"SPEC: {u} : {type_of(u)} does not fit {x.name} : {x.ty}")
        return make_theorem(th.hyps, subst_term([(x, u)], body), rules.SPEC, (th,), (u,))

    # ------------------------------------------------------------------
    # Definitional extension

    def define_const(self, name: str, t: TermExpr) -> Tuple[Const, Theorem]:
        if name in self.constants:
            raise NameClash(f"constant {name} is already declared")
        self.check_term(t)
        if free_vars(t):
            names = ", ".join(sorted(v.name for v in free_vars(t)))
            raise NotClosed(f"definition of {name} has free variables: {names}")
        ty = type_of(t)
        escaped = [tv for tv in term_type_vars(t) if tv not in type_vars(ty)]
        if escaped:
            raise TypeVarEscape(
                f"definition of {name} mentions type variables absent from its type: "
                f"{', '.join(tv.name for tv in escaped)}")
        self.constants[name] = ty
        const = Const(name, ty)
        th = make_theorem((), mk_eq(const, t), rules.DEFINE_CONST, payload=(const, t))
        self.definitions[name] = (const, th)
        self.logger.debug(f"Defined constant {name} : {ty}")
        return const, th

    def define_type_op(self, name: str, abs_name: str, rep_name: str,
                       tyvars: Sequence[TypeVar], witness: Theorem) -> Tuple[Theorem, Theorem]:
        """Introduce a type in bijection with the subset of a type carved by a predicate.

        Given ``|- P t`` returns ``|- abs (rep a) = a`` and
        ``|- P r = (rep (abs r) = r)``.
        """
        if name in self.type_ops:
            raise NameClash(f"type operator {name} is already declared")
        for const_name in (abs_name, rep_name):
            if const_name in self.constants:
                raise NameClash(f"constant {const_name} is already declared")
        if abs_name == rep_name:
            raise NameClash(f"abstraction and representation share the name {abs_name}")
        if witness.hyps:
            raise NonEmptyHyps(f"type definition of {name} needs a witness without hypotheses")
        if not isinstance(witness.concl, App):
            raise KernelError(f"type definition witness must be P t, got {witness.concl}")
        predicate, wit = witness.concl.fun, witness.concl.arg
        if free_vars(predicate):
            raise NotClosed(f"predicate of type {name} has free variables")
        tyvars = tuple(tyvars)
        if len(set(tyvars)) != len(tyvars):
            raise KernelError(f"type variables of {name} repeated")
        missing = [tv for tv in term_type_vars(predicate) if tv not in tyvars]
        if missing:
            raise TypeVarEscape(
                f"predicate of {name} mentions undeclared type variables: "
                f"{', '.join(tv.name for tv in missing)}")

        rep_ty = type_of(wit)
        new_ty = TypeApp(name, tyvars)
        self.type_ops[name] = len(tyvars)
        self.constants[abs_name] = mk_fun_type(rep_ty, new_ty)
        self.constants[rep_name] = mk_fun_type(new_ty, rep_ty)
        abs_const = Const(abs_name, self.constants[abs_name])
        rep_const = Const(rep_name, self.constants[rep_name])
        record = TypeDefinition(name, abs_const, rep_const, tyvars, predicate, witness)
        self.type_definitions[name] = record

        a = Var("a", new_ty)
        r = Var("r", rep_ty)
        abs_rep = mk_eq(App(abs_const, App(rep_const, a)), a)
        rep_abs = mk_eq(App(predicate, r), mk_eq(App(rep_const, App(abs_const, r)), r))
        th1 = make_theorem((), abs_rep, rules.DEFINE_TYPE_OP, (witness,), (record, "abs_rep"))
        th2 = make_theorem((), rep_abs, rules.DEFINE_TYPE_OP, (witness,), (record, "rep_abs"))
        self.logger.debug(f"Defined type operator {name} with {abs_name}/{rep_name}")
        return th1, th2

    def new_axiom(self, p: TermExpr, hyps: Sequence[TermExpr] = ()) -> Theorem:
        """Trust the sequent ``hyps ⊢ p`` exactly as given."""
        for t in (*hyps, p):
            self.check_term(t)
            if type_of(t) != BOOL:
                raise NotBoolean(f"axiom {t} has type {type_of(t)}, not bool")
        th = make_theorem(hyps, p, rules.AXIOM, payload=(p, len(self.axioms)))
        self.axioms.append(th)
        self.logger.info(f"New axiom #{len(self.axioms) - 1}: {th}")
        return th

    def step_count(self, th: Theorem) -> int:
        return th.trace.step_count


def _dest_eq(th: Theorem, rule: str) -> Tuple[TermExpr, TermExpr]:
    if not is_eq(th.concl):
        raise NotAnEquation(f"{rule}: {th.concl} is not an equation")
    return dest_binary("=", th.concl)
