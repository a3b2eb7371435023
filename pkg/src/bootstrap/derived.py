"""Derived inference rules on top of either kernel.

Scripts follow the shapes of the classic HOL bool library. The four rules
that touch ``==>`` and ``!`` unfold their definitions in minimal mode and
call the primitive rules in extended mode; everything else is shared.
Lemmas (the schematic theorems each rule instantiates) are proved once per
session and cached.
"""

from __future__ import annotations

import logging
from typing import Callable, Dict, Optional

from src.bootstrap.connectives import (AND, EXISTS, FALSE, FORALL, IMP, NOT, OR, TRUE,
                                       ConnectiveTable, mk_conj, mk_disj)
from src.errors import DerivationError
from src.hol.terms import (Abs, App, Const, TermExpr, Var, alpha_equal, dest_binary,
                           dest_binder, free_vars, is_binary, is_binder, is_eq, is_imp,
                           mk_forall, mk_imp, subst_term, type_of)
from src.hol.types import ALPHA, BOOL, dest_fun_type, is_fun_type, mk_fun_type, type_match
from src.kernel import conv
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem
from src.utils.helpers import normalize_rule_name

_p = Var("p", BOOL)
_q = Var("q", BOOL)
_r = Var("r", BOOL)
_t = Var("t", BOOL)
_x_bool = Var("x", BOOL)
_f = Var("f", mk_fun_type(BOOL, mk_fun_type(BOOL, BOOL)))
_P = Var("P", mk_fun_type(ALPHA, BOOL))
_x = Var("x", ALPHA)


def _pred_var(ty) -> Var:
    return Var("P", mk_fun_type(ty, BOOL))


class DerivedRules:
    """The derived-rule family for one (context, connective table) pair."""

    def __init__(self, ctx: KernelContext, table: ConnectiveTable):
        self.logger = logging.getLogger(__name__)
        self.ctx = ctx
        self.table = table
        self._lemmas: Dict[str, Theorem] = {}

    def derive(self, rule: str, *args) -> Theorem:
        """Apply the derived rule named ``rule`` (e.g. ``"CONJ"``) to ``args``."""
        handler = self._get_rule_function(rule)
        if handler is None:
            raise DerivationError(f"unknown derived rule {rule}")
        return handler(*args)

    def _get_rule_function(self, rule: str) -> Optional[Callable[..., Theorem]]:
        rule = normalize_rule_name(rule)

        handlers = {
            "TRUTH": self.truth,
            "EQT_INTRO": self.eqt_intro,
            "EQT_ELIM": self.eqt_elim,
            "CONJ": self.conj,
            "CONJUNCT1": self.conjunct1,
            "CONJUNCT2": self.conjunct2,
            "MP_D": self.mp,
            "DISCH_D": self.disch,
            "GEN_D": self.gen,
            "SPEC_D": self.spec,
            "DISJ1": self.disj1,
            "DISJ2": self.disj2,
            "DISJ_CASES": self.disj_cases,
            "EXISTS_I": self.exists,
            "CHOOSE": self.choose,
            "NOT_INTRO": self.not_intro,
            "NOT_ELIM": self.not_elim,
            "SYM": self.sym,
            "AP_TERM": self.ap_term,
            "AP_THM": self.ap_thm,
            "PROVE_HYP": self.prove_hyp,
            "UNDISCH": self.undisch,
            "CONTR": self.contr,
            "BETA_RULE": self.beta_rule,
        }

        return handlers.get(rule)

    @property
    def rule_names(self):
        return ["TRUTH", "EQT_INTRO", "EQT_ELIM", "CONJ", "CONJUNCT1", "CONJUNCT2", "MP_D",
                "DISCH_D", "GEN_D", "SPEC_D", "DISJ1", "DISJ2", "DISJ_CASES", "EXISTS_I",
                "CHOOSE", "NOT_INTRO", "NOT_ELIM", "SYM", "AP_TERM", "AP_THM", "PROVE_HYP",
                "UNDISCH", "CONTR", "BETA_RULE"]

    # ------------------------------------------------------------------
    # Plumbing

    def _lemma(self, key: str, prove: Callable[[], Theorem]) -> Theorem:
        th = self._lemmas.get(key)
        if th is None:
            th = prove()
            self._lemmas[key] = th
            self.logger.debug(f"Proved lemma {key} in {th.step_count} steps ({self.ctx.mode.value})")
        return th

    def _unfold(self, name: str, *args: TermExpr) -> Theorem:
        """|- c a1 .. an = rhs a1 .. an, beta-reduced, from the definition of ``c``."""
        k = self.ctx
        th = self.table.definition(name)
        const_ty = self.table.const(name).ty
        env: Dict = {}
        for arg in args:
            if not is_fun_type(const_ty):
                raise DerivationError(f"{name} applied to too many arguments")
            dom, const_ty = dest_fun_type(const_ty)
            if type_match(dom, type_of(arg), env) is None:
                raise DerivationError(f"{name} cannot be applied to {arg} : {type_of(arg)}")
        theta = {tv: ty for tv, ty in env.items() if tv != ty}
        if theta:
            th = k.inst_type(theta, th)
        if not args:
            return th
        for arg in args:
            th = conv.ap_thm(k, th, arg)
        return k.trans(th, conv.beta_conv(k, conv.rhs(th)))

    def _at_type(self, lemma: Theorem, ty) -> Theorem:
        return lemma if ty == ALPHA else self.ctx.inst_type({ALPHA: ty}, lemma)

    # ------------------------------------------------------------------
    # Truth and equality with T

    def truth(self) -> Theorem:
        """|- T"""
        return self._lemma("TRUTH", self._prove_truth)

    def _prove_truth(self) -> Theorem:
        k = self.ctx
        t_def = self.table.definition(TRUE)
        if k.extended:
            body = k.gen(_x_bool, k.disch(_x_bool, k.assume(_x_bool)))
        else:
            ident, _ = dest_binary("=", conv.rhs(t_def))
            body = k.refl(ident)
        return k.eq_mp(conv.sym(k, t_def), body)

    def eqt_elim(self, th: Theorem) -> Theorem:
        """A |- p = T  gives  A |- p"""
        if not (is_eq(th.concl) and alpha_equal(th.concl.arg, Const(TRUE, BOOL))):
            raise DerivationError(f"EQT_ELIM: {th.concl} is not of the form p = T")
        return self.ctx.eq_mp(conv.sym(self.ctx, th), self.truth())

    def eqt_intro(self, th: Theorem) -> Theorem:
        """A |- p  gives  A |- p = T"""
        k = self.ctx
        pth = self._lemma("EQT_INTRO", self._prove_eqt_intro)
        return k.eq_mp(k.inst([(_t, th.concl)], pth), th)

    def _prove_eqt_intro(self) -> Theorem:
        k = self.ctx
        th1 = k.deduct_antisym(k.assume(_t), self.truth())
        th2 = self.eqt_elim(k.assume(th1.concl))
        return k.deduct_antisym(th2, th1)

    # ------------------------------------------------------------------
    # Conjunction

    def conj(self, th1: Theorem, th2: Theorem) -> Theorem:
        """A |- p, B |- q  gives  A u B |- p /\\ q"""
        k = self.ctx
        pth = self._lemma("CONJ", self._prove_conj)
        th = k.inst([(_p, th1.concl), (_q, th2.concl)], pth)
        return conv.prove_hyp(k, th2, conv.prove_hyp(k, th1, th))

    def _prove_conj(self) -> Theorem:
        k = self.ctx
        if k.extended:
            chain = mk_imp(_p, mk_imp(_q, _r))
            body = k.mp(k.mp(k.assume(chain), k.assume(_p)), k.assume(_q))
            proof = k.gen(_r, k.disch(chain, body))
        else:
            both = k.mk_comb(conv.ap_term(k, _f, self.eqt_intro(k.assume(_p))),
                             self.eqt_intro(k.assume(_q)))
            proof = k.abs(_f, both)
        return k.eq_mp(conv.sym(k, self._unfold(AND, _p, _q)), proof)

    def _dest_conj(self, rule: str, th: Theorem):
        if not is_binary(AND, th.concl):
            raise DerivationError(f"{rule}: {th.concl} is not a conjunction")
        return dest_binary(AND, th.concl)

    def conjunct1(self, th: Theorem) -> Theorem:
        """A |- p /\\ q  gives  A |- p"""
        left, right = self._dest_conj("CONJUNCT1", th)
        pth = self._lemma("CONJUNCT1", lambda: self._prove_conjunct(first=True))
        return conv.prove_hyp(self.ctx, th, self.ctx.inst([(_p, left), (_q, right)], pth))

    def conjunct2(self, th: Theorem) -> Theorem:
        """A |- p /\\ q  gives  A |- q"""
        left, right = self._dest_conj("CONJUNCT2", th)
        pth = self._lemma("CONJUNCT2", lambda: self._prove_conjunct(first=False))
        return conv.prove_hyp(self.ctx, th, self.ctx.inst([(_p, left), (_q, right)], pth))

    def _prove_conjunct(self, first: bool) -> Theorem:
        k = self.ctx
        unfolded = k.eq_mp(self._unfold(AND, _p, _q), k.assume(mk_conj(_p, _q)))
        wanted = _p if first else _q
        if k.extended:
            instance = k.spec(wanted, unfolded)
            selector = k.disch(_p, k.disch(_q, k.assume(wanted)))
            return k.mp(instance, selector)
        selector = Abs(_p, Abs(_q, wanted))
        return self.eqt_elim(conv.beta_rule(k, conv.ap_thm(k, unfolded, selector)))

    # ------------------------------------------------------------------
    # Implication and universal quantification

    def mp(self, ith: Theorem, th: Theorem) -> Theorem:
        """A |- p ==> q, B |- p  gives  A u B |- q"""
        if not is_imp(ith.concl):
            raise DerivationError(f"MP: {ith.concl} is not an implication")
        ant, con = dest_binary(IMP, ith.concl)
        if not alpha_equal(ant, th.concl):
            raise DerivationError(f"MP: {th.concl} does not match the antecedent {ant}")
        k = self.ctx
        if k.extended:
            return k.mp(ith, th)
        pth = self._lemma("MP", self._prove_mp)
        inst = k.inst([(_p, ant), (_q, con)], pth)
        return conv.prove_hyp(k, th, conv.prove_hyp(k, ith, inst))

    def _prove_mp(self) -> Theorem:
        k = self.ctx
        th1 = k.eq_mp(self._unfold(IMP, _p, _q), k.assume(mk_imp(_p, _q)))
        return self.conjunct2(k.eq_mp(conv.sym(k, th1), k.assume(_p)))

    def disch(self, a: TermExpr, th: Theorem) -> Theorem:
        """A |- q  gives  A - {a} |- a ==> q"""
        k = self.ctx
        if k.extended:
            return k.disch(a, th)
        pth = self._lemma("DISCH", lambda: conv.sym(k, self._unfold(IMP, _p, _q)))
        th1 = self.conj(k.assume(a), th)
        th2 = self.conjunct1(k.assume(th1.concl))
        th3 = k.deduct_antisym(th1, th2)
        return k.eq_mp(k.inst([(_p, a), (_q, th.concl)], pth), th3)

    def gen(self, x: Var, th: Theorem) -> Theorem:
        """A |- p  gives  A |- !x. p  when x is not free in A"""
        if not isinstance(x, Var):
            raise DerivationError(f"GEN: expected a variable, got {x}")
        k = self.ctx
        if k.extended:
            return k.gen(x, th)
        pth = self._lemma("GEN", lambda: conv.sym(k, self._unfold(FORALL, _P)))
        qth = self._at_type(pth, x.ty)
        abs_th = k.abs(x, self.eqt_intro(th))
        return k.eq_mp(k.inst([(_pred_var(x.ty), conv.lhs(abs_th))], qth), abs_th)

    def spec(self, tm: TermExpr, th: Theorem) -> Theorem:
        """A |- !x. p  gives  A |- p[tm/x]"""
        if not is_binder(FORALL, th.concl):
            raise DerivationError(f"SPEC: {th.concl} is not universally quantified")
        bound, _ = dest_binder(FORALL, th.concl)
        if type_of(tm) != bound.ty:
            raise DerivationError(f"SPEC: {tm} : {type_of(tm)} does not fit {bound.name} : {bound.ty}")
        k = self.ctx
        if k.extended:
            return k.spec(tm, th)
        pth = self._at_type(self._lemma("SPEC", self._prove_spec), bound.ty)
        pred = th.concl.arg
        inst = k.inst([(_pred_var(bound.ty), pred), (Var("x", bound.ty), tm)], pth)
        inst = conv.prove_hyp(k, th, inst)
        return k.eq_mp(k.beta(inst.concl), inst)

    def _prove_spec(self) -> Theorem:
        k = self.ctx
        forall_p = App(self.table.const(FORALL), _P)
        th1 = k.eq_mp(self._unfold(FORALL, _P), k.assume(forall_p))
        th2 = conv.ap_thm(k, th1, _x)
        return self.eqt_elim(k.trans(th2, k.beta(conv.rhs(th2))))

    def undisch(self, th: Theorem) -> Theorem:
        """A |- p ==> q  gives  A u {p} |- q"""
        if not is_imp(th.concl):
            raise DerivationError(f"UNDISCH: {th.concl} is not an implication")
        ant, _ = dest_binary(IMP, th.concl)
        return self.mp(th, self.ctx.assume(ant))

    # ------------------------------------------------------------------
    # Disjunction

    def disj1(self, th: Theorem, q: TermExpr) -> Theorem:
        """A |- p  gives  A |- p \\/ q"""
        self._require_bool("DISJ1", q)
        pth = self._lemma("DISJ1", lambda: self._prove_disj(left=True))
        return conv.prove_hyp(self.ctx, th, self.ctx.inst([(_p, th.concl), (_q, q)], pth))

    def disj2(self, p: TermExpr, th: Theorem) -> Theorem:
        """A |- q  gives  A |- p \\/ q"""
        self._require_bool("DISJ2", p)
        pth = self._lemma("DISJ2", lambda: self._prove_disj(left=False))
        return conv.prove_hyp(self.ctx, th, self.ctx.inst([(_p, p), (_q, th.concl)], pth))

    def _prove_disj(self, left: bool) -> Theorem:
        k = self.ctx
        side = _p if left else _q
        side_imp = mk_imp(side, _t)
        th = self.mp(k.assume(side_imp), k.assume(side))
        th = self.gen(_t, self.disch(mk_imp(_p, _t), self.disch(mk_imp(_q, _t), th)))
        return k.eq_mp(conv.sym(k, self._unfold(OR, _p, _q)), th)

    def disj_cases(self, th0: Theorem, th1: Theorem, th2: Theorem) -> Theorem:
        """A |- p \\/ q, B u {p} |- r, C u {q} |- r  gives  A u B u C |- r"""
        if not is_binary(OR, th0.concl):
            raise DerivationError(f"DISJ_CASES: {th0.concl} is not a disjunction")
        if not alpha_equal(th1.concl, th2.concl):
            raise DerivationError(f"DISJ_CASES: conclusions differ: {th1.concl} vs {th2.concl}")
        k = self.ctx
        left, right = dest_binary(OR, th0.concl)
        pth = self._lemma("DISJ_CASES", self._prove_disj_cases)
        th = k.inst([(_p, left), (_q, right), (_r, th1.concl)], pth)
        th = conv.prove_hyp(k, th0, th)
        th = conv.prove_hyp(k, self.disch(left, th1), th)
        return conv.prove_hyp(k, self.disch(right, th2), th)

    def _prove_disj_cases(self) -> Theorem:
        k = self.ctx
        th = k.eq_mp(self._unfold(OR, _p, _q), k.assume(mk_disj(_p, _q)))
        th = self.spec(_r, th)
        return self.mp(self.mp(th, k.assume(mk_imp(_p, _r))), k.assume(mk_imp(_q, _r)))

    # ------------------------------------------------------------------
    # Existential quantification

    def exists(self, etm: TermExpr, witness: TermExpr, th: Theorem) -> Theorem:
        """A |- p[u/x]  gives  A |- ?x. p  for the term ``etm`` = ?x. p and witness u"""
        if not is_binder(EXISTS, etm):
            raise DerivationError(f"EXISTS: {etm} is not an existential")
        bound, body = dest_binder(EXISTS, etm)
        if type_of(witness) != bound.ty:
            raise DerivationError(f"EXISTS: witness {witness} has type {type_of(witness)}, not {bound.ty}")
        if not alpha_equal(subst_term([(bound, witness)], body), th.concl):
            raise DerivationError(f"EXISTS: {th.concl} is not an instance of {etm}")
        k = self.ctx
        pred = etm.arg
        pth = self._at_type(self._lemma("EXISTS", self._prove_exists), bound.ty)
        bth = k.beta(App(pred, witness))
        cth = k.inst([(_pred_var(bound.ty), pred), (Var("x", bound.ty), witness)], pth)
        return conv.prove_hyp(k, k.eq_mp(conv.sym(k, bth), th), cth)

    def _prove_exists(self) -> Theorem:
        k = self.ctx
        hyp = mk_forall(_x, mk_imp(App(_P, _x), _q))
        th2 = self.spec(_x, k.assume(hyp))
        th3 = self.disch(hyp, self.mp(th2, k.assume(App(_P, _x))))
        return k.eq_mp(conv.sym(k, self._unfold(EXISTS, _P)), self.gen(_q, th3))

    def choose(self, v: Var, th1: Theorem, th2: Theorem) -> Theorem:
        """A |- ?x. p, B u {p[v/x]} |- q  gives  A u B |- q  when v is not free in B, q or ?x. p"""
        if not isinstance(v, Var):
            raise DerivationError(f"CHOOSE: expected a variable, got {v}")
        if not is_binder(EXISTS, th1.concl):
            raise DerivationError(f"CHOOSE: {th1.concl} is not an existential")
        bound, body = dest_binder(EXISTS, th1.concl)
        if v.ty != bound.ty:
            raise DerivationError(f"CHOOSE: {v.name} : {v.ty} does not fit {bound.name} : {bound.ty}")
        pattern = subst_term([(bound, v)], body)
        others = [h for h in th2.hyps if not alpha_equal(h, pattern)]
        if any(v in free_vars(t) for t in [th1.concl, th2.concl] + others):
            raise DerivationError(f"CHOOSE: {v.name} occurs free in the side conditions")
        k = self.ctx
        pred = th1.concl.arg
        redex = App(pred, v)
        reduced = k.eq_mp(k.beta(redex), k.assume(redex))
        th2 = conv.prove_hyp(k, reduced, th2)
        th4 = self.gen(v, self.disch(redex, th2))
        pth = self._at_type(self._lemma("CHOOSE", self._prove_choose), bound.ty)
        th5 = k.inst([(_pred_var(bound.ty), pred), (_q, th2.concl)], pth)
        return conv.prove_hyp(k, th4, conv.prove_hyp(k, th1, th5))

    def _prove_choose(self) -> Theorem:
        k = self.ctx
        exists_p = App(self.table.const(EXISTS), _P)
        th = k.eq_mp(self._unfold(EXISTS, _P), k.assume(exists_p))
        th = self.spec(_q, th)
        return self.mp(th, k.assume(mk_forall(_x, mk_imp(App(_P, _x), _q))))

    # ------------------------------------------------------------------
    # Negation and falsity

    def not_intro(self, th: Theorem) -> Theorem:
        """A |- p ==> F  gives  A |- ~p"""
        if not (is_imp(th.concl) and alpha_equal(th.concl.arg, Const(FALSE, BOOL))):
            raise DerivationError(f"NOT_INTRO: {th.concl} is not of the form p ==> F")
        k = self.ctx
        p = th.concl.fun.arg
        return k.eq_mp(conv.sym(k, self._unfold(NOT, p)), th)

    def not_elim(self, th: Theorem) -> Theorem:
        """A |- ~p  gives  A |- p ==> F"""
        concl = th.concl
        if not (isinstance(concl, App) and isinstance(concl.fun, Const) and concl.fun.name == NOT):
            raise DerivationError(f"NOT_ELIM: {concl} is not a negation")
        k = self.ctx
        return k.eq_mp(self._unfold(NOT, concl.arg), th)

    def contr(self, tm: TermExpr, th: Theorem) -> Theorem:
        """A |- F  gives  A |- tm"""
        if not alpha_equal(th.concl, Const(FALSE, BOOL)):
            raise DerivationError(f"CONTR: {th.concl} is not F")
        self._require_bool("CONTR", tm)
        k = self.ctx
        return self.spec(tm, k.eq_mp(self.table.definition(FALSE), th))

    # ------------------------------------------------------------------
    # Equality conveniences

    def sym(self, th: Theorem) -> Theorem:
        return conv.sym(self.ctx, th)

    def ap_term(self, f: TermExpr, th: Theorem) -> Theorem:
        return conv.ap_term(self.ctx, f, th)

    def ap_thm(self, th: Theorem, x: TermExpr) -> Theorem:
        return conv.ap_thm(self.ctx, th, x)

    def prove_hyp(self, ath: Theorem, bth: Theorem) -> Theorem:
        return conv.prove_hyp(self.ctx, ath, bth)

    def beta_rule(self, th: Theorem) -> Theorem:
        return conv.beta_rule(self.ctx, th)

    def _require_bool(self, rule: str, tm: TermExpr) -> None:
        if type_of(tm) != BOOL:
            raise DerivationError(f"{rule}: {tm} has type {type_of(tm)}, not bool")
