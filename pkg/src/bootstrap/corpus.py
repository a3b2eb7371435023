"""The benchmark corpus: named theorems buildable in either kernel mode.

Entry names are stable; bench reports and artifact file names use them.
Only intuitionistically derivable statements appear since no classical
axiom is installed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List

from src.bootstrap.connectives import mk_conj, mk_disj, mk_exists, mk_false, mk_neg, mk_true
from src.bootstrap.session import Session
from src.hol.terms import Abs, App, Var, mk_eq, mk_forall, mk_imp
from src.hol.types import ALPHA, BOOL, mk_fun_type
from src.kernel.theorem import Theorem

p = Var("p", BOOL)
q = Var("q", BOOL)
r = Var("r", BOOL)
x = Var("x", ALPHA)
y = Var("y", ALPHA)
z = Var("z", ALPHA)
c = Var("c", ALPHA)
f = Var("f", mk_fun_type(ALPHA, ALPHA))
g = Var("g", mk_fun_type(ALPHA, ALPHA))
P = Var("P", mk_fun_type(ALPHA, BOOL))
Q = Var("Q", mk_fun_type(ALPHA, BOOL))
R = Var("R", mk_fun_type(ALPHA, mk_fun_type(ALPHA, BOOL)))


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    builder: Callable[[Session], Theorem]
    statement: str

    def build(self, session: Session) -> Theorem:
        return self.builder(session)


# equality and lambda-calculus

def _truth(s: Session) -> Theorem:
    return s.rules.truth()


def _refl_bool(s: Session) -> Theorem:
    return s.ctx.refl(p)


def _beta_id(s: Session) -> Theorem:
    return s.ctx.beta(App(Abs(x, x), y))


def _beta_const(s: Session) -> Theorem:
    return s.ctx.beta(App(Abs(x, p), y))


def _sym_eq(s: Session) -> Theorem:
    return s.rules.sym(s.ctx.assume(mk_eq(x, y)))


def _trans_eq(s: Session) -> Theorem:
    k = s.ctx
    return k.trans(k.assume(mk_eq(x, y)), k.assume(mk_eq(y, z)))


def _ap_term(s: Session) -> Theorem:
    return s.rules.ap_term(f, s.ctx.assume(mk_eq(x, y)))


def _ap_thm(s: Session) -> Theorem:
    return s.rules.ap_thm(s.ctx.assume(mk_eq(f, g)), x)


def _mk_comb_eq(s: Session) -> Theorem:
    k = s.ctx
    return k.mk_comb(k.assume(mk_eq(f, g)), k.assume(mk_eq(x, y)))


def _abs_eq(s: Session) -> Theorem:
    k = s.ctx
    return k.abs(z, k.assume(mk_eq(x, y)))


def _eq_mp(s: Session) -> Theorem:
    k = s.ctx
    return k.eq_mp(k.assume(mk_eq(p, q)), k.assume(p))


def _deduct_antisym_pq(s: Session) -> Theorem:
    k = s.ctx
    return k.deduct_antisym(k.assume(p), k.assume(q))


def _inst_type_refl(s: Session) -> Theorem:
    k = s.ctx
    return k.inst_type({ALPHA: BOOL}, k.refl(x))


def _inst_eq(s: Session) -> Theorem:
    k = s.ctx
    return k.inst([(x, c)], k.assume(mk_eq(x, y)))


def _eqt_intro(s: Session) -> Theorem:
    return s.rules.eqt_intro(s.ctx.assume(p))


def _eqt_elim(s: Session) -> Theorem:
    return s.rules.eqt_elim(s.ctx.assume(mk_eq(p, mk_true())))


def _beta_rule(s: Session) -> Theorem:
    return s.rules.beta_rule(s.ctx.assume(App(Abs(x, App(P, x)), c)))


# conjunction

def _conj(s: Session) -> Theorem:
    k = s.ctx
    return s.rules.conj(k.assume(p), k.assume(q))


def _conjunct1(s: Session) -> Theorem:
    return s.rules.conjunct1(s.ctx.assume(mk_conj(p, q)))


def _conjunct2(s: Session) -> Theorem:
    return s.rules.conjunct2(s.ctx.assume(mk_conj(p, q)))


def _conj_comm(s: Session) -> Theorem:
    d = s.rules
    pq = s.ctx.assume(mk_conj(p, q))
    return d.conj(d.conjunct2(pq), d.conjunct1(pq))


def _conj_assoc(s: Session) -> Theorem:
    d = s.rules
    pqr = s.ctx.assume(mk_conj(p, mk_conj(q, r)))
    qr = d.conjunct2(pqr)
    return d.conj(d.conj(d.conjunct1(pqr), d.conjunct1(qr)), d.conjunct2(qr))


def _prove_hyp_conj(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    both = d.conj(k.assume(p), k.assume(q))
    return d.prove_hyp(both, d.conjunct1(k.assume(mk_conj(p, q))))


# implication

def _mp(s: Session) -> Theorem:
    k = s.ctx
    return s.rules.mp(k.assume(mk_imp(p, q)), k.assume(p))


def _undisch(s: Session) -> Theorem:
    return s.rules.undisch(s.ctx.assume(mk_imp(p, q)))


def _imp_refl(s: Session) -> Theorem:
    return s.rules.disch(p, s.ctx.assume(p))


def _imp_trans(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    q_th = d.mp(k.assume(mk_imp(p, q)), k.assume(p))
    return d.disch(p, d.mp(k.assume(mk_imp(q, r)), q_th))


def _k_comb(s: Session) -> Theorem:
    d = s.rules
    return d.disch(p, d.disch(q, s.ctx.assume(p)))


def _s_comb(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    pqr = mk_imp(p, mk_imp(q, r))
    pq = mk_imp(p, q)
    p_th = k.assume(p)
    r_th = d.mp(d.mp(k.assume(pqr), p_th), d.mp(k.assume(pq), p_th))
    return d.disch(pqr, d.disch(pq, d.disch(p, r_th)))


def _imp_swap(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    pqr = mk_imp(p, mk_imp(q, r))
    r_th = d.mp(d.mp(k.assume(pqr), k.assume(p)), k.assume(q))
    return d.disch(pqr, d.disch(q, d.disch(p, r_th)))


def _conj_imp_curry(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    curried = mk_imp(mk_conj(p, q), r)
    r_th = d.mp(k.assume(curried), d.conj(k.assume(p), k.assume(q)))
    return d.disch(curried, d.disch(p, d.disch(q, r_th)))


def _imp_conj(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    pq, pr = mk_imp(p, q), mk_imp(p, r)
    p_th = k.assume(p)
    both = d.conj(d.mp(k.assume(pq), p_th), d.mp(k.assume(pr), p_th))
    return d.disch(pq, d.disch(pr, d.disch(p, both)))


# universal quantification

def _gen_refl(s: Session) -> Theorem:
    return s.rules.gen(x, s.ctx.refl(x))


def _spec_inst(s: Session) -> Theorem:
    d = s.rules
    return d.spec(c, d.gen(x, s.ctx.refl(x)))


def _forall_elim(s: Session) -> Theorem:
    d = s.rules
    all_p = mk_forall(x, App(P, x))
    return d.disch(all_p, d.spec(c, s.ctx.assume(all_p)))


def _forall_swap(s: Session) -> Theorem:
    d = s.rules
    nested = mk_forall(x, mk_forall(y, App(App(R, x), y)))
    rxy = d.spec(y, d.spec(x, s.ctx.assume(nested)))
    return d.disch(nested, d.gen(y, d.gen(x, rxy)))


def _forall_and(s: Session) -> Theorem:
    d = s.rules
    both = d.spec(x, s.ctx.assume(mk_forall(x, mk_conj(App(P, x), App(Q, x)))))
    return d.conj(d.gen(x, d.conjunct1(both)), d.gen(x, d.conjunct2(both)))


# disjunction

def _disj1(s: Session) -> Theorem:
    return s.rules.disj1(s.ctx.assume(p), q)


def _disj2(s: Session) -> Theorem:
    return s.rules.disj2(p, s.ctx.assume(q))


def _disj_comm(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    return d.disj_cases(k.assume(mk_disj(p, q)), d.disj2(q, k.assume(p)), d.disj1(k.assume(q), p))


def _disj_idem(s: Session) -> Theorem:
    k = s.ctx
    return s.rules.disj_cases(k.assume(mk_disj(p, p)), k.assume(p), k.assume(p))


def _disj_cases_imp(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    pr, qr, pq = mk_imp(p, r), mk_imp(q, r), mk_disj(p, q)
    r_th = d.disj_cases(k.assume(pq), d.mp(k.assume(pr), k.assume(p)), d.mp(k.assume(qr), k.assume(q)))
    return d.disch(pr, d.disch(qr, d.disch(pq, r_th)))


# existential quantification

def _exists_intro(s: Session) -> Theorem:
    return s.rules.exists(mk_exists(x, App(P, x)), c, s.ctx.assume(App(P, c)))


def _exists_refl(s: Session) -> Theorem:
    return s.rules.exists(mk_exists(x, mk_eq(x, c)), c, s.ctx.refl(c))


def _choose_elim(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    all_imp = mk_forall(x, mk_imp(App(P, x), q))
    q_th = d.mp(d.spec(x, k.assume(all_imp)), k.assume(App(P, x)))
    return d.choose(x, k.assume(mk_exists(x, App(P, x))), q_th)


def _exists_imp(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    ex_both = mk_exists(x, mk_conj(App(P, x), App(Q, x)))
    witness = d.exists(mk_exists(x, App(P, x)), x,
                       d.conjunct1(k.assume(mk_conj(App(P, x), App(Q, x)))))
    return d.disch(ex_both, d.choose(x, k.assume(ex_both), witness))


# negation and falsity

def _not_intro(s: Session) -> Theorem:
    return s.rules.not_intro(s.ctx.assume(mk_imp(p, mk_false())))


def _not_elim(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    return d.mp(d.not_elim(k.assume(mk_neg(p))), k.assume(p))


def _not_not_intro(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    absurd = d.mp(d.not_elim(k.assume(mk_neg(p))), k.assume(p))
    return d.disch(p, d.not_intro(d.disch(mk_neg(p), absurd)))


def _contrapos(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    pq, nq = mk_imp(p, q), mk_neg(q)
    absurd = d.mp(d.not_elim(k.assume(nq)), d.mp(k.assume(pq), k.assume(p)))
    return d.disch(pq, d.disch(nq, d.not_intro(d.disch(p, absurd))))


def _false_elim(s: Session) -> Theorem:
    return s.rules.contr(p, s.ctx.assume(mk_false()))


def _not_false(s: Session) -> Theorem:
    d = s.rules
    return d.not_intro(d.disch(mk_false(), s.ctx.assume(mk_false())))


def _and_not(s: Session) -> Theorem:
    k, d = s.ctx, s.rules
    contradiction = mk_conj(p, mk_neg(p))
    both = k.assume(contradiction)
    absurd = d.mp(d.not_elim(d.conjunct2(both)), d.conjunct1(both))
    return d.not_intro(d.disch(contradiction, absurd))


_ENTRIES = [
    CorpusEntry("truth", _truth, "|- T"),
    CorpusEntry("refl_bool", _refl_bool, "|- p = p"),
    CorpusEntry("beta_id", _beta_id, "|- (\\x. x) y = y"),
    CorpusEntry("beta_const", _beta_const, "|- (\\x. p) y = p"),
    CorpusEntry("sym_eq", _sym_eq, "x = y |- y = x"),
    CorpusEntry("trans_eq", _trans_eq, "x = y, y = z |- x = z"),
    CorpusEntry("ap_term", _ap_term, "x = y |- f x = f y"),
    CorpusEntry("ap_thm", _ap_thm, "f = g |- f x = g x"),
    CorpusEntry("mk_comb_eq", _mk_comb_eq, "f = g, x = y |- f x = g y"),
    CorpusEntry("abs_eq", _abs_eq, "x = y |- (\\z. x) = (\\z. y)"),
    CorpusEntry("eq_mp", _eq_mp, "p = q, p |- q"),
    CorpusEntry("deduct_antisym_pq", _deduct_antisym_pq, "p, q |- p = q"),
    CorpusEntry("inst_type_refl", _inst_type_refl, "|- (x:bool) = x"),
    CorpusEntry("inst_eq", _inst_eq, "c = y |- c = y"),
    CorpusEntry("eqt_intro", _eqt_intro, "p |- p = T"),
    CorpusEntry("eqt_elim", _eqt_elim, "p = T |- p"),
    CorpusEntry("beta_rule", _beta_rule, "(\\x. P x) c |- P c"),
    CorpusEntry("conj", _conj, "p, q |- p /\\ q"),
    CorpusEntry("conjunct1", _conjunct1, "p /\\ q |- p"),
    CorpusEntry("conjunct2", _conjunct2, "p /\\ q |- q"),
    CorpusEntry("conj_comm", _conj_comm, "p /\\ q |- q /\\ p"),
    CorpusEntry("conj_assoc", _conj_assoc, "p /\\ (q /\\ r) |- (p /\\ q) /\\ r"),
    CorpusEntry("prove_hyp_conj", _prove_hyp_conj, "p, q |- p"),
    CorpusEntry("mp", _mp, "p ==> q, p |- q"),
    CorpusEntry("undisch", _undisch, "p ==> q, p |- q"),
    CorpusEntry("imp_refl", _imp_refl, "|- p ==> p"),
    CorpusEntry("imp_trans", _imp_trans, "p ==> q, q ==> r |- p ==> r"),
    CorpusEntry("k_comb", _k_comb, "|- p ==> q ==> p"),
    CorpusEntry("s_comb", _s_comb, "|- (p ==> q ==> r) ==> (p ==> q) ==> p ==> r"),
    CorpusEntry("imp_swap", _imp_swap, "|- (p ==> q ==> r) ==> q ==> p ==> r"),
    CorpusEntry("conj_imp_curry", _conj_imp_curry, "|- (p /\\ q ==> r) ==> p ==> q ==> r"),
    CorpusEntry("imp_conj", _imp_conj, "|- (p ==> q) ==> (p ==> r) ==> p ==> q /\\ r"),
    CorpusEntry("gen_refl", _gen_refl, "|- !x. x = x"),
    CorpusEntry("spec_inst", _spec_inst, "|- c = c"),
    CorpusEntry("forall_elim", _forall_elim, "|- (!x. P x) ==> P c"),
    CorpusEntry("forall_swap", _forall_swap, "|- (!x y. R x y) ==> (!y x. R x y)"),
    CorpusEntry("forall_and", _forall_and, "!x. P x /\\ Q x |- (!x. P x) /\\ (!x. Q x)"),
    CorpusEntry("disj1", _disj1, "p |- p \\/ q"),
    CorpusEntry("disj2", _disj2, "q |- p \\/ q"),
    CorpusEntry("disj_comm", _disj_comm, "p \\/ q |- q \\/ p"),
    CorpusEntry("disj_idem", _disj_idem, "p \\/ p |- p"),
    CorpusEntry("disj_cases_imp", _disj_cases_imp, "|- (p ==> r) ==> (q ==> r) ==> p \\/ q ==> r"),
    CorpusEntry("exists_intro", _exists_intro, "P c |- ?x. P x"),
    CorpusEntry("exists_refl", _exists_refl, "|- ?x. x = c"),
    CorpusEntry("choose_elim", _choose_elim, "?x. P x, !x. P x ==> q |- q"),
    CorpusEntry("exists_imp", _exists_imp, "|- (?x. P x /\\ Q x) ==> ?x. P x"),
    CorpusEntry("not_intro", _not_intro, "p ==> F |- ~p"),
    CorpusEntry("not_elim", _not_elim, "~p, p |- F"),
    CorpusEntry("not_not_intro", _not_not_intro, "|- p ==> ~~p"),
    CorpusEntry("contrapos", _contrapos, "|- (p ==> q) ==> ~q ==> ~p"),
    CorpusEntry("false_elim", _false_elim, "F |- p"),
    CorpusEntry("not_false", _not_false, "|- ~F"),
    CorpusEntry("and_not", _and_not, "|- ~(p /\\ ~p)"),
]

_BY_NAME: Dict[str, CorpusEntry] = {entry.name: entry for entry in _ENTRIES}


def corpus() -> List[CorpusEntry]:
    return list(_ENTRIES)


def corpus_entry(name: str) -> CorpusEntry:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise KeyError(f"unknown corpus entry {name!r}") from None
