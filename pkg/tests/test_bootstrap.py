import itertools

import pytest

from oracles import evaluate
from src.bootstrap.connectives import (AND, EXTENDED_ORDER, FORALL, IMP, MINIMAL_ORDER, TRUE,
                                       extended_definitions, install_connectives, minimal_definitions,
                                       mk_conj, mk_disj, mk_exists, mk_false, mk_neg, mk_true,
                                       printed_extended_conjunction)
from src.bootstrap.legacy import ETA_AXIOM, find_extensionality, prove_legacy_definitions
from src.bootstrap.session import new_session
from src.errors import (DerivationError, MissingAxiom, NameClash, UnknownConstant, VarFreeInHyps,
                        WrongMode)
from src.hol.terms import (Abs, App, Const, Var, alpha_equal, free_vars, list_mk_abs, mk_eq,
                           mk_forall, mk_imp)
from src.hol.types import ALPHA, BOOL, mk_fun_type
from src.kernel.theorem import sequents_alpha_equal

p = Var("p", BOOL)
q = Var("q", BOOL)
r = Var("r", BOOL)
x = Var("x", ALPHA)
y = Var("y", ALPHA)
c = Var("c", ALPHA)
f = Var("f", mk_fun_type(ALPHA, ALPHA))
g = Var("g", mk_fun_type(ALPHA, ALPHA))
P = Var("P", mk_fun_type(ALPHA, BOOL))
T = mk_true()
F = mk_false()


class TestConnectives:
    def test_definition_order(self, minimal_session, extended_session):
        assert tuple(minimal_session.table.names) == MINIMAL_ORDER
        assert tuple(extended_session.table.names) == EXTENDED_ORDER
        assert IMP not in extended_session.table and FORALL not in extended_session.table

    def test_truth_definitions(self):
        ident = Abs(p, p)
        assert minimal_definitions()[TRUE] == mk_eq(ident, ident)
        x_bool = Var("x", BOOL)
        assert extended_definitions()[TRUE] == mk_forall(x_bool, mk_imp(x_bool, x_bool))

    def test_minimal_implication(self):
        assert minimal_definitions()[IMP] == list_mk_abs([p, q], mk_eq(mk_conj(p, q), p))

    def test_definitions_are_closed(self):
        for rhs in list(minimal_definitions().values()) + list(extended_definitions().values()):
            assert free_vars(rhs) == frozenset()

    def test_defining_theorems(self, session):
        for name in session.table.names:
            th = session.table.definition(name)
            assert th.hyps == ()
            assert th.concl.fun.arg == session.table.const(name)

    def test_install_twice(self, session):
        with pytest.raises(NameClash):
            install_connectives(session.ctx)

    def test_missing_connective(self, extended_session):
        with pytest.raises(UnknownConstant):
            extended_session.table.definition(IMP)

    def test_printed_conjunction_is_implication(self):
        # \p q. !x. p ==> ((q ==> x) ==> x) behaves like p ==> q, so p cannot be projected out
        printed = printed_extended_conjunction().body.body
        curried = extended_definitions()[AND].body.body
        for vp, vq in itertools.product((False, True), repeat=2):
            env = {p: vp, q: vq}
            assert evaluate(printed, env) == ((not vp) or vq)
            assert evaluate(curried, env) == (vp and vq)
        assert evaluate(printed, {p: False, q: True}) and not evaluate(p, {p: False})


def _rule_cases():
    """(rule, arguments, expected hypotheses, expected conclusion) builders for every derived rule."""
    return {
        "TRUTH": lambda s: ((), [], T),
        "EQT_INTRO": lambda s: ((s.ctx.assume(p),), [p], mk_eq(p, T)),
        "EQT_ELIM": lambda s: ((s.ctx.assume(mk_eq(p, T)),), [mk_eq(p, T)], p),
        "CONJ": lambda s: ((s.ctx.assume(p), s.ctx.assume(q)), [p, q], mk_conj(p, q)),
        "CONJUNCT1": lambda s: ((s.ctx.assume(mk_conj(p, q)),), [mk_conj(p, q)], p),
        "CONJUNCT2": lambda s: ((s.ctx.assume(mk_conj(p, q)),), [mk_conj(p, q)], q),
        "MP_D": lambda s: ((s.ctx.assume(mk_imp(p, q)), s.ctx.assume(p)), [mk_imp(p, q), p], q),
        "DISCH_D": lambda s: ((p, s.ctx.assume(p)), [], mk_imp(p, p)),
        "GEN_D": lambda s: ((x, s.ctx.refl(x)), [], mk_forall(x, mk_eq(x, x))),
        "SPEC_D": lambda s: ((y, s.rules.gen(x, s.ctx.refl(x))), [], mk_eq(y, y)),
        "DISJ1": lambda s: ((s.ctx.assume(p), q), [p], mk_disj(p, q)),
        "DISJ2": lambda s: ((p, s.ctx.assume(q)), [q], mk_disj(p, q)),
        "DISJ_CASES": lambda s: ((s.ctx.assume(mk_disj(p, q)),
                                  s.rules.disj2(q, s.ctx.assume(p)),
                                  s.rules.disj1(s.ctx.assume(q), p)),
                                 [mk_disj(p, q)], mk_disj(q, p)),
        "EXISTS_I": lambda s: ((mk_exists(x, App(P, x)), c, s.ctx.assume(App(P, c))),
                               [App(P, c)], mk_exists(x, App(P, x))),
        "CHOOSE": lambda s: ((c, s.ctx.assume(mk_exists(x, App(P, x))),
                              s.rules.mp(s.rules.spec(c, s.ctx.assume(mk_forall(x, mk_imp(App(P, x), q)))),
                                         s.ctx.assume(App(P, c)))),
                             [mk_exists(x, App(P, x)), mk_forall(x, mk_imp(App(P, x), q))], q),
        "NOT_INTRO": lambda s: ((s.ctx.assume(mk_imp(p, F)),), [mk_imp(p, F)], mk_neg(p)),
        "NOT_ELIM": lambda s: ((s.ctx.assume(mk_neg(p)),), [mk_neg(p)], mk_imp(p, F)),
        "SYM": lambda s: ((s.ctx.assume(mk_eq(x, y)),), [mk_eq(x, y)], mk_eq(y, x)),
        "AP_TERM": lambda s: ((f, s.ctx.assume(mk_eq(x, y))), [mk_eq(x, y)], mk_eq(App(f, x), App(f, y))),
        "AP_THM": lambda s: ((s.ctx.assume(mk_eq(f, g)), x), [mk_eq(f, g)], mk_eq(App(f, x), App(g, x))),
        "PROVE_HYP": lambda s: ((s.rules.truth(), s.ctx.assume(T)), [], T),
        "UNDISCH": lambda s: ((s.ctx.assume(mk_imp(p, q)),), [mk_imp(p, q), p], q),
        "CONTR": lambda s: ((p, s.ctx.assume(F)), [F], p),
        "BETA_RULE": lambda s: ((s.ctx.assume(App(Abs(x, App(P, x)), c)),),
                                [App(Abs(x, App(P, x)), c)], App(P, c)),
    }


RULE_CASES = _rule_cases()


class TestDerivedRules:
    def test_every_rule_has_a_case(self, minimal_session):
        assert sorted(RULE_CASES) == sorted(minimal_session.rules.rule_names)

    @pytest.mark.parametrize("rule", sorted(RULE_CASES))
    def test_rule_schema(self, session, rule):
        args, hyps, concl = RULE_CASES[rule](session)
        th = session.rules.derive(rule, *args)
        assert sequents_alpha_equal(th.hyps, th.concl, hyps, concl)

    @pytest.mark.parametrize("rule", sorted(RULE_CASES))
    def test_kernels_agree(self, minimal_session, extended_session, rule):
        results = []
        for s in (minimal_session, extended_session):
            args, _, _ = RULE_CASES[rule](s)
            results.append(s.rules.derive(rule, *args))
        assert results[0].same_sequent(results[1])

    def test_rule_names_normalized(self, session):
        th = session.rules.derive(" conjunct1 ", session.ctx.assume(mk_conj(p, q)))
        assert th.concl == p
        th = session.rules.derive("mp-d", session.ctx.assume(mk_imp(p, q)), session.ctx.assume(p))
        assert th.concl == q

    def test_unknown_rule(self, session):
        with pytest.raises(DerivationError):
            session.rules.derive("EXCLUDED_MIDDLE")

    def test_schema_errors(self, session):
        k, rules = session.ctx, session.rules
        with pytest.raises(DerivationError):
            rules.conjunct1(k.assume(p))
        with pytest.raises(DerivationError):
            rules.mp(k.assume(mk_imp(p, q)), k.assume(q))
        with pytest.raises(DerivationError):
            rules.mp(k.assume(p), k.assume(p))
        with pytest.raises(DerivationError):
            rules.eqt_elim(k.assume(mk_eq(p, q)))
        with pytest.raises(DerivationError):
            rules.contr(p, k.assume(q))
        with pytest.raises(DerivationError):
            rules.disj1(k.assume(p), x)
        with pytest.raises(DerivationError):
            rules.disj_cases(k.assume(mk_disj(p, q)), k.assume(p), k.assume(q))
        with pytest.raises(DerivationError):
            rules.spec(p, k.assume(p))
        with pytest.raises(DerivationError):
            rules.exists(mk_exists(x, App(P, x)), c, k.assume(App(P, y)))
        with pytest.raises(DerivationError):
            rules.not_intro(k.assume(mk_imp(p, q)))
        with pytest.raises(DerivationError):
            rules.not_elim(k.assume(p))

    def test_choose_side_condition(self, session):
        k, rules = session.ctx, session.rules
        # c occurs in the conclusion
        with pytest.raises(DerivationError):
            rules.choose(c, k.assume(mk_exists(x, App(P, x))), k.assume(App(P, c)))

    def test_gen_side_condition(self, session):
        with pytest.raises(VarFreeInHyps):
            session.rules.gen(x, session.ctx.assume(mk_eq(x, y)))

    def test_lemmas_are_cached(self, session):
        first = session.rules.truth()
        assert session.rules.truth() is first


class TestStepCounts:
    @staticmethod
    def _steps(mode, build):
        s = new_session(mode)
        return build(s).step_count

    def test_conj_ratio(self):
        def build(s):
            return s.rules.conj(s.ctx.assume(p), s.ctx.assume(q))
        minimal = self._steps("minimal", build)
        extended = self._steps("extended", build)
        assert extended < minimal
        assert extended / minimal <= 0.75

    def test_disj1_ratio(self):
        def build(s):
            return s.rules.disj1(s.ctx.assume(p), q)
        minimal = self._steps("minimal", build)
        extended = self._steps("extended", build)
        assert extended / minimal <= 0.5

    def test_mp_is_one_step_in_extended_kernel(self):
        s = new_session("extended")
        ith, th = s.ctx.assume(mk_imp(p, q)), s.ctx.assume(p)
        assert s.rules.mp(ith, th).step_count == 3


class TestLegacyDefinitions:
    def test_recovers_minimal_definitions(self):
        s = new_session("extended", extensionality=True)
        forall_th, imp_th = prove_legacy_definitions(s.ctx, s.rules)
        pred_ty = mk_fun_type(ALPHA, BOOL)
        forall_const = Const(FORALL, mk_fun_type(pred_ty, BOOL))
        imp_const = Const(IMP, mk_fun_type(BOOL, mk_fun_type(BOOL, BOOL)))
        assert forall_th.hyps == () and imp_th.hyps == ()
        assert alpha_equal(forall_th.concl, mk_eq(forall_const, minimal_definitions()[FORALL]))
        assert alpha_equal(imp_th.concl, mk_eq(imp_const, minimal_definitions()[IMP]))

    def test_extensionality_installed_once(self):
        s = new_session("extended", extensionality=True)
        assert find_extensionality(s.ctx).concl == ETA_AXIOM
        assert len(s.ctx.axioms) == 1

    def test_minimal_mode(self):
        s = new_session("minimal", extensionality=True)
        with pytest.raises(WrongMode):
            prove_legacy_definitions(s.ctx, s.rules)

    def test_missing_extensionality(self):
        s = new_session("extended")
        with pytest.raises(MissingAxiom):
            prove_legacy_definitions(s.ctx, s.rules)
