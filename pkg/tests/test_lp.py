import pytest

from config import Config
from src.bootstrap.corpus import corpus
from src.bootstrap.legacy import find_extensionality
from src.bootstrap.session import new_session
from src.errors import (BudgetExceeded, LpError, LpSyntaxError, LpTypeError, UnboundName,
                        UnregisteredConstant, UnsupportedTraceNode)
from src.hol.terms import Abs, App, Const, Var, mk_eq
from src.hol.types import ALPHA, BOOL, IND, mk_fun_type
from src.kernel import conv
from src.lp.checker import check_entries, check_file, convertible, lp_check, whnf
from src.lp.lpfile import (Decl, LpFile, Rewrite, Thm, emit_lp_file, parse_entries, parse_lp_file,
                           parse_term)
from src.lp.signature import base_entries, base_file, base_signature
from src.lp.terms import (ConstRef, Lam, LpApp, Pi, VarRef, app, arrow, format_lp, head_name,
                          strip_app)
from src.lp.translate import (LpTranslator, theorem_file, translate_definition, translate_term,
                              translate_type)

ENTRY_NAMES = [entry.name for entry in corpus()]

p = Var("p", BOOL)
q = Var("q", BOOL)


def _mutate_first(t, fn):
    """``t`` with ``fn`` applied at the first subterm, in pre-order, where it returns a term."""
    replaced = fn(t)
    if replaced is not None:
        return replaced
    if isinstance(t, LpApp):
        fun = _mutate_first(t.fun, fn)
        if fun is not None:
            return LpApp(fun, t.arg)
        arg = _mutate_first(t.arg, fn)
        if arg is not None:
            return LpApp(t.fun, arg)
    elif isinstance(t, Lam):
        body = _mutate_first(t.body, fn)
        if body is not None:
            return Lam(t.name, t.annot, body)
    elif isinstance(t, Pi):
        domain = _mutate_first(t.domain, fn)
        if domain is not None:
            return Pi(t.name, domain, t.codomain)
        codomain = _mutate_first(t.codomain, fn)
        if codomain is not None:
            return Pi(t.name, t.domain, codomain)
    return None


def _swap_proofs(rule):
    def fn(t):
        head, args = strip_app(t)
        if head == ConstRef(rule) and len(args) == 4:
            return app(head, args[0], args[1], args[3], args[2])
        return None
    return fn


def _rename(old, new):
    def fn(t):
        head, args = strip_app(t)
        if head == ConstRef(old) and len(args) == 4:
            return app(ConstRef(new), *args)
        return None
    return fn


def _bool_to_ind(t):
    return ConstRef("ind") if t == ConstRef("bool") else None


def _proof_mutants(lp_file):
    """Files with a corrupted final theorem or a definition rewrite of the wrong type."""
    *rest, last = lp_file.entries
    assert isinstance(last, Thm)
    for k, entry in enumerate(rest):
        if isinstance(entry, Rewrite) and head_name(entry.lhs) != "term":
            wrapped = Lam("z", LpApp(ConstRef("term"), ConstRef("bool")), entry.rhs)
            yield LpFile(lp_file.header, rest[:k] + [Rewrite(entry.variables, entry.lhs, wrapped)]
                         + rest[k + 1:] + [last])
            break
    for fn in (_swap_proofs("MP"), _swap_proofs("EQ_MP"), _rename("MP", "EQ_MP"), _rename("EQ_MP", "MP")):
        value = _mutate_first(last.value, fn)
        if value is not None:
            yield LpFile(lp_file.header, rest + [Thm(last.name, last.ty, value)])
    ty = _mutate_first(last.ty, _bool_to_ind)
    if ty is not None:
        yield LpFile(lp_file.header, rest + [Thm(last.name, ty, last.value)])


class TestChecker:
    def test_term_of_arrow_unfolds(self):
        sig = base_signature(False)
        reduced = whnf(sig, parse_term("term (arr bool bool)"))
        assert reduced == parse_term("term bool -> term bool")
        assert whnf(sig, reduced) == reduced
        assert convertible(sig, parse_term("term (arr bool ind)"), arrow(
            LpApp(ConstRef("term"), ConstRef("bool")), LpApp(ConstRef("term"), ConstRef("ind"))))

    def test_modus_ponens(self):
        sig = base_signature(True)
        ty = parse_term("p : term bool -> q : term bool -> proof (imp p q) -> proof p -> proof q")
        good = parse_term("p : term bool => q : term bool => h1 : proof (imp p q) => h2 : proof p => MP p q h1 h2")
        swapped = parse_term("p : term bool => q : term bool => h1 : proof (imp p q) => h2 : proof p => MP p q h2 h1")
        lp_check(sig, good, ty)
        with pytest.raises(LpTypeError) as info:
            lp_check(sig, swapped, ty)
        assert info.value.path

    def test_spec_accepts_lambda_and_predicate(self):
        sig = base_signature(True)
        lp_check(sig,
                 parse_term("a : type => P : term (arr a bool) => u : term a => h : proof (forall a P) => SPEC a P u h"),
                 parse_term("a : type -> P : term (arr a bool) -> u : term a -> proof (forall a P) -> proof (P u)"))
        lp_check(sig,
                 parse_term("q : term bool => h : proof (forall bool (x : term bool => x)) => "
                            "SPEC bool (x : term bool => x) q h"),
                 parse_term("q : term bool -> proof (forall bool (x : term bool => x)) -> proof q"))

    def test_minimal_signature_has_no_extension_rules(self):
        with pytest.raises(UnboundName):
            lp_check(base_signature(False), parse_term("MP"), parse_term("type"))

    def test_budget(self):
        sig = check_entries(parse_entries("loop : type.\n[] loop --> loop.\n"), base_signature(False))
        with pytest.raises(BudgetExceeded):
            whnf(sig, ConstRef("loop"), budget=100)

    def test_rule_sides_must_agree(self):
        with pytest.raises(LpTypeError):
            check_entries(base_entries(False) + parse_entries("c : term bool.\n[] c --> x : term bool => x.\n"))
        with pytest.raises(LpTypeError):
            check_entries(base_entries(False) + parse_entries("c : term bool.\n[] c --> bool.\n"))

    def test_rules_take_pattern_types_from_positions(self):
        sig = check_entries(base_entries(False) + parse_entries(
            "id : a : type -> term (arr a a).\n[a] id a --> x : term a => x.\n"))
        assert convertible(sig, parse_term("id bool"), parse_term("x : term bool => x"))
        with pytest.raises(LpTypeError):
            check_entries(base_entries(False) + parse_entries(
                "k : a : type -> term (arr a a).\n[a] k a --> x : term bool => x.\n"))
        with pytest.raises(LpError):
            check_entries(base_entries(False) + parse_entries("c : term bool.\n[x] c --> x.\n"))

    def test_constants_in_use_take_no_rules(self):
        text = ("b : term bool.\nF : term bool.\n[x] proof x --> term bool.\n"
                "thm bogus : proof F := b.\n")
        with pytest.raises(LpError, match="already in use"):
            check_entries(base_entries(False) + parse_entries(text))
        with pytest.raises(LpError, match="already in use"):
            check_entries(base_entries(False) + parse_entries(
                "c : term bool.\nd : proof c -> TYPE.\n[] c --> eq bool c c.\n"))

    def test_duplicate_declaration(self):
        with pytest.raises(LpError):
            check_entries(parse_entries("a : TYPE.\na : TYPE.\n"))

    def test_unknown_constant(self):
        with pytest.raises(UnboundName):
            check_entries(parse_entries("x : nope.\n"))

    def test_syntax_error(self):
        with pytest.raises(LpSyntaxError):
            parse_entries("a : TYPE\n")


class TestSignatures:
    @pytest.mark.parametrize("extended,golden", [(False, "sig-minimal.lp"), (True, "sig-extended.lp")])
    def test_golden(self, extended, golden):
        data = emit_lp_file(base_file(extended))
        assert data == (Config.DOCS_DIR / golden).read_bytes()
        assert emit_lp_file(parse_lp_file(data)) == data
        check_file(base_file(extended))

    def test_extension_adds_rules(self):
        minimal = set(base_file(False).names())
        extended = set(base_file(True).names())
        assert extended - minimal == {"imp", "forall", "MP", "DISCH", "GEN", "SPEC"}


class TestTranslation:
    def test_types(self):
        assert translate_type(mk_fun_type(BOOL, IND)) == app(ConstRef("arr"), ConstRef("bool"), ConstRef("ind"))
        assert translate_type(ALPHA) == VarRef("A")

    def test_terms(self):
        assert translate_term(mk_eq(p, q)) == app(ConstRef("eq"), ConstRef("bool"), VarRef("p"), VarRef("q"))
        assert translate_term(Abs(p, p)) == Lam("p", LpApp(ConstRef("term"), ConstRef("bool")), VarRef("p"))

    def test_unregistered_constant(self):
        with pytest.raises(UnregisteredConstant):
            translate_term(Const("c", ALPHA))

    def test_definition_is_declaration_and_rewrite(self, session):
        const, defthm = session.ctx.definitions["T"]
        decl, rewrite = translate_definition(const, defthm, session.ctx)
        assert isinstance(decl, Decl) and decl.name == "T"
        assert isinstance(rewrite, Rewrite) and rewrite.lhs == ConstRef("T")
        check_entries([decl, rewrite], base_signature(session.ctx.extended))

    def test_type_definitions_unsupported(self, minimal_session):
        k = minimal_session.ctx
        truth = Const("T", BOOL)
        x_bool = Var("x", BOOL)
        pred = Abs(x_bool, mk_eq(x_bool, truth))
        witness = k.eq_mp(conv.sym(k, k.beta(App(pred, truth))), k.refl(truth))
        abs_rep, _ = k.define_type_op("unit", "mk_unit", "dest_unit", [], witness)
        translator = LpTranslator(k)
        with pytest.raises(UnsupportedTraceNode):
            translator.proof(abs_rep.trace, translator.new_scope())

    def test_axioms_become_declarations(self):
        session = new_session("extended", extensionality=True)
        eta = find_extensionality(session.ctx)
        lp_file = theorem_file(eta, "eta", session.ctx)
        assert "axiom_0" in lp_file.names()
        check_file(lp_file)

    def test_axiom_hypotheses_become_premises(self, minimal_ctx):
        th = minimal_ctx.new_axiom(p, [q])
        lp_file = theorem_file(th, "ax", minimal_ctx)
        decl = next(e for e in lp_file.entries if isinstance(e, Decl) and e.name == "axiom_0")
        assert decl.ty == parse_term("p : term bool -> q : term bool -> proof q -> proof p")
        check_file(lp_file)

    @pytest.mark.parametrize("name", ENTRY_NAMES)
    def test_corpus_theorems_check(self, mode, name):
        session = new_session(mode)
        th = next(entry for entry in corpus() if entry.name == name).build(session)
        lp_file = theorem_file(th, name, session.ctx)
        check_file(lp_file)
        data = emit_lp_file(lp_file)
        assert emit_lp_file(parse_lp_file(data)) == data
        assert isinstance(lp_file.entries[-1], Thm)

    def test_corrupted_proofs_rejected(self):
        rejected = 0
        for mode in ("minimal", "extended"):
            session = new_session(mode)
            for entry in corpus():
                lp_file = theorem_file(entry.build(session), entry.name, session.ctx)
                for mutant in _proof_mutants(lp_file):
                    with pytest.raises(LpError):
                        check_file(mutant)
                    rejected += 1
        assert rejected >= 20

    def test_proof_terms_print(self, extended_session):
        th = next(entry for entry in corpus() if entry.name == "mp").build(extended_session)
        lp_file = theorem_file(th, "mp", extended_session.ctx)
        assert "MP" in format_lp(lp_file.entries[-1].value)
