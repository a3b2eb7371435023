import random

import pytest

from src.article.commands import (EXTENSION_COMMANDS, STANDARD_COMMANDS, Dialect, IntLit, Named,
                                  StrLit, format_article, parse)
from src.article.vm import replay
from src.article.writer import serialize
from src.bootstrap.corpus import corpus, corpus_entry
from src.bootstrap.session import new_session
from src.errors import (ArticleError, ArticleSyntaxError, DialectTooWeak, ExportMismatch, HolkitError,
                        OperandKindMismatch, StackUnderflow, UnknownCommand)
from src.hol.terms import Var, mk_eq
from src.hol.types import BOOL
from src.kernel.context import KernelContext

ENTRY_NAMES = [entry.name for entry in corpus()]
NAME_ALPHABET = 'abcXYZ019 _-+=!?."\\\'#'

p = Var("p", BOOL)
q = Var("q", BOOL)


def _random_command(rng):
    kind = rng.randrange(3)
    if kind == 0:
        return IntLit(rng.randint(-10 ** 6, 10 ** 6))
    if kind == 1:
        return StrLit("".join(rng.choice(NAME_ALPHABET) for _ in range(rng.randrange(8))))
    return Named(rng.choice(sorted(STANDARD_COMMANDS | EXTENSION_COMMANDS)))


def _type_cmds(name):
    return [StrLit(name), Named("typeOp"), Named("nil"), Named("opType")]


def _var_cmds(v):
    return [StrLit(v.name)] + _type_cmds(v.ty.op) + [Named("var")]


def _term_cmds(v):
    return _var_cmds(v) + [Named("varTerm")]


def _header():
    return [IntLit(6), Named("version")]


def _empty_list():
    return [Named("nil")]


def _singleton(cmds):
    return cmds + [Named("nil"), Named("cons")]


class TestTextFormat:
    def test_random_commands_survive_formatting(self):
        rng = random.Random(31)
        cmds = [_random_command(rng) for _ in range(1000)]
        assert parse(format_article(cmds)) == cmds

    def test_quoting(self):
        cmds = [StrLit('a"b'), StrLit("back\\slash"), StrLit("")]
        data = format_article(cmds)
        assert data == b'"a\\"b"\n"back\\\\slash"\n""\n'
        assert parse(data) == cmds

    def test_empty_input(self):
        assert parse(b"") == []
        assert parse("\n\n# only a comment\n") == []

    def test_line_numbers_skip_comments(self):
        cmds = parse(b"# header\n6\n\nversion\n")
        assert [cmd.line for cmd in cmds] == [2, 4]

    def test_extension_word_in_standard_dialect(self):
        with pytest.raises(UnknownCommand) as info:
            parse(b"6\nversion\nmp\n", Dialect.STANDARD)
        assert info.value.line == 3
        assert parse(b"mp\n", "extended") == [Named("mp")]

    def test_unknown_word(self):
        with pytest.raises(UnknownCommand):
            parse(b"frobnicate\n")

    def test_malformed_lines(self):
        with pytest.raises(ArticleSyntaxError):
            parse(b'"bad\n')
        with pytest.raises(ArticleSyntaxError):
            parse(b'"bad\\n"\n')
        with pytest.raises(ArticleSyntaxError):
            parse(b"1.5\n")

    def test_unknown_dialect(self):
        with pytest.raises(ValueError):
            Dialect.parse("opentheory")


class TestSerialization:
    @pytest.mark.parametrize("name", ENTRY_NAMES)
    def test_round_trip(self, mode, name):
        session = new_session(mode)
        th = corpus_entry(name).build(session)
        dialect = Dialect.EXTENDED if session.ctx.extended else Dialect.STANDARD
        data = format_article(serialize(th, dialect, session.ctx))

        fresh = KernelContext(mode)
        result = replay(parse(data, dialect), fresh)
        assert len(result.exported) == 1
        assert result.assumed == []
        replayed = result.exported[0]
        assert replayed.same_sequent(th)
        assert format_article(serialize(replayed, dialect, fresh)) == data

    def test_minimal_proofs_fit_the_standard_dialect(self):
        session = new_session("minimal")
        th = corpus_entry("conj").build(session)
        data = format_article(serialize(th, Dialect.STANDARD, session.ctx))
        assert b"\nmp\n" not in data
        result = replay(parse(data, Dialect.STANDARD), KernelContext("minimal"))
        assert result.exported[0].same_sequent(th)

    def test_extended_proofs_need_the_extended_dialect(self):
        session = new_session("extended")
        th = corpus_entry("mp").build(session)
        with pytest.raises(DialectTooWeak):
            serialize(th, Dialect.STANDARD, session.ctx)

    def test_extended_articles_are_smaller(self):
        totals = {}
        for mode in ("minimal", "extended"):
            session = new_session(mode)
            totals[mode] = sum(len(serialize(entry.build(session), "extended", session.ctx))
                               for entry in corpus())
        assert totals["extended"] <= totals["minimal"]

    def test_table_keys_in_first_use_order(self):
        session = new_session("extended")
        cmds = serialize(corpus_entry("conj_comm").build(session), "extended", session.ctx)
        keys = [prev.value for prev, cmd in zip(cmds, cmds[1:]) if cmd == Named("def")]
        assert keys == list(range(len(keys)))
        assert cmds[:2] == _header()
        assert cmds[-1] == Named("thm")

    def test_prelude_defines_connectives(self):
        session = new_session("minimal")
        th = corpus_entry("truth").build(session)
        cmds = serialize(th, "standard", session.ctx)
        assert Named("defineConst") in cmds
        assert StrLit("T") in cmds


class TestReplay:
    def test_assume_and_export(self, minimal_ctx):
        cmds = (_header() + _term_cmds(p) + [Named("assume")]
                + _singleton(_term_cmds(p)) + _term_cmds(p) + [Named("thm")])
        result = replay(cmds, minimal_ctx)
        (th,) = result.exported
        assert th.hyps == (p,) and th.concl == p

    def test_sym(self, extended_ctx):
        cmds = _header() + _term_cmds_eq(p, q) + [Named("assume"), Named("sym")]
        cmds += _singleton(_term_cmds_eq(p, q)) + _term_cmds_eq(q, p) + [Named("thm")]
        (th,) = replay(cmds, extended_ctx).exported
        assert th.hyps == (mk_eq(p, q),)
        assert th.concl == mk_eq(q, p)

    def test_table_entries_are_shared(self, minimal_ctx):
        cmds = (_header() + _term_cmds(p) + [IntLit(0), Named("def"), Named("assume")]
                + [IntLit(0), Named("ref"), Named("nil"), Named("cons")]
                + [IntLit(0), Named("remove"), Named("thm")])
        (th,) = replay(cmds, minimal_ctx).exported
        assert th.hyps == (p,) and th.concl == p

    def test_axiom(self, minimal_ctx):
        concl = _term_cmds(p)
        cmds = _header() + _empty_list() + concl + [Named("axiom")]
        cmds += _empty_list() + concl + [Named("thm")]
        result = replay(cmds, minimal_ctx)
        assert len(minimal_ctx.axioms) == 1
        assert len(result.assumed) == 1
        assert result.exported[0].concl == p

    def test_axiom_with_hypotheses(self, minimal_ctx):
        cmds = _header() + _singleton(_term_cmds(q)) + _term_cmds(p) + [Named("axiom")]
        cmds += [Named("pop")]
        result = replay(cmds, minimal_ctx)
        (th,) = result.assumed
        assert th.hyps == (q,) and th.concl == p
        (trusted,) = minimal_ctx.axioms
        assert trusted.same_sequent(th)

    def test_axiom_is_trusted_as_declared(self, minimal_ctx):
        # {p} |- p is a tautology; the context must not come to trust |- p
        cmds = _header() + _singleton(_term_cmds(p)) + _term_cmds(p) + [Named("axiom"), Named("pop")]
        replay(cmds, minimal_ctx)
        assert [(ax.hyps, ax.concl) for ax in minimal_ctx.axioms] == [((p,), p)]

        cmds = _header() + _empty_list() + _term_cmds(p) + [Named("axiom"), Named("pop")]
        replay(cmds, minimal_ctx)
        assert [ax.hyps for ax in minimal_ctx.axioms] == [(p,), ()]

    def test_axiom_with_hypotheses_survives_serialization(self, minimal_ctx):
        cmds = _header() + _singleton(_term_cmds(q)) + _term_cmds(p) + [Named("axiom")]
        cmds += _singleton(_term_cmds(q)) + _term_cmds(p) + [Named("thm")]
        (th,) = replay(cmds, minimal_ctx).exported
        data = format_article(serialize(th, Dialect.STANDARD, minimal_ctx))

        fresh = KernelContext("minimal")
        result = replay(parse(data), fresh)
        assert result.exported[0].same_sequent(th)
        (trusted,) = fresh.axioms
        assert trusted.hyps == (q,) and trusted.concl == p

    def test_export_mismatch(self, minimal_ctx):
        cmds = (_header() + _term_cmds(p) + [Named("assume")]
                + _singleton(_term_cmds(p)) + _term_cmds(q) + [Named("thm")])
        with pytest.raises(ExportMismatch):
            replay(cmds, minimal_ctx)

    def test_stack_underflow(self, minimal_ctx):
        with pytest.raises(StackUnderflow) as info:
            replay(parse(b"6\nversion\nassume\n"), minimal_ctx)
        assert info.value.line == 3

    def test_operand_kind_mismatch(self, minimal_ctx):
        with pytest.raises(OperandKindMismatch) as info:
            replay(parse(b"6\nversion\n1\nassume\n"), minimal_ctx)
        assert info.value.line == 4
        assert "line 4" in str(info.value)

    def test_bad_version(self, minimal_ctx):
        with pytest.raises(ArticleError):
            replay(parse(b"5\nversion\n"), minimal_ctx)

    def test_missing_reference(self, minimal_ctx):
        with pytest.raises(ArticleError):
            replay(parse(b"6\nversion\n3\nref\n"), minimal_ctx)

    def test_extension_command_in_minimal_context(self, minimal_ctx):
        session = new_session("extended")
        th = corpus_entry("mp").build(session)
        data = format_article(serialize(th, "extended", session.ctx))
        with pytest.raises(HolkitError):
            replay(parse(data), minimal_ctx)


def _term_cmds_eq(lhs, rhs):
    """Commands pushing the term ``lhs = rhs`` for boolean variables."""
    bool_ty = _type_cmds("bool")
    bool_bool = [StrLit("->"), Named("typeOp")] + bool_ty + bool_ty + [
        Named("nil"), Named("cons"), Named("cons"), Named("opType")]
    eq_ty = [StrLit("->"), Named("typeOp")] + bool_ty + bool_bool + [
        Named("nil"), Named("cons"), Named("cons"), Named("opType")]
    return ([StrLit("="), Named("const")] + eq_ty + [Named("constTerm")]
            + _term_cmds(lhs) + [Named("appTerm")] + _term_cmds(rhs) + [Named("appTerm")])
