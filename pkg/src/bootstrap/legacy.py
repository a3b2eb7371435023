"""Extensionality and the equality-based definitions recovered as theorems."""

from __future__ import annotations

import logging
from typing import Tuple

from src.bootstrap.connectives import FORALL, IMP, TRUE, mk_conj
from src.bootstrap.derived import DerivedRules
from src.errors import MissingAxiom, WrongMode
from src.hol.terms import (Abs, App, Const, TermExpr, Var, alpha_equal, list_mk_abs, mk_eq,
                           mk_imp, type_of)
from src.hol.types import ALPHA, BETA, BOOL, dest_fun_type, mk_fun_type
from src.kernel import conv
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem

logger = logging.getLogger(__name__)

_eta_f = Var("f", mk_fun_type(ALPHA, BETA))
_eta_x = Var("x", ALPHA)

ETA_AXIOM = mk_eq(Abs(_eta_x, App(_eta_f, _eta_x)), _eta_f)


def install_extensionality(ctx: KernelContext) -> Theorem:
    """Add |- (\\x. f x) = f to ``ctx`` unless already present."""
    for th in ctx.axioms:
        if not th.hyps and alpha_equal(th.concl, ETA_AXIOM):
            return th
    return ctx.new_axiom(ETA_AXIOM)


def find_extensionality(ctx: KernelContext) -> Theorem:
    for th in ctx.axioms:
        if not th.hyps and alpha_equal(th.concl, ETA_AXIOM):
            return th
    raise MissingAxiom("the extensionality axiom |- (\\x. f x) = f is not installed")


def _eta_instance(ctx: KernelContext, eta: Theorem, f: TermExpr) -> Theorem:
    """|- (\\x. f x) = f for a concrete function ``f``."""
    dom, cod = dest_fun_type(type_of(f))
    th = ctx.inst_type({ALPHA: dom, BETA: cod}, eta)
    return ctx.inst([(Var("f", type_of(f)), f)], th)


def _ext(ctx: KernelContext, eta: Theorem, f: TermExpr, g: TermExpr, var: Var, th: Theorem) -> Theorem:
    """From |- f v = g v (v not free in f, g or the hypotheses) conclude |- f = g."""
    body = ctx.abs(var, th)
    left = conv.sym(ctx, _eta_instance(ctx, eta, f))
    right = _eta_instance(ctx, eta, g)
    return ctx.trans(ctx.trans(left, body), right)


def prove_legacy_definitions(ctx: KernelContext, rules: DerivedRules) -> Tuple[Theorem, Theorem]:
    """Prove, in the extended kernel, the minimal-mode definitions of ! and ==>.

    Returns ``|- (!) = \\P. P = (\\x. T)`` and ``|- (==>) = \\p q. (p /\\ q) = p``.
    """
    if not ctx.extended:
        raise WrongMode("legacy definitions are proved in the extended kernel only")
    eta = find_extensionality(ctx)
    forall_th = _prove_forall_definition(ctx, rules, eta)
    imp_th = _prove_imp_definition(ctx, rules, eta)
    logger.info(f"Proved legacy definitions in {forall_th.step_count} and {imp_th.step_count} steps")
    return forall_th, imp_th


def _prove_forall_definition(ctx: KernelContext, rules: DerivedRules, eta: Theorem) -> Theorem:
    pred_ty = mk_fun_type(ALPHA, BOOL)
    P = Var("P", pred_ty)
    x = Var("x", ALPHA)
    truth_const = Const(TRUE, BOOL)
    forall_const = Const(FORALL, mk_fun_type(pred_ty, BOOL))
    const_fn = Abs(x, truth_const)
    legacy_rhs = Abs(P, mk_eq(P, const_fn))

    # {!P} |- P = \x. T
    eta_p = _eta_instance(ctx, eta, P)
    as_binder = conv.ap_term(ctx, forall_const, conv.sym(ctx, eta_p))
    spec_th = ctx.spec(x, ctx.eq_mp(as_binder, ctx.assume(App(forall_const, P))))
    pointwise = ctx.abs(x, rules.eqt_intro(spec_th))
    forward = ctx.trans(conv.sym(ctx, eta_p), pointwise)

    # {P = \x. T} |- !P
    all_true = ctx.gen(x, rules.truth())
    rewrite = conv.ap_term(ctx, forall_const, ctx.assume(mk_eq(P, const_fn)))
    backward = ctx.eq_mp(conv.sym(ctx, rewrite), all_true)

    iff = ctx.deduct_antisym(backward, forward)
    pointwise_def = ctx.trans(iff, conv.sym(ctx, ctx.beta(App(legacy_rhs, P))))
    return _ext(ctx, eta, forall_const, legacy_rhs, P, pointwise_def)


def _prove_imp_definition(ctx: KernelContext, rules: DerivedRules, eta: Theorem) -> Theorem:
    p = Var("p", BOOL)
    q = Var("q", BOOL)
    imp_const = Const(IMP, mk_fun_type(BOOL, mk_fun_type(BOOL, BOOL)))
    conj = mk_conj(p, q)
    legacy_rhs = list_mk_abs([p, q], mk_eq(conj, p))

    # {p ==> q} |- (p /\ q) = p
    pq = ctx.assume(p)
    both = rules.conj(pq, ctx.mp(ctx.assume(mk_imp(p, q)), pq))
    forward = ctx.deduct_antisym(both, rules.conjunct1(ctx.assume(conj)))

    # {(p /\ q) = p} |- p ==> q
    from_eq = ctx.eq_mp(conv.sym(ctx, ctx.assume(mk_eq(conj, p))), ctx.assume(p))
    backward = ctx.disch(p, rules.conjunct2(from_eq))

    iff = ctx.deduct_antisym(backward, forward)
    pointwise = ctx.trans(iff, conv.sym(ctx, conv.beta_conv(ctx, App(App(legacy_rhs, p), q))))
    inner = _ext(ctx, eta, App(imp_const, p), App(legacy_rhs, p), q, pointwise)
    return _ext(ctx, eta, imp_const, legacy_rhs, p, inner)
