"""Equality reasoning derived from the primitive rules, valid in both modes."""

from __future__ import annotations

from typing import Optional, Tuple

from src.errors import NotAnEquation
from src.hol.terms import Abs, App, Const, TermExpr, Var, dest_eq, is_eq, term_mem
from src.kernel.context import KernelContext
from src.kernel.theorem import Theorem


def dest_thm_eq(th: Theorem) -> Tuple[TermExpr, TermExpr]:
    if not is_eq(th.concl):
        raise NotAnEquation(f"{th.concl} is not an equation")
    return dest_eq(th.concl)


def lhs(th: Theorem) -> TermExpr:
    return dest_thm_eq(th)[0]


def rhs(th: Theorem) -> TermExpr:
    return dest_thm_eq(th)[1]


def ap_term(ctx: KernelContext, f: TermExpr, th: Theorem) -> Theorem:
    """|- x = y  gives  |- f x = f y"""
    return ctx.mk_comb(ctx.refl(f), th)


def ap_thm(ctx: KernelContext, th: Theorem, x: TermExpr) -> Theorem:
    """|- f = g  gives  |- f x = g x"""
    return ctx.mk_comb(th, ctx.refl(x))


def sym(ctx: KernelContext, th: Theorem) -> Theorem:
    """|- l = r  gives  |- r = l"""
    l, _ = dest_thm_eq(th)
    eq_const = th.concl.fun.fun
    lth = ctx.refl(l)
    return ctx.eq_mp(ctx.mk_comb(ap_term(ctx, eq_const, th), lth), lth)


def prove_hyp(ctx: KernelContext, ath: Theorem, bth: Theorem) -> Theorem:
    """Discharge ``concl(ath)`` from the hypotheses of ``bth``; ``bth`` unchanged if absent."""
    if not term_mem(ath.concl, bth.hyps):
        return bth
    return ctx.eq_mp(ctx.deduct_antisym(ath, bth), ath)


def add_assum(ctx: KernelContext, p: TermExpr, th: Theorem) -> Theorem:
    """Weaken ``th`` by the hypothesis ``p``."""
    assumed = ctx.assume(p)
    return ctx.eq_mp(ctx.deduct_antisym(assumed, th), assumed)


def beta_conv(ctx: KernelContext, t: TermExpr) -> Theorem:
    """|- (\\x1 .. xn. b) u1 .. un = b[u1..un/x1..xn] for a head redex chain."""
    if not isinstance(t, App) or isinstance(t.fun, Abs):
        return ctx.beta(t)
    inner = beta_conv(ctx, t.fun)
    th = ap_thm(ctx, inner, t.arg)
    contracted = rhs(th)
    if isinstance(contracted, App) and isinstance(contracted.fun, Abs):
        th = ctx.trans(th, ctx.beta(contracted))
    return th


def depth_beta_conv(ctx: KernelContext, t: TermExpr) -> Optional[Theorem]:
    """|- t = t' with every beta-redex of ``t`` contracted, or None if ``t`` has none."""
    if isinstance(t, (Var, Const)):
        return None
    if isinstance(t, Abs):
        body = depth_beta_conv(ctx, t.body)
        return None if body is None else ctx.abs(t.bound, body)
    fun_th = depth_beta_conv(ctx, t.fun)
    arg_th = depth_beta_conv(ctx, t.arg)
    if fun_th is None and arg_th is None:
        th = None
        current = t
    else:
        th = ctx.mk_comb(fun_th or ctx.refl(t.fun), arg_th or ctx.refl(t.arg))
        current = rhs(th)
    if isinstance(current, App) and isinstance(current.fun, Abs):
        step = ctx.beta(current)
        th = step if th is None else ctx.trans(th, step)
        rest = depth_beta_conv(ctx, rhs(step))
        if rest is not None:
            th = ctx.trans(th, rest)
    return th


def beta_rule(ctx: KernelContext, th: Theorem) -> Theorem:
    conv = depth_beta_conv(ctx, th.concl)
    return th if conv is None else ctx.eq_mp(conv, th)