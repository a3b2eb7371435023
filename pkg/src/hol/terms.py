"""Typed lambda-terms: construction, alpha-equivalence and substitution.

Variables are identified by their (name, type) pair, so ``x:bool`` and
``x:ind`` are different variables. Terms are immutable; every operation
here is pure.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import (Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence,
                    Set, Tuple, Union)

from src.errors import IllTypedApplication, NotARedex, TypeMismatch
from src.hol.types import (BOOL, TypeApp, TypeExpr, TypeVar, as_type_map,
                           is_fun_type, mk_fun_type, type_key, type_subst, type_vars)


class _Term:
    """Shared behaviour of the four term constructors."""

    __slots__ = ()

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, eq=True)
class Var(_Term):
    name: str
    ty: TypeExpr
    _hash: int = field(init=False, repr=False, compare=False)
    _fvs: Optional[FrozenSet["Var"]] = field(init=False, default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Var", self.name, self.ty)))

    __hash__ = _Term.__hash__
    __str__ = _Term.__str__


@dataclass(frozen=True, eq=True)
class Const(_Term):
    name: str
    ty: TypeExpr
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("Const", self.name, self.ty)))

    __hash__ = _Term.__hash__
    __str__ = _Term.__str__


@dataclass(frozen=True, eq=True)
class App(_Term):
    fun: "TermExpr"
    arg: "TermExpr"
    _hash: int = field(init=False, repr=False, compare=False)
    _fvs: Optional[FrozenSet[Var]] = field(init=False, default=None, repr=False, compare=False)
    _ty: Optional[TypeExpr] = field(init=False, default=None, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("App", self.fun, self.arg)))

    __hash__ = _Term.__hash__
    __str__ = _Term.__str__


@dataclass(frozen=True, eq=True)
class Abs(_Term):
    bound: Var
    body: "TermExpr"
    _hash: int = field(init=False, repr=False, compare=False)
    _fvs: Optional[FrozenSet[Var]] = field(init=False, default=None, repr=False, compare=False)
    _ty: Optional[TypeExpr] = field(init=False, default=None, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.bound, Var):
            raise TypeError(f"abstraction binder must be a variable, got {self.bound!r}")
        object.__setattr__(self, "_hash", hash(("Abs", self.bound, self.body)))

    __hash__ = _Term.__hash__
    __str__ = _Term.__str__


TermExpr = Union[Var, Const, App, Abs]

# (Var, TermExpr) pairs; replacement has the variable's type, no variable repeated
TermSubstitution = Sequence[Tuple[Var, TermExpr]]


# ---------------------------------------------------------------------------
# Types of terms

def type_of(t: TermExpr) -> TypeExpr:
    if isinstance(t, (Var, Const)):
        return t.ty
    cached = t._ty
    if cached is not None:
        return cached
    if isinstance(t, Abs):
        ty = mk_fun_type(t.bound.ty, type_of(t.body))
    else:
        fun_ty = type_of(t.fun)
        arg_ty = type_of(t.arg)
        if not is_fun_type(fun_ty) or fun_ty.args[0] != arg_ty:
            raise IllTypedApplication(
                f"cannot apply {format_term(t.fun)} : {fun_ty} to {format_term(t.arg)} : {arg_ty}")
        ty = fun_ty.args[1]
    object.__setattr__(t, "_ty", ty)
    return ty


def mk_comb(fun: TermExpr, arg: TermExpr) -> App:
    """Build an application, checking the arrow invariant."""
    fun_ty = type_of(fun)
    if not is_fun_type(fun_ty):
        raise TypeMismatch(f"{format_term(fun)} : {fun_ty} is not a function")
    if fun_ty.args[0] != type_of(arg):
        raise TypeMismatch(
            f"argument {format_term(arg)} : {type_of(arg)} does not fit {format_term(fun)} : {fun_ty}")
    return App(fun, arg)


def list_mk_comb(fun: TermExpr, args: Iterable[TermExpr]) -> TermExpr:
    for arg in args:
        fun = mk_comb(fun, arg)
    return fun


def mk_abs(bound: Var, body: TermExpr) -> Abs:
    return Abs(bound, body)


def list_mk_abs(bounds: Sequence[Var], body: TermExpr) -> TermExpr:
    for bound in reversed(bounds):
        body = Abs(bound, body)
    return body


def strip_comb(t: TermExpr) -> Tuple[TermExpr, List[TermExpr]]:
    args: List[TermExpr] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fun
    args.reverse()
    return t, args


# ---------------------------------------------------------------------------
# Logical syntax helpers; these only build and take apart terms

def mk_eq(lhs: TermExpr, rhs: TermExpr) -> App:
    ty = type_of(lhs)
    if type_of(rhs) != ty:
        raise TypeMismatch(f"equation sides differ in type: {ty} vs {type_of(rhs)}")
    eq = Const("=", mk_fun_type(ty, mk_fun_type(ty, BOOL)))
    return App(App(eq, lhs), rhs)


def is_binary(name: str, t: TermExpr) -> bool:
    return (isinstance(t, App) and isinstance(t.fun, App)
            and isinstance(t.fun.fun, Const) and t.fun.fun.name == name)


def dest_binary(name: str, t: TermExpr) -> Tuple[TermExpr, TermExpr]:
    if not is_binary(name, t):
        raise ValueError(f"not a {name} term: {format_term(t)}")
    return t.fun.arg, t.arg


def is_eq(t: TermExpr) -> bool:
    return is_binary("=", t)


def dest_eq(t: TermExpr) -> Tuple[TermExpr, TermExpr]:
    return dest_binary("=", t)


def mk_imp(ant: TermExpr, con: TermExpr) -> App:
    imp = Const("==>", mk_fun_type(BOOL, mk_fun_type(BOOL, BOOL)))
    return App(App(imp, ant), con)


def is_imp(t: TermExpr) -> bool:
    return is_binary("==>", t)


def dest_imp(t: TermExpr) -> Tuple[TermExpr, TermExpr]:
    return dest_binary("==>", t)


def mk_binder(name: str, bound: Var, body: TermExpr) -> App:
    """``name (\\bound. body)`` for a polymorphic binder constant such as ``!``."""
    pred_ty = mk_fun_type(bound.ty, BOOL)
    return App(Const(name, mk_fun_type(pred_ty, BOOL)), Abs(bound, body))


def is_binder(name: str, t: TermExpr) -> bool:
    return (isinstance(t, App) and isinstance(t.fun, Const) and t.fun.name == name
            and isinstance(t.arg, Abs))


def dest_binder(name: str, t: TermExpr) -> Tuple[Var, TermExpr]:
    if not is_binder(name, t):
        raise ValueError(f"not a {name} binder term: {format_term(t)}")
    return t.arg.bound, t.arg.body


def mk_forall(bound: Var, body: TermExpr) -> App:
    return mk_binder("!", bound, body)


def is_forall(t: TermExpr) -> bool:
    return is_binder("!", t)


def dest_forall(t: TermExpr) -> Tuple[Var, TermExpr]:
    return dest_binder("!", t)


# ---------------------------------------------------------------------------
# Variables

def free_vars(t: TermExpr) -> FrozenSet[Var]:
    if isinstance(t, Const):
        return frozenset()
    cached = t._fvs
    if cached is not None:
        return cached
    if isinstance(t, Var):
        result = frozenset((t,))
    elif isinstance(t, App):
        left, right = free_vars(t.fun), free_vars(t.arg)
        result = left | right if right else left
    else:
        body = free_vars(t.body)
        result = body - {t.bound} if t.bound in body else body
    object.__setattr__(t, "_fvs", result)
    return result


def free_vars_of(terms: Iterable[TermExpr]) -> Set[Var]:
    acc: Set[Var] = set()
    for t in terms:
        acc |= free_vars(t)
    return acc


def is_free_in(v: Var, t: TermExpr) -> bool:
    return v in free_vars(t)


def fresh_variant(avoid: Iterable[Var], v: Var) -> Var:
    """``v`` itself if not in ``avoid``, else ``v`` primed as few times as needed."""
    avoid = avoid if isinstance(avoid, (set, frozenset)) else set(avoid)
    while v in avoid:
        v = Var(v.name + "'", v.ty)
    return v


def term_type_vars(t: TermExpr, acc: Optional[List[TypeVar]] = None) -> List[TypeVar]:
    """Type variables in every annotation of ``t``, first occurrence order."""
    if acc is None:
        acc = []
    stack = [t]
    seen: Set[int] = set()
    while stack:
        node = stack.pop()
        if id(node) in seen:
            continue
        seen.add(id(node))
        if isinstance(node, (Var, Const)):
            type_vars(node.ty, acc)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
        else:
            stack.append(node.body)
            stack.append(node.bound)
    return acc


def term_constants(t: TermExpr, acc: Optional[Dict[str, None]] = None) -> Dict[str, None]:
    """Names of constants occurring in ``t`` (insertion-ordered dict used as a set)."""
    if acc is None:
        acc = {}
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Const):
            acc.setdefault(node.name, None)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
        elif isinstance(node, Abs):
            stack.append(node.body)
    return acc


def term_type_ops(t: TermExpr, acc: Optional[Dict[str, None]] = None) -> Dict[str, None]:
    if acc is None:
        acc = {}

    def visit_type(ty: TypeExpr):
        if isinstance(ty, TypeApp):
            acc.setdefault(ty.op, None)
            for arg in ty.args:
                visit_type(arg)

    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, (Var, Const)):
            visit_type(node.ty)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
        else:
            stack.append(node.body)
            stack.append(node.bound)
    return acc


# ---------------------------------------------------------------------------
# Alpha-equivalence and ordering

def _atom_key(t: Union[Var, Const]) -> tuple:
    return (t.name, type_key(t.ty))


def _compare_keys(a: tuple, b: tuple) -> int:
    return (a > b) - (a < b)


def _order_vars(env: List[Tuple[Var, Var]], x1: Var, x2: Var) -> int:
    for t1, t2 in reversed(env):
        if x1 == t1:
            return 0 if x2 == t2 else -1
        if x2 == t2:
            return 1
    return _compare_keys(_atom_key(x1), _atom_key(x2))


_RANK = {Const: 0, Var: 1, App: 2, Abs: 3}


def _orda(env: List[Tuple[Var, Var]], s: TermExpr, t: TermExpr) -> int:
    if s is t and all(x == y for x, y in env):
        return 0
    if isinstance(s, Var) and isinstance(t, Var):
        return _order_vars(env, s, t)
    if isinstance(s, Const) and isinstance(t, Const):
        return _compare_keys(_atom_key(s), _atom_key(t))
    if isinstance(s, App) and isinstance(t, App):
        c = _orda(env, s.fun, t.fun)
        return c if c != 0 else _orda(env, s.arg, t.arg)
    if isinstance(s, Abs) and isinstance(t, Abs):
        c = _compare_keys(type_key(s.bound.ty), type_key(t.bound.ty))
        if c != 0:
            return c
        env.append((s.bound, t.bound))
        try:
            return _orda(env, s.body, t.body)
        finally:
            env.pop()
    return _compare_keys((_RANK[type(s)],), (_RANK[type(t)],))


def alpha_compare(s: TermExpr, t: TermExpr) -> int:
    """Total order on terms that identifies exactly the alpha-equivalent ones."""
    return _orda([], s, t)


def alpha_equal(s: TermExpr, t: TermExpr) -> bool:
    return s is t or alpha_compare(s, t) == 0


def canonical_terms(terms: Iterable[TermExpr]) -> Tuple[TermExpr, ...]:
    """Alpha-deduplicated terms in canonical order; the first representative is kept."""
    ordered = sorted(terms, key=functools.cmp_to_key(alpha_compare))
    result: List[TermExpr] = []
    for t in ordered:
        if not result or alpha_compare(result[-1], t) != 0:
            result.append(t)
    return tuple(result)


def term_union(left: Sequence[TermExpr], right: Sequence[TermExpr]) -> Tuple[TermExpr, ...]:
    return canonical_terms(list(left) + list(right))


def term_remove(t: TermExpr, terms: Sequence[TermExpr]) -> Tuple[TermExpr, ...]:
    return tuple(h for h in terms if not alpha_equal(h, t))


def term_mem(t: TermExpr, terms: Iterable[TermExpr]) -> bool:
    return any(alpha_equal(t, h) for h in terms)


# ---------------------------------------------------------------------------
# Substitution

def as_term_map(sigma: Union[TermSubstitution, Mapping[Var, TermExpr]]) -> Dict[Var, TermExpr]:
    pairs = sigma.items() if isinstance(sigma, Mapping) else sigma
    result: Dict[Var, TermExpr] = {}
    for var, replacement in pairs:
        if not isinstance(var, Var):
            raise TypeMismatch(f"substitution domain must be variables, got {format_term(var)}")
        if var in result:
            raise TypeMismatch(f"variable {var.name} repeated in substitution")
        if type_of(replacement) != var.ty:
            raise TypeMismatch(
                f"cannot substitute {format_term(replacement)} : {type_of(replacement)} "
                f"for {var.name} : {var.ty}")
        result[var] = replacement
    return {v: r for v, r in result.items() if r != v}


def _vsubst(theta: Dict[Var, TermExpr], t: TermExpr) -> TermExpr:
    if isinstance(t, Var):
        return theta.get(t, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, App):
        fun = _vsubst(theta, t.fun)
        arg = _vsubst(theta, t.arg)
        return t if fun is t.fun and arg is t.arg else App(fun, arg)
    body_free = free_vars(t.body)
    inner = {x: s for x, s in theta.items() if x != t.bound and x in body_free}
    if not inner:
        return t
    body = _vsubst(inner, t.body)
    if any(t.bound in free_vars(s) for s in inner.values()):
        renamed = fresh_variant(free_vars(body), t.bound)
        inner[t.bound] = renamed
        return Abs(renamed, _vsubst(inner, t.body))
    return Abs(t.bound, body)


def subst_term(sigma: Union[TermSubstitution, Mapping[Var, TermExpr]], t: TermExpr) -> TermExpr:
    """Capture-avoiding simultaneous substitution of terms for free variables."""
    theta = as_term_map(sigma)
    if not theta:
        return t
    return _vsubst(theta, t)


class _Clash(Exception):
    def __init__(self, var: Var):
        super().__init__(var.name)
        self.var = var


def _inst(env: List[Tuple[Var, Var]], tyin: Dict[TypeVar, TypeExpr], t: TermExpr) -> TermExpr:
    if isinstance(t, Var):
        new_ty = type_subst(tyin, t.ty)
        new_var = t if new_ty is t.ty else Var(t.name, new_ty)
        for original, instantiated in reversed(env):
            if instantiated == new_var:
                if original != t:
                    raise _Clash(new_var)
                break
        return new_var
    if isinstance(t, Const):
        new_ty = type_subst(tyin, t.ty)
        return t if new_ty is t.ty else Const(t.name, new_ty)
    if isinstance(t, App):
        fun = _inst(env, tyin, t.fun)
        arg = _inst(env, tyin, t.arg)
        return t if fun is t.fun and arg is t.arg else App(fun, arg)
    bound = _inst([], tyin, t.bound)
    env.append((t.bound, bound))
    try:
        body = _inst(env, tyin, t.body)
    except _Clash as clash:
        if clash.var != bound:
            raise
        env.pop()
        frees = {_inst([], tyin, v) for v in free_vars(t.body)}
        fresh = fresh_variant(frees, bound)
        renamed = Var(fresh.name, t.bound.ty)
        return _inst(env, tyin, Abs(renamed, subst_term([(t.bound, renamed)], t.body)))
    env.pop()
    return t if bound is t.bound and body is t.body else Abs(bound, body)


def subst_type(theta, t: TermExpr) -> TermExpr:
    """Instantiate type variables throughout ``t``, renaming binders that would capture."""
    tymap = as_type_map(theta)
    if not tymap:
        return t
    return _inst([], tymap, t)


def beta_contract(t: TermExpr) -> TermExpr:
    if not (isinstance(t, App) and isinstance(t.fun, Abs)):
        raise NotARedex(f"not a beta-redex: {format_term(t)}")
    return subst_term([(t.fun.bound, t.arg)], t.fun.body)


# ---------------------------------------------------------------------------
# Printing (diagnostics only)

_INFIX = {"=": "=", "==>": "==>", "/\\": "/\\", "\\/": "\\/"}
_BINDERS = {"!", "?"}


def _is_atomic(t: TermExpr) -> bool:
    return isinstance(t, (Var, Const))


def format_term(t: TermExpr) -> str:
    if isinstance(t, (Var, Const)):
        return t.name
    if isinstance(t, Abs):
        return f"\\{t.bound.name}. {format_term(t.body)}"
    head, args = strip_comb(t)
    if isinstance(head, Const):
        if head.name in _INFIX and len(args) == 2:
            return f"{_wrap(args[0])} {_INFIX[head.name]} {_wrap(args[1])}"
        if head.name in _BINDERS and len(args) == 1 and isinstance(args[0], Abs):
            return f"{head.name}{args[0].bound.name}. {format_term(args[0].body)}"
        if head.name == "~" and len(args) == 1:
            return f"~{_wrap(args[0])}"
    return " ".join(_wrap(part) for part in [head] + args)


def _wrap(t: TermExpr) -> str:
    return format_term(t) if _is_atomic(t) else f"({format_term(t)})"
