"""Polymorphic simple types: type variables and applied type operators."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union


@dataclass(frozen=True)
class TypeVar:
    name: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash(("TypeVar", self.name)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class TypeApp:
    op: str
    args: Tuple["TypeExpr", ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "args", tuple(self.args))
        object.__setattr__(self, "_hash", hash(("TypeApp", self.op, self.args)))

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        if self.op == "->" and len(self.args) == 2:
            dom, cod = self.args
            left = f"({dom})" if is_fun_type(dom) else str(dom)
            return f"{left} -> {cod}"
        if not self.args:
            return self.op
        return f"{self.op}({', '.join(str(a) for a in self.args)})"


TypeExpr = Union[TypeVar, TypeApp]

# (TypeVar, TypeExpr) pairs; no type variable repeated
TypeSubstitution = Sequence[Tuple[TypeVar, TypeExpr]]

BOOL = TypeApp("bool")
IND = TypeApp("ind")
ALPHA = TypeVar("A")
BETA = TypeVar("B")


def mk_fun_type(dom: TypeExpr, cod: TypeExpr) -> TypeApp:
    return TypeApp("->", (dom, cod))


def mk_fun_types(args: Sequence[TypeExpr], result: TypeExpr) -> TypeExpr:
    """Curried function type ``a1 -> ... -> an -> result``."""
    for arg in reversed(args):
        result = mk_fun_type(arg, result)
    return result


def is_fun_type(ty: TypeExpr) -> bool:
    return isinstance(ty, TypeApp) and ty.op == "->" and len(ty.args) == 2


def dest_fun_type(ty: TypeExpr) -> Tuple[TypeExpr, TypeExpr]:
    if not is_fun_type(ty):
        raise ValueError(f"not a function type: {ty}")
    return ty.args[0], ty.args[1]


def type_vars(ty: TypeExpr, acc: Optional[List[TypeVar]] = None) -> List[TypeVar]:
    """Type variables of ``ty`` in first-occurrence order."""
    if acc is None:
        acc = []
    if isinstance(ty, TypeVar):
        if ty not in acc:
            acc.append(ty)
    else:
        for arg in ty.args:
            type_vars(arg, acc)
    return acc


def type_subst(theta: Mapping[TypeVar, TypeExpr], ty: TypeExpr) -> TypeExpr:
    """Simultaneous substitution of type variables; returns ``ty`` itself when unchanged."""
    if not theta:
        return ty
    if isinstance(ty, TypeVar):
        return theta.get(ty, ty)
    new_args = tuple(type_subst(theta, arg) for arg in ty.args)
    if all(new is old for new, old in zip(new_args, ty.args)):
        return ty
    return TypeApp(ty.op, new_args)


def type_match(pattern: TypeExpr, ty: TypeExpr,
               env: Optional[Dict[TypeVar, TypeExpr]] = None) -> Optional[Dict[TypeVar, TypeExpr]]:
    """Find theta with ``type_subst(theta, pattern) == ty``, or None."""
    if env is None:
        env = {}
    if isinstance(pattern, TypeVar):
        bound = env.get(pattern)
        if bound is None:
            env[pattern] = ty
            return env
        return env if bound == ty else None
    if not isinstance(ty, TypeApp) or ty.op != pattern.op or len(ty.args) != len(pattern.args):
        return None
    for p_arg, t_arg in zip(pattern.args, ty.args):
        if type_match(p_arg, t_arg, env) is None:
            return None
    return env


def as_type_map(theta: Union[TypeSubstitution, Mapping[TypeVar, TypeExpr]]) -> Dict[TypeVar, TypeExpr]:
    """Normalise a type substitution to a dict, rejecting repeated variables."""
    if isinstance(theta, Mapping):
        return dict(theta)
    result: Dict[TypeVar, TypeExpr] = {}
    for tyvar, ty in theta:
        if not isinstance(tyvar, TypeVar):
            raise ValueError(f"type substitution domain must be type variables, got {tyvar}")
        if tyvar in result:
            raise ValueError(f"type variable {tyvar} repeated in substitution")
        if ty != tyvar:
            result[tyvar] = ty
    return result


def type_key(ty: TypeExpr) -> tuple:
    """Total structural ordering key for types."""
    if isinstance(ty, TypeVar):
        return (0, ty.name)
    return (1, ty.op, tuple(type_key(arg) for arg in ty.args))


def all_type_vars(types: Iterable[TypeExpr]) -> List[TypeVar]:
    acc: List[TypeVar] = []
    for ty in types:
        type_vars(ty, acc)
    return acc
