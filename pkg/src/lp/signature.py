"""Base signatures of the HOL encoding and the signature store used by the checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Set, Tuple

from src.errors import LpError, UnboundName
from src.lp.lpfile import Decl, Def, LpEntry, LpFile, Rewrite, Thm, parse_entries
from src.lp.terms import ConstRef, LpTerm, const_names, strip_app

MINIMAL_HEADER = "holkit base signature: minimal kernel"
EXTENDED_HEADER = "holkit base signature: extended kernel"

_BASE_TEXT = """\
type : TYPE.
bool : type.
ind : type.
arr : type -> type -> type.
term : type -> TYPE.
[a, b] term (arr a b) --> term a -> term b.
eq : a : type -> term a -> term a -> term bool.
proof : term bool -> TYPE.
REFL : a : type -> x : term a -> proof (eq a x x).
TRANS : a : type -> x : term a -> y : term a -> z : term a -> proof (eq a x y) -> proof (eq a y z) -> proof (eq a x z).
MK_COMB : a : type -> b : type -> f : term (arr a b) -> g : term (arr a b) -> x : term a -> y : term a -> proof (eq (arr a b) f g) -> proof (eq a x y) -> proof (eq b (f x) (g y)).
ABS : a : type -> b : type -> f : term (arr a b) -> g : term (arr a b) -> (x : term a -> proof (eq b (f x) (g x))) -> proof (eq (arr a b) f g).
EQ_MP : p : term bool -> q : term bool -> proof (eq bool p q) -> proof p -> proof q.
DEDUCT_ANTISYM : p : term bool -> q : term bool -> (proof q -> proof p) -> (proof p -> proof q) -> proof (eq bool p q).
"""

_EXTENSION_TEXT = """\
imp : term bool -> term bool -> term bool.
forall : a : type -> term (arr a bool) -> term bool.
MP : p : term bool -> q : term bool -> proof (imp p q) -> proof p -> proof q.
DISCH : p : term bool -> q : term bool -> (proof p -> proof q) -> proof (imp p q).
GEN : a : type -> p : (term a -> term bool) -> (x : term a -> proof (p x)) -> proof (forall a (x : term a => p x)).
SPEC : a : type -> p : term (arr a bool) -> u : term a -> proof (forall a p) -> proof (p u).
"""

# LP names of the logical constants that are primitive in the extended kernel
HOL_BUILTINS = {"=": "eq", "==>": "imp", "!": "forall"}


def base_entries(extended: bool) -> List[LpEntry]:
    text = _BASE_TEXT + (_EXTENSION_TEXT if extended else "")
    return parse_entries(text)


def base_file(extended: bool) -> LpFile:
    return LpFile(EXTENDED_HEADER if extended else MINIMAL_HEADER, base_entries(extended))


def reserved_names(extended: bool = True) -> List[str]:
    return [e.name for e in base_entries(extended) if isinstance(e, Decl)]


@dataclass
class RewriteRule:
    variables: Tuple[str, ...]
    lhs: LpTerm
    rhs: LpTerm

    @property
    def head(self) -> str:
        head, _ = strip_app(self.lhs)
        if not isinstance(head, ConstRef):
            raise LpError("rewrite rule left-hand side must start with a constant")
        return head.name


@dataclass
class LpSignature:
    """Declared constants with their types, delta definitions and rewrite rules.

    Entries are only ever added; a name is declared at most once. A constant
    is sealed once an entry other than its own rewrite rules refers to it,
    or when it is a ``def`` or ``thm``; sealed constants take no new rules.
    """

    declarations: Dict[str, LpTerm] = field(default_factory=dict)
    definitions: Dict[str, LpTerm] = field(default_factory=dict)
    rewrites: List[RewriteRule] = field(default_factory=list)
    sealed: Set[str] = field(default_factory=set)

    def __contains__(self, name: str) -> bool:
        return name in self.declarations

    def type_of(self, name: str) -> LpTerm:
        try:
            return self.declarations[name]
        except KeyError:
            raise UnboundName(f"unknown constant {name}") from None

    def definition(self, name: str) -> Optional[LpTerm]:
        return self.definitions.get(name)

    def declare(self, name: str, ty: LpTerm) -> None:
        if name in self.declarations:
            raise LpError(f"{name} is already declared")
        self.declarations[name] = ty

    def define(self, name: str, ty: LpTerm, value: LpTerm) -> None:
        self.declare(name, ty)
        self.definitions[name] = value

    def check_open(self, head: str) -> None:
        if head not in self.declarations:
            raise UnboundName(f"rewrite rule for undeclared constant {head}")
        if head in self.sealed:
            raise LpError(f"{head} is already in use and cannot take new rewrite rules")

    def add_rewrite(self, rule: RewriteRule) -> None:
        head = rule.head
        self.check_open(head)
        self.rewrites.append(rule)
        _, args = strip_app(rule.lhs)
        for arg in args:
            self.sealed |= const_names(arg)
        self.sealed |= const_names(rule.rhs) - {head}

    def rules_for(self, name: str) -> List[RewriteRule]:
        return [rule for rule in self.rewrites if rule.head == name]

    def add_entry(self, entry: LpEntry) -> None:
        """Record ``entry`` without type checking it."""
        if isinstance(entry, Rewrite):
            self.add_rewrite(RewriteRule(entry.variables, entry.lhs, entry.rhs))
            return
        if isinstance(entry, Decl):
            self.declare(entry.name, entry.ty)
        elif isinstance(entry, Def):
            self.define(entry.name, entry.ty, entry.value)
            self.sealed |= {entry.name} | const_names(entry.value)
        elif isinstance(entry, Thm):
            self.declare(entry.name, entry.ty)
            self.sealed |= {entry.name} | const_names(entry.value)
        else:
            return
        self.sealed |= const_names(entry.ty)

    @classmethod
    def from_entries(cls, entries: List[LpEntry]) -> "LpSignature":
        sig = cls()
        for entry in entries:
            sig.add_entry(entry)
        return sig


def base_signature(extended: bool) -> LpSignature:
    return LpSignature.from_entries(base_entries(extended))
