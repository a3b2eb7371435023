"""Exception hierarchy shared by every holkit package."""

from __future__ import annotations

from typing import Optional


class HolkitError(Exception):
    """Base class; ``line`` is filled in when the error comes from a located input."""

    def __init__(self, message: str = "", line: Optional[int] = None):
        super().__init__(message)
        self.message = message
        self.line = line

    def __str__(self) -> str:
        if self.line is not None:
            return f"line {self.line}: {self.message}"
        return self.message


# hol-core

class HolTermError(HolkitError):
    pass


class IllTypedApplication(HolTermError):
    pass


class NotARedex(HolTermError):
    pass


class TypeMismatch(HolTermError):
    pass


# kernel

class KernelError(HolkitError):
    pass


class NotAnEquation(KernelError):
    pass


class MidpointMismatch(KernelError):
    pass


class VarFreeInHyps(KernelError):
    pass


class NotBoolean(KernelError):
    pass


class AntecedentMismatch(KernelError):
    pass


class WrongMode(KernelError):
    pass


class NotAnImplication(KernelError):
    pass


class NotAForall(KernelError):
    pass


class NameClash(KernelError):
    pass


class NotClosed(KernelError):
    pass


class TypeVarEscape(KernelError):
    pass


class NonEmptyHyps(KernelError):
    pass


class MissingAxiom(KernelError):
    pass


class UnknownConstant(KernelError):
    pass


class UnknownTypeOp(KernelError):
    pass


class ArityMismatch(KernelError):
    pass


# bootstrap

class DerivationError(HolkitError):
    """A derived rule was applied to theorems outside its sequent schema."""


# article

class ArticleError(HolkitError):
    pass


class ArticleSyntaxError(ArticleError):
    pass


class UnknownCommand(ArticleError):
    pass


class StackUnderflow(ArticleError):
    pass


class OperandKindMismatch(ArticleError):
    pass


class DialectTooWeak(ArticleError):
    pass


class ExportMismatch(ArticleError):
    pass


# lp

class LpError(HolkitError):
    pass


class UnregisteredConstant(LpError):
    pass


class UnsupportedTraceNode(LpError):
    pass


class LpTypeError(LpError):
    def __init__(self, path: str, expected: str, found: str):
        super().__init__(f"at {path or '<root>'}: expected {expected}, found {found}")
        self.path = path
        self.expected = expected
        self.found = found


class UnboundName(LpError):
    pass


class BudgetExceeded(LpError):
    pass


class LpSyntaxError(LpError):
    pass
