"""Sealed sequents."""

from __future__ import annotations

from typing import Any, Iterable, Sequence, Tuple

from src.hol.terms import TermExpr, alpha_equal, canonical_terms, format_term
from src.kernel.trace import StepTrace

_SEAL = object()


class Theorem:
    """Hypotheses ⊢ conclusion, obtainable only from a KernelContext rule."""

    __slots__ = ("hyps", "concl", "trace")

    def __init__(self, hyps: Tuple[TermExpr, ...], concl: TermExpr, trace: StepTrace, _token: Any = None):
        if _token is not _SEAL:
            raise TypeError("Theorem values can only be produced by kernel rules")
        object.__setattr__(self, "hyps", hyps)
        object.__setattr__(self, "concl", concl)
        object.__setattr__(self, "trace", trace)

    def __setattr__(self, name, value):
        raise AttributeError("Theorem is immutable")

    def __delattr__(self, name):
        raise AttributeError("Theorem is immutable")

    def __repr__(self) -> str:
        return f"Theorem({self})"

    def __str__(self) -> str:
        hyps = ", ".join(format_term(h) for h in self.hyps)
        return f"{hyps} |- {format_term(self.concl)}" if hyps else f"|- {format_term(self.concl)}"

    @property
    def step_count(self) -> int:
        return self.trace.step_count

    def same_sequent(self, other: "Theorem") -> bool:
        """Alpha-equality of hypothesis sets and conclusions."""
        return sequents_alpha_equal(self.hyps, self.concl, other.hyps, other.concl)


def sequents_alpha_equal(hyps1: Sequence[TermExpr], concl1: TermExpr,
                         hyps2: Sequence[TermExpr], concl2: TermExpr) -> bool:
    if not alpha_equal(concl1, concl2):
        return False
    left, right = canonical_terms(hyps1), canonical_terms(hyps2)
    return len(left) == len(right) and all(alpha_equal(a, b) for a, b in zip(left, right))


def make_theorem(hyps: Iterable[TermExpr], concl: TermExpr, rule: str,
                 premises: Sequence[Theorem] = (), payload: Tuple[Any, ...] = ()) -> Theorem:
    """Seal a sequent and record its trace node; for use by KernelContext only."""
    hyps = canonical_terms(hyps)
    trace = StepTrace(rule, tuple(p.trace for p in premises), payload, hyps, concl)
    return Theorem(hyps, concl, trace, _token=_SEAL)


def step_count(th: Theorem) -> int:
    return th.trace.step_count
