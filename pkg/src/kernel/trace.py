"""Proof traces: one node per primitive inference."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Iterator, Set, Tuple

from src.hol.terms import TermExpr

# rule names recorded in StepTrace.rule
REFL = "refl"
TRANS = "trans"
MK_COMB = "mk_comb"
ABS = "abs"
BETA = "beta"
ASSUME = "assume"
EQ_MP = "eq_mp"
DEDUCT_ANTISYM = "deduct_antisym"
INST = "inst"
INST_TYPE = "inst_type"
MP = "mp"
DISCH = "disch"
GEN = "gen"
SPEC = "spec"
DEFINE_CONST = "define_const"
DEFINE_TYPE_OP = "define_type_op"
AXIOM = "axiom"

PRIMITIVE_RULES = (REFL, TRANS, MK_COMB, ABS, BETA, ASSUME, EQ_MP, DEDUCT_ANTISYM, INST, INST_TYPE)
EXTENDED_RULES = (MP, DISCH, GEN, SPEC)


@dataclass(frozen=True, eq=False)
class StepTrace:
    """A recorded inference together with the sequent it produced.

    ``payload`` holds the non-theorem operands of the rule, e.g. the term of
    ``refl`` or the substitution of ``inst``. Nodes compare by identity.
    """

    rule: str
    premises: Tuple["StepTrace", ...]
    payload: Tuple[Any, ...]
    hyps: Tuple[TermExpr, ...]
    concl: TermExpr
    step_count: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "step_count", 1 + sum(p.step_count for p in self.premises))

    def uses_extended_rules(self) -> bool:
        return any(node.rule in EXTENDED_RULES for node in self.walk())

    def walk(self) -> Iterator["StepTrace"]:
        """Distinct nodes of the trace DAG, premises before conclusions."""
        seen: Set[int] = set()
        stack = [(self, False)]
        while stack:
            node, expanded = stack.pop()
            if id(node) in seen:
                continue
            if expanded:
                seen.add(id(node))
                yield node
                continue
            stack.append((node, True))
            for premise in reversed(node.premises):
                if id(premise) not in seen:
                    stack.append((premise, False))
