"""Ready-to-use proof sessions: kernel context, connectives and derived rules."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Union

from src.bootstrap.connectives import ConnectiveTable, install_connectives
from src.bootstrap.derived import DerivedRules
from src.bootstrap.legacy import install_extensionality
from src.kernel.context import KernelContext, KernelMode


@dataclass
class Session:
    ctx: KernelContext
    table: ConnectiveTable
    rules: DerivedRules

    @property
    def mode(self) -> KernelMode:
        return self.ctx.mode


def new_session(mode: Union[str, KernelMode], extensionality: bool = False) -> Session:
    """Fresh context for ``mode`` with every connective defined."""
    ctx = KernelContext(mode)
    table = install_connectives(ctx)
    if extensionality:
        install_extensionality(ctx)
    logging.getLogger(__name__).debug(f"New {ctx.mode.value} session")
    return Session(ctx, table, DerivedRules(ctx, table))
