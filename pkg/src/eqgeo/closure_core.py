"""Kernel selection and shared plumbing for subgroup-closure searches.

The compiled Cython kernel is preferred when its extension module imported
successfully; the pure-Python kernel is the fallback and can be forced with
EQGEO_PURE_PYTHON=1.  Both implement the same contract and are compared
state-for-state in the test suite.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Optional, Sequence

from . import _closure_py
from .errors import BudgetExceeded

try:  # pragma: no cover - depends on the build environment
    from . import _closure_cy
except ImportError:  # pragma: no cover
    _closure_cy = None

DEFAULT_BUDGET = 10**6


def active_kernel_name() -> str:
    if os.environ.get("EQGEO_PURE_PYTHON") == "1" or _closure_cy is None:
        return "python"
    return "compiled"


def get_kernel(name: Optional[str] = None):
    """Kernel module by name; None picks the active one."""
    if name is None:
        name = active_kernel_name()
    if name == "compiled":
        if _closure_cy is None:
            raise RuntimeError("compiled kernel is not available")
        return _closure_cy
    if name == "python":
        return _closure_py
    raise ValueError(f"unknown kernel {name!r}")


def default_budget() -> int:
    raw = os.environ.get("EQGEO_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return DEFAULT_BUDGET


@dataclass
class Closure:
    """Result of one closure search: states in BFS order plus the
    predecessor data needed to rewrite any state as a product of moves."""

    states: list
    parent: list
    via: list

    def __len__(self) -> int:
        return len(self.states)

    def move_path(self, state_index: int) -> list[int]:
        """Move indices whose product (left to right) reaches the state."""
        path = []
        i = state_index
        while self.parent[i] != -1:
            path.append(self.via[i])
            i = self.parent[i]
        path.reverse()
        return path


def run_closure(
    table,
    moves: Sequence[Sequence[int]],
    ncols: int,
    budget: Optional[int] = None,
    context: str = "",
) -> Closure:
    """Closure of the subgroup generated by ``moves`` inside the direct power
    of the group with Cayley table ``table``.  Raises BudgetExceeded rather
    than returning a truncated result."""
    if budget is None:
        budget = default_budget()
    if not moves:
        return Closure([(0,) * ncols], [-1], [-1])
    kernel = get_kernel()
    if kernel is _closure_py:
        table_seq = table.tolist() if hasattr(table, "tolist") else table
        moves_seq = [list(m) for m in moves]
        states, parent, via, complete = kernel.subgroup_closure(
            table_seq, moves_seq, budget
        )
    else:
        import numpy as np

        moves_arr = np.ascontiguousarray(moves, dtype=np.int32)
        states, parent, via, complete = kernel.subgroup_closure(
            table, moves_arr, budget
        )
    if not complete:
        raise BudgetExceeded(budget, context)
    return Closure(states, parent, via)
