"""Lower bounds on msr: tree size, pendants, subset dimensions and refutations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..graph import Graph, check_exhaustive, is_connected
from .check import check_trace, explain_trace
from .dimension import DimensionTable, dimension_table, singleton_table, subset_dim_bound
from .facts import DimLB, Member, NonOrth, NonZero, Orth, RefutationTrace, Step, TraceNode
from .refute import RefuteBudget, RefuteResult, refute_rank
from .structural import max_induced_tree, peel_pendants, peel_sequence, tree_size, ts_lower_bound


@dataclass(frozen=True)
class BoundReport:
    tree_size: int
    ts_lower: int
    dp_lower: int
    refuted_up_to: Optional[int]
    best_lower: int
    source: str  # "ts" | "dp" | "refutation"
    dimension: Optional[DimensionTable] = field(default=None, repr=False, compare=False)
    refutations: tuple[RefuteResult, ...] = field(default=(), repr=False, compare=False)

    @property
    def traces(self) -> list[RefutationTrace]:
        return [r.trace for r in self.refutations if r.refuted]


def msr_lower_bound(g: Graph, budget: Optional[RefuteBudget] = None) -> BoundReport:
    """Combine the tree-size bound, the subset DP and refutations above the tree-size bound."""
    if not is_connected(g):
        raise ValueError("msr_lower_bound needs a connected graph")
    check_exhaustive(g.n, "msr_lower_bound")
    ts = tree_size(g)
    ts_lower = ts - 1
    dp, table = subset_dim_bound(g)
    refuted_up_to = None
    results = []
    # Refutations start right above the tree-size bound so that each step past
    # it is backed by a replayable trace; msr(g) <= n - 1 caps the climb.
    k = max(ts_lower, 1)
    while k <= g.n - 2:
        res = refute_rank(g, k, budget, table)
        results.append(res)
        if not res.refuted:
            break
        refuted_up_to = k
        k += 1
    best = max(ts_lower, dp, refuted_up_to + 1 if refuted_up_to is not None else 0)
    if refuted_up_to is not None and refuted_up_to + 1 == best:
        source = "refutation"
    elif dp == best and dp > ts_lower:
        source = "dp"
    else:
        source = "ts"
    return BoundReport(ts, ts_lower, dp, refuted_up_to, best, source, table, tuple(results))


__all__ = [
    "BoundReport", "DimLB", "DimensionTable", "Member", "NonOrth", "NonZero", "Orth", "RefutationTrace",
    "RefuteBudget", "RefuteResult", "Step", "TraceNode", "check_trace", "dimension_table", "explain_trace",
    "max_induced_tree", "msr_lower_bound", "peel_pendants", "peel_sequence", "refute_rank", "singleton_table",
    "subset_dim_bound", "tree_size", "ts_lower_bound",
]
