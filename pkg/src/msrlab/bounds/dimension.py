"""Subset dynamic program: lower bounds on dim span{v_s : s in S} for every vertex set S.

Each bound holds for every vector representation of the graph, over any field
with a positive-definite inner product. Starting from single nonzero vectors,
the set S + x gains a dimension over S when x provably leaves span(S):

(i)   x is orthogonal to every vertex of S;
(ii)  some witness w outside S + x is orthogonal to all of S but not to x;
(iii) S = {s} and some w is orthogonal to x but not to s.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from ..graph import Graph, bits, check_exhaustive, fmt_vertices
from .facts import (DIM_BASE, DIM_MONO, DIM_ORTH, DIM_REVERSE, DIM_WITNESS, DimLB, NonOrth, NonZero, Orth,
                    Step)


@dataclass(frozen=True)
class DimensionTable:
    graph: Graph
    bound: tuple[int, ...]
    # per subset: (rule, added vertex, witness) or None for the empty set
    how: tuple[tuple[str, int, int] | None, ...]

    @property
    def best(self) -> int:
        return max(self.bound)

    @cached_property
    def best_set(self) -> int:
        top = self.best
        return min((s for s, d in enumerate(self.bound) if d == top), key=lambda s: (bin(s).count("1"), s))

    def __getitem__(self, s: int) -> int:
        return self.bound[s]

    def derivation(self, s: int) -> list[Step]:
        """Steps proving DimLB(s, bound[s]), in dependency order."""
        out: list[Step] = []
        seen: set[int] = set()
        self._derive(s, out, seen)
        return out

    def _derive(self, s: int, out: list[Step], seen: set[int]) -> None:
        if s in seen or s == 0:
            return
        seen.add(s)
        rule, x, w = self.how[s]
        rest = s & ~(1 << x)
        d = self.bound[s]
        if rule == DIM_BASE:
            out.append(Step(DIM_BASE, DimLB(s, 1), (NonZero(x),), (x,)))
            return
        if rule != DIM_REVERSE:  # the reverse rule only needs the two vectors to be nonzero
            self._derive(rest, out, seen)
        base = DimLB(rest, self.bound[rest])
        if rule == DIM_MONO:
            out.append(Step(DIM_MONO, DimLB(s, d), (base,), (rest,)))
        elif rule == DIM_ORTH:
            prem = (base, NonZero(x)) + tuple(Orth(x, t) for t in bits(rest))
            out.append(Step(DIM_ORTH, DimLB(s, d), prem, (x,)))
        elif rule == DIM_WITNESS:
            prem = (base,) + tuple(Orth(w, t) for t in bits(rest)) + (NonOrth(w, x),)
            out.append(Step(DIM_WITNESS, DimLB(s, d), prem, (x, w)))
        elif rule == DIM_REVERSE:
            (t,) = bits(rest)
            prem = (NonZero(t), NonZero(x), Orth(w, x), NonOrth(w, t))
            out.append(Step(DIM_REVERSE, DimLB(s, d), prem, (x, w)))
        else:  # pragma: no cover
            raise AssertionError(rule)

    def chain(self) -> str:
        """Human-readable derivation of the best bound."""
        return "\n".join(st.render() for st in self.derivation(self.best_set))


def _extension(g: Graph, orth: list[int], rest: int, x: int) -> tuple[str, int] | None:
    if rest & ~orth[x] == 0:
        return DIM_ORTH, -1
    for w in range(g.n):
        if (rest | 1 << x) >> w & 1:
            continue
        if rest & ~orth[w] == 0 and g.has_edge(w, x):
            return DIM_WITNESS, w
    if bin(rest).count("1") == 1:
        (s,) = bits(rest)
        for w in range(g.n):
            if orth[w] >> x & 1 and g.has_edge(w, s):
                return DIM_REVERSE, w
    return None


def dimension_table(g: Graph) -> DimensionTable:
    check_exhaustive(g.n, "subset_dim_bound")
    size = 1 << g.n
    bound = [0] * size
    how: list = [None] * size
    orth = [g.non_neighbors(v) for v in range(g.n)]
    for s in range(1, size):
        best = -1
        pick = None
        for x in bits(s):
            rest = s & ~(1 << x)
            if rest == 0:
                cand, rule = 1, (DIM_BASE, x, -1)
            else:
                ext = _extension(g, orth, rest, x)
                if ext is None:
                    cand, rule = bound[rest], (DIM_MONO, x, -1)
                else:
                    cand, rule = bound[rest] + 1, (ext[0], x, ext[1])
            if cand > best:
                best, pick = cand, rule
        bound[s] = best
        how[s] = pick
    return DimensionTable(g, tuple(bound), tuple(how))


def singleton_table(g: Graph) -> DimensionTable:
    """Only the trivial bounds: every nonempty set spans at least one dimension."""
    check_exhaustive(g.n, "singleton_table")
    size = 1 << g.n
    bound = [0] + [1] * (size - 1)
    how: list = [None] * size
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        how[s] = (DIM_BASE, low, -1) if s == 1 << low else (DIM_MONO, (s & ~(1 << low)).bit_length() - 1, -1)
    return DimensionTable(g, tuple(bound), tuple(how))


def subset_dim_bound(g: Graph) -> tuple[int, DimensionTable]:
    """Largest provable dimension of any vertex subset's span; a lower bound on msr(g)."""
    table = dimension_table(g)
    return table.best, table


def describe_best(table: DimensionTable) -> str:
    return f"dim span{fmt_vertices(table.best_set)} ≥ {table.best}"
