"""Saturation-and-branching prover for "no vector representation in dimension k".

Facts live under the hypothesis that every vertex gets a nonzero vector in a
k-dimensional inner-product space with the graph's orthogonality pattern.
Static facts (orthogonality, dimension bounds, span memberships forced by
dimension counting) are computed once; each branch then saturates span
memberships under propagation, coefficient elimination and degeneracy rules,
and branches on linear dependence when saturation stalls.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional

from ..graph import Graph, bits, check_exhaustive, is_connected, popcount, to_graph6
from .dimension import DimensionTable, dimension_table
from .facts import (ELIMINATE, FLIP, PROPAGATE, SELF_ORTH, SPAN, ZERO_SPAN, DimLB, Fact, Member, NonOrth,
                    NonZero, Orth, RefutationTrace, Split, Step, TraceNode)

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class RefuteBudget:
    max_depth: int = 4
    max_facts: int = 10_000
    max_nodes: int = 50_000

    def __post_init__(self):
        if self.max_depth < 0 or self.max_facts <= 0 or self.max_nodes <= 0:
            raise ValueError("refutation budget must be positive")


@dataclass(frozen=True)
class RefuteResult:
    k: int
    trace: Optional[RefutationTrace]
    nodes: int
    reason: str = ""

    @property
    def refuted(self) -> bool:
        return self.trace is not None

    @property
    def status(self) -> str:
        return "refuted" if self.refuted else "unknown"


class _OutOfBudget(Exception):
    pass


@dataclass
class _State:
    parent: Optional["_State"]
    assumption: Optional[Member]
    known: dict  # Member -> Step, including inherited facts
    index: dict  # x -> list of minimal span masks
    local: dict = field(default_factory=dict)  # Member -> (seq, Step) derived here
    closure: Optional[Step] = None
    split: Optional[Split] = None
    children: list = field(default_factory=list)

    def key(self):
        return frozenset((x, s) for x, masks in self.index.items() for s in masks)


class _Prover:
    def __init__(self, g: Graph, k: int, budget: RefuteBudget, table: DimensionTable):
        self.g, self.k, self.budget, self.table = g, k, budget, table
        self.n = g.n
        self.orth = [g.non_neighbors(v) for v in range(g.n)]
        self.adj = list(g.adj)
        self.seq = 0
        self.nodes = 0
        self.failed: dict = {}
        # common[W] = vertices orthogonal to every vertex of W (outside W)
        full = g.full_mask
        self.common = [full] * (1 << g.n)
        for w in range(1, 1 << g.n):
            low = (w & -w).bit_length() - 1
            self.common[w] = self.common[w & (w - 1)] & self.orth[low]
        self.candidates = self._dependent_sets()

    # -- static facts --------------------------------------------------------
    def _span_facts(self) -> list[Step]:
        """R3: vectors inside the orthogonal complement of W once S fills it."""
        found: dict[tuple[int, int], Step] = {}
        spans: dict[int, list[int]] = {}
        order = sorted(range(1 << self.n), key=lambda w: (popcount(w), w))
        for w in order:
            need = self.k - self.table[w]
            pool = self.common[w] if w else self.g.full_mask
            for x in bits(pool):
                rest_pool = pool & ~(1 << x)
                for s in _subsets_by_size(rest_pool):
                    if self.table[s] < need:
                        continue
                    if any(t & ~s == 0 for t in spans.get(x, ())):
                        continue
                    prem: list[Fact] = [Orth(a, b) for a in bits(s) for b in bits(w)]
                    prem += [Orth(x, b) for b in bits(w)]
                    if s:
                        prem.append(DimLB(s, self.table[s]))
                    if w:
                        prem.append(DimLB(w, self.table[w]))
                    found[(x, s)] = Step(SPAN, Member(x, s), tuple(prem), (w,))
                    spans.setdefault(x, []).append(s)
        # keep only inclusion-minimal spans per vertex
        return [st for (x, s), st in found.items()
                if not any(t != s and t & ~s == 0 for t in spans[x])]

    def _dependent_sets(self) -> list[Split]:
        """R4 candidates: vertex sets too large to be independent inside a complement."""
        best: dict[int, Split] = {}
        order = sorted(range(1 << self.n), key=lambda w: (popcount(w), w))
        for w in order:
            m = self.k - self.table[w] + 1
            if m < 2:
                continue
            pool = self.common[w] if w else self.g.full_mask
            if popcount(pool) < m:
                continue
            for x in _subsets_of_size(pool, m):
                if x in best:
                    continue
                prem: list[Fact] = [Orth(a, b) for a in bits(x) for b in bits(w)]
                if w:
                    prem.append(DimLB(w, self.table[w]))
                best[x] = Split(x, w, tuple(prem))
        return sorted(best.values(), key=lambda sp: (popcount(sp.members), list(bits(sp.members))))

    # -- saturation ----------------------------------------------------------
    def _dominated(self, st: _State, f: Member) -> bool:
        return any(t & ~f.s == 0 for t in st.index.get(f.x, ()))

    def _add(self, st: _State, f: Member, step: Step, queue: list) -> None:
        if self._dominated(st, f):
            return
        self.seq += 1
        st.known[f] = step
        st.local[f] = (self.seq, step)
        masks = [t for t in st.index.get(f.x, []) if f.s & ~t != 0]
        masks.append(f.s)
        st.index[f.x] = masks
        queue.append(f)
        if len(st.known) > self.budget.max_facts:
            raise _OutOfBudget("fact limit reached")

    def _closing(self, f: Member) -> Optional[Step]:
        x, s = f.x, f.s
        if s == 0:
            return Step(ZERO_SPAN, None, (f, NonZero(x)), (x,))
        if s & ~self.orth[x] == 0:
            return Step(SELF_ORTH, None, (f, NonZero(x)) + tuple(Orth(x, t) for t in bits(s)), (x, s))
        for w in range(self.n):
            if w == x or s >> w & 1:
                continue
            if s & ~self.orth[w] == 0 and self.adj[w] >> x & 1:
                prem = (f,) + tuple(Orth(w, t) for t in bits(s)) + (NonOrth(w, x),)
                return Step(PROPAGATE, None, prem, (x, s, w))
        return None

    def _consequences(self, f: Member):
        x, s = f.x, f.s
        for t in bits(s):
            rest = s & ~(1 << t)
            for w in range(self.n):
                if w == x or s >> w & 1:
                    continue
                if rest & ~self.orth[w] == 0 and self.adj[w] >> t & 1 and self.orth[w] >> x & 1:
                    prem = (f,) + tuple(Orth(w, u) for u in bits(rest)) + (NonOrth(w, t), Orth(w, x))
                    yield Member(x, rest), Step(ELIMINATE, Member(x, rest), prem, (s, t, w))
                    break
        if popcount(s) == 1:
            (t,) = bits(s)
            flipped = Member(t, 1 << x)
            yield flipped, Step(FLIP, flipped, (f, NonZero(x)), (x, t))

    def _saturate(self, st: _State, queue: list) -> None:
        while queue:
            f = queue.pop(0)
            close = self._closing(f)
            if close is not None:
                st.closure = close
                return
            for g, step in self._consequences(f):
                self._add(st, g, step, queue)

    def root(self) -> _State:
        st = _State(None, None, {}, {})
        queue: list = []
        for step in self._span_facts():
            self._add(st, step.conclusion, step, queue)
        self._saturate(st, queue)
        return st

    def child(self, parent: _State, assumption: Member) -> _State:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget("node limit reached")
        st = _State(parent, assumption, dict(parent.known), {x: list(v) for x, v in parent.index.items()})
        queue: list = []
        self.seq += 1
        st.known[assumption] = None
        masks = [t for t in st.index.get(assumption.x, []) if assumption.s & ~t != 0]
        st.index[assumption.x] = masks + [assumption.s]
        queue.append(assumption)
        self._saturate(st, queue)
        return st

    # -- search --------------------------------------------------------------
    def search(self, st: _State, depth: int) -> bool:
        if st.closure is not None:
            return True
        if depth == 0:
            return False
        key = st.key()
        if self.failed.get(key, -1) >= depth:
            return False
        for sp in self.candidates:
            branches = sp.branches()
            if any(self._dominated(st, b) for b in branches):
                continue
            kids = []
            for b in branches:
                kid = self.child(st, b)
                if not self.search(kid, depth - 1):
                    break
                kids.append(kid)
            else:
                st.split = sp
                st.children = kids
                return True
        self.failed[key] = depth
        return False


def _subsets_by_size(pool: int):
    members = list(bits(pool))
    for size in range(len(members) + 1):
        yield from _combos(members, size)


def _subsets_of_size(pool: int, size: int):
    yield from _combos(list(bits(pool)), size)


def _combos(members: list[int], size: int):
    from itertools import combinations

    for c in combinations(members, size):
        m = 0
        for v in c:
            m |= 1 << v
        yield m


# -- trace extraction ---------------------------------------------------------

def _axiom(f: Fact) -> bool:
    return isinstance(f, (Orth, NonOrth, NonZero))


def _build(st: _State, table: DimensionTable) -> tuple[TraceNode, set]:
    needed: set = set()
    children = []
    if st.closure is not None:
        needed.update(st.closure.premises)
    else:
        needed.update(st.split.premises)
        for kid in st.children:
            node, up = _build(kid, table)
            children.append(node)
            needed.update(up)
    steps: dict = {}
    dims: list = []
    up: set = set()
    stack = list(needed)
    while stack:
        f = stack.pop()
        if _axiom(f) or f == st.assumption:
            continue
        if isinstance(f, Member) and f in st.local:
            if f not in steps:
                steps[f] = st.local[f]
                stack.extend(st.local[f][1].premises)
        elif isinstance(f, DimLB) and st.parent is None:
            dims.append(f)
        else:
            up.add(f)
    ordered = []
    if dims:
        seen_dim: set = set()
        for f in sorted(dims, key=lambda d: (popcount(d.s), d.s)):
            for step in table.derivation(f.s):
                if step.conclusion not in seen_dim:
                    seen_dim.add(step.conclusion)
                    ordered.append(step)
    ordered += [step for _, step in sorted(steps.values(), key=lambda p: p[0])]
    node = TraceNode(st.assumption, tuple(ordered), st.closure, st.split if st.closure is None else None,
                     tuple(children))
    return node, up


def refute_rank(g: Graph, k: int, budget: Optional[RefuteBudget] = None,
                table: Optional[DimensionTable] = None) -> RefuteResult:
    """Try to prove that ``g`` has no vector representation in dimension ``k``.

    A refuted result carries a trace that :func:`check_trace` can replay; it
    implies msr(g) >= k + 1. ``unknown`` means nothing either way.
    """
    budget = budget or RefuteBudget()
    check_exhaustive(g.n, "refute_rank")
    if k < 1:
        raise ValueError("rank hypothesis k must be at least 1")
    if not is_connected(g):
        raise ValueError("refute_rank needs a connected graph")
    table = table or dimension_table(g)
    prover = _Prover(g, k, budget, table)
    try:
        root = prover.root()
        proved = root.closure is not None
        depth = 0
        while not proved and depth < budget.max_depth:
            depth += 1
            proved = prover.search(root, depth)
    except _OutOfBudget as exc:
        log.info("refute %s k=%d: %s after %d nodes", to_graph6(g), k, exc, prover.nodes)
        return RefuteResult(k, None, prover.nodes, str(exc))
    if not proved:
        return RefuteResult(k, None, prover.nodes, f"no closing branch within depth {budget.max_depth}")
    node, leftover = _build(root, table)
    assert not leftover, leftover
    trace = RefutationTrace(k, node, to_graph6(g), g.label)
    log.debug("refute %s k=%d: refuted with %d nodes", to_graph6(g), k, prover.nodes)
    return RefuteResult(k, trace, prover.nodes)
