"""Independent replay of refutation traces.

The checker re-derives, from the graph alone, which facts each rule needs and
accepts a step only when those facts are listed and already established on
the current branch. It shares the fact vocabulary with the prover but none of
its search code.
"""

from __future__ import annotations

from typing import Optional

from ..graph import Graph, bits, popcount, to_graph6
from .facts import (DIM_BASE, DIM_MONO, DIM_ORTH, DIM_REVERSE, DIM_WITNESS, ELIMINATE, FLIP, PROPAGATE,
                    SELF_ORTH, SPAN, ZERO_SPAN, DimLB, Member, NonOrth, NonZero, Orth, RefutationTrace, Split,
                    Step, TraceNode)


class TraceError(Exception):
    pass


def _is_axiom(g: Graph, f) -> bool:
    if isinstance(f, Orth):
        return f.j < g.n and not g.has_edge(f.i, f.j)
    if isinstance(f, NonOrth):
        return f.j < g.n and g.has_edge(f.i, f.j)
    if isinstance(f, NonZero):
        return 0 <= f.x < g.n
    return False


class _Replay:
    def __init__(self, g: Graph, k: int):
        self.g, self.k = g, k

    def established(self, f, known: set) -> bool:
        return f in known or _is_axiom(self.g, f)

    def need(self, step_or_split, required: list, known: set) -> None:
        listed = set(step_or_split.premises)
        for f in required:
            if f not in listed:
                raise TraceError(f"{step_or_split.render()}: missing premise {f}")
        for f in listed:
            if not self.established(f, known):
                raise TraceError(f"{step_or_split.render()}: premise {f} not established")

    def dim_of(self, step: Step, s: int) -> int:
        if s == 0:
            return 0
        ds = [p.d for p in step.premises if isinstance(p, DimLB) and p.s == s]
        if not ds:
            raise TraceError(f"{step.render()}: no dimension premise for span{s}")
        return max(ds)

    def step(self, st: Step, known: set) -> None:
        rule, c, a = st.rule, st.conclusion, st.args
        n = self.g.n
        if rule == DIM_BASE:
            (x,) = a
            if c != DimLB(1 << x, 1):
                raise TraceError(f"{st.render()}: bad conclusion")
            self.need(st, [NonZero(x)], known)
        elif rule == DIM_MONO:
            (sub,) = a
            if not isinstance(c, DimLB) or sub & ~c.s:
                raise TraceError(f"{st.render()}: premise set is not a subset")
            self.need(st, [DimLB(sub, c.d)], known)
        elif rule in (DIM_ORTH, DIM_WITNESS, DIM_REVERSE):
            x = a[0]
            if not isinstance(c, DimLB) or not c.s >> x & 1:
                raise TraceError(f"{st.render()}: bad conclusion")
            rest = c.s & ~(1 << x)
            if rule == DIM_ORTH:
                req = [DimLB(rest, c.d - 1), NonZero(x)] + [Orth(x, t) for t in bits(rest)]
            elif rule == DIM_WITNESS:
                w = a[1]
                if (rest | 1 << x) >> w & 1:
                    raise TraceError(f"{st.render()}: witness inside the set")
                req = [DimLB(rest, c.d - 1)] + [Orth(w, t) for t in bits(rest)] + [NonOrth(w, x)]
            else:
                w = a[1]
                if popcount(rest) != 1 or c.d != 2:
                    raise TraceError(f"{st.render()}: reverse witness needs a single base vertex")
                (t,) = bits(rest)
                req = [NonZero(t), NonZero(x), Orth(w, x), NonOrth(w, t)]
            if c.d - 1 < 0 or (rule != DIM_REVERSE and rest == 0):
                raise TraceError(f"{st.render()}: empty base set")
            self.need(st, req, known)
        elif rule == SPAN:
            (w,) = a
            if not isinstance(c, Member) or c.x < 0 or c.x >= n or w >> c.x & 1 or w & c.s:
                raise TraceError(f"{st.render()}: bad membership conclusion")
            req = [Orth(s, u) for s in bits(c.s) for u in bits(w)] + [Orth(c.x, u) for u in bits(w)]
            if self.dim_of(st, c.s) < self.k - self.dim_of(st, w):
                raise TraceError(f"{st.render()}: dimension count does not fill the complement")
            req += [p for p in st.premises if isinstance(p, DimLB)]
            self.need(st, req, known)
        elif rule == ELIMINATE:
            s, t, w = a
            if not isinstance(c, Member) or not s >> t & 1 or c.s != s & ~(1 << t):
                raise TraceError(f"{st.render()}: bad elimination")
            if w == c.x or s >> w & 1:
                raise TraceError(f"{st.render()}: witness overlaps")
            req = [Member(c.x, s)] + [Orth(w, u) for u in bits(c.s)] + [NonOrth(w, t), Orth(w, c.x)]
            self.need(st, req, known)
        elif rule == FLIP:
            x, t = a
            if c != Member(t, 1 << x):
                raise TraceError(f"{st.render()}: bad flip")
            self.need(st, [Member(x, 1 << t), NonZero(x)], known)
        elif rule == PROPAGATE and c is not None:
            x, s, w = a
            if c != Orth(w, x):
                raise TraceError(f"{st.render()}: bad propagation")
            self.need(st, [Member(x, s)] + [Orth(w, u) for u in bits(s)], known)
        else:
            raise TraceError(f"{st.render()}: rule {rule!r} cannot derive a fact")

    def closure(self, st: Step, known: set) -> None:
        if st.conclusion is not None:
            raise TraceError(f"{st.render()}: a closing step must conclude a contradiction")
        a = st.args
        if st.rule == ZERO_SPAN:
            (x,) = a
            req = [Member(x, 0), NonZero(x)]
        elif st.rule == SELF_ORTH:
            x, s = a
            req = [Member(x, s), NonZero(x)] + [Orth(x, t) for t in bits(s)]
        elif st.rule == PROPAGATE:
            x, s, w = a
            if w == x or s >> w & 1:
                raise TraceError(f"{st.render()}: witness overlaps")
            req = [Member(x, s)] + [Orth(w, t) for t in bits(s)] + [NonOrth(w, x)]
        else:
            raise TraceError(f"{st.render()}: rule {st.rule!r} cannot close a branch")
        self.need(st, req, known)

    def split(self, sp: Split, known: set) -> None:
        if sp.members & sp.w:
            raise TraceError(f"{sp.render()}: dependent set meets W")
        req = [Orth(x, u) for x in bits(sp.members) for u in bits(sp.w)]
        dw = 0
        if sp.w:
            dims = [p.d for p in sp.premises if isinstance(p, DimLB) and p.s == sp.w]
            if not dims:
                raise TraceError(f"{sp.render()}: no dimension premise for W")
            dw = max(dims)
            req.append(DimLB(sp.w, dw))
        if popcount(sp.members) < self.k - dw + 1:
            raise TraceError(f"{sp.render()}: set is too small to be forced dependent")
        self.need(sp, req, known)

    def node(self, nd: TraceNode, known: set, expected: Optional[Member]) -> None:
        if nd.assumption != expected:
            raise TraceError(f"branch assumption {nd.assumption} does not match {expected}")
        known = set(known)
        if nd.assumption is not None:
            known.add(nd.assumption)
        for st in nd.steps:
            self.step(st, known)
            known.add(st.conclusion)
        if nd.closure is not None:
            self.closure(nd.closure, known)
            return
        if nd.split is None:
            raise TraceError("open leaf: neither closed nor split")
        self.split(nd.split, known)
        cases = nd.split.branches()
        if len(cases) != len(nd.children):
            raise TraceError(f"{nd.split.render()}: {len(nd.children)} cases for {len(cases)} branches")
        for child, case in zip(nd.children, cases):
            self.node(child, known, case)


def explain_trace(g: Graph, t: RefutationTrace) -> Optional[str]:
    """None if the trace replays cleanly, else the first problem found."""
    if t.hypothesis_k < 1:
        return "hypothesis k must be positive"
    if t.graph6 and t.graph6 != to_graph6(g):
        return "trace was produced for a different graph"
    try:
        _Replay(g, t.hypothesis_k).node(t.root, set(), None)
    except TraceError as exc:
        return str(exc)
    except (TypeError, ValueError) as exc:
        return f"malformed trace: {exc}"
    return None


def check_trace(g: Graph, t: RefutationTrace) -> bool:
    return explain_trace(g, t) is None
