"""Tree size and pendant peeling."""

from __future__ import annotations

from ..graph import Graph, bits, check_exhaustive, component_mask, induced_subgraph, is_connected, popcount


def _induces_tree(g: Graph, s: int) -> bool:
    k = popcount(s)
    edges = sum(popcount(g.adj[v] & s) for v in bits(s)) // 2
    if edges != k - 1:
        return False
    low = (s & -s).bit_length() - 1
    return component_mask(g, low, s) == s


def max_induced_tree(g: Graph) -> int:
    """Vertex mask of a largest induced tree (smallest mask among ties)."""
    check_exhaustive(g.n, "tree_size")
    best, best_mask = 0, 0
    for s in range(1, 1 << g.n):
        k = popcount(s)
        if k > best and _induces_tree(g, s):
            best, best_mask = k, s
    return best_mask


def tree_size(g: Graph) -> int:
    """Number of vertices in a maximum induced tree."""
    return popcount(max_induced_tree(g))


def ts_lower_bound(g: Graph) -> int:
    if not is_connected(g):
        raise ValueError("the tree-size bound needs a connected graph")
    return tree_size(g) - 1


def peel_sequence(g: Graph) -> list[tuple[int, int]]:
    """Pendant deletions as (pendant, its neighbour) in original labels.

    Always removes the lowest-indexed pendant first; stops at a single vertex.
    """
    if not is_connected(g):
        raise ValueError("pendant peeling needs a connected graph")
    alive = g.full_mask
    out = []
    while popcount(alive) > 1:
        pend = next((v for v in bits(alive) if popcount(g.adj[v] & alive) == 1), None)
        if pend is None:
            break
        out.append((pend, (g.adj[pend] & alive).bit_length() - 1))
        alive &= ~(1 << pend)
    return out


def peel_pendants(g: Graph) -> tuple[Graph, int]:
    """Delete pendant vertices until none remain; msr(g) = msr(core) + peeled."""
    seq = peel_sequence(g)
    alive = g.full_mask
    for v, _ in seq:
        alive &= ~(1 << v)
    core = induced_subgraph(g, alive)
    return core, len(seq)
