"""Simple undirected graphs on at most 32 vertices, stored as adjacency bitmasks.

Vertices are 0-based internally. Anything printed for people uses v1..vn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

MAX_VERTICES = 32
EXHAUSTIVE_LIMIT = 16


class Graph6Error(ValueError):
    """Base class for graph6 decoding failures."""


class Graph6HeaderError(Graph6Error):
    pass


class Graph6TruncatedError(Graph6Error):
    pass


class Graph6TrailingDataError(Graph6Error):
    pass


class SizeGateError(ValueError):
    """Raised when a subset-exhaustive routine is asked to handle too many vertices."""


def check_exhaustive(n: int, what: str = "operation") -> None:
    if n > EXHAUSTIVE_LIMIT:
        raise SizeGateError(f"{what} enumerates all vertex subsets; n={n} exceeds limit {EXHAUSTIVE_LIMIT}")


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def fmt_vertices(mask: int) -> str:
    """Render a vertex set in 1-based notation, e.g. ``{v1,v3}``."""
    return "{" + ",".join(f"v{i + 1}" for i in bits(mask)) + "}"


@dataclass(frozen=True)
class Graph:
    n: int
    adj: tuple[int, ...]
    label: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in 1..{MAX_VERTICES}, got {self.n}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency list length must equal n")
        full = (1 << self.n) - 1
        for i, row in enumerate(self.adj):
            if row & ~full:
                raise ValueError(f"vertex {i} has a neighbour outside 0..{self.n - 1}")
            if row >> i & 1:
                raise ValueError(f"self-loop at vertex {i}")
            for j in bits(row):
                if not self.adj[j] >> i & 1:
                    raise ValueError(f"adjacency is not symmetric at ({i}, {j})")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], label: Optional[str] = None) -> "Graph":
        adj = [0] * n
        for i, j in edges:
            if i == j:
                raise ValueError(f"self-loop at vertex {i}")
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return cls(n, tuple(adj), label)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self.adj[i] >> j & 1)

    def neighbors(self, v: int) -> int:
        return self.adj[v]

    def non_neighbors(self, v: int) -> int:
        """Vertices other than ``v`` that are not adjacent to it."""
        return self.full_mask & ~self.adj[v] & ~(1 << v)

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.adj[i]) if i < j]

    def edge_count(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def with_label(self, label: Optional[str]) -> "Graph":
        return Graph(self.n, self.adj, label)

    def __str__(self) -> str:
        name = self.label or to_graph6(self)
        return f"{name} (n={self.n}, edges={self.edge_count()})"


# -- graph6 -------------------------------------------------------------------

def to_graph6(g: Graph) -> str:
    out = [chr(g.n + 63)]
    acc = 0
    nbits = 0
    for j in range(1, g.n):
        for i in range(j):
            acc = (acc << 1) | (g.adj[i] >> j & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def parse_graph6(text: str, label: Optional[str] = None) -> Graph:
    """Decode a short-form graph6 string (n <= 32).

    >>> parse_graph6("Bg").edges()
    [(0, 1), (1, 2)]
    """
    s = text.strip("\r\n")
    if not s:
        raise Graph6HeaderError("empty graph6 string")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    head = ord(s[0])
    if head == 126:
        raise Graph6HeaderError("long-form graph6 (n >= 63) is not supported")
    n = head - 63
    if not 1 <= n <= MAX_VERTICES:
        raise Graph6HeaderError(f"header byte {s[0]!r} encodes n={n}, expected 1..{MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = s[1:]
    for pos, ch in enumerate(body):
        if not 63 <= ord(ch) <= 126:
            raise Graph6TrailingDataError(f"invalid graph6 byte {ch!r} at position {pos + 1}")
    if len(body) < nbytes:
        raise Graph6TruncatedError(f"expected {nbytes} edge bytes for n={n}, got {len(body)}")
    if len(body) > nbytes:
        raise Graph6TrailingDataError(f"{len(body) - nbytes} unexpected byte(s) after edge data")
    stream = 0
    for ch in body:
        stream = (stream << 6) | (ord(ch) - 63)
    total = 6 * nbytes
    if stream & ((1 << (total - nbits)) - 1):
        raise Graph6TrailingDataError("non-zero padding bits after edge data")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if stream >> (total - 1 - k) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj), label)


# -- structure ----------------------------------------------------------------

def induced_subgraph(g: Graph, s: int | Iterable[int]) -> Graph:
    """Subgraph induced by vertex set ``s``, relabelled by increasing original index."""
    mask = s if isinstance(s, int) else mask_of(s)
    if mask & ~g.full_mask:
        raise ValueError("vertex set contains vertices outside the graph")
    keep = list(bits(mask))
    if not keep:
        raise ValueError("cannot induce a subgraph on an empty vertex set")
    pos = {v: i for i, v in enumerate(keep)}
    adj = tuple(mask_of(pos[u] for u in bits(g.adj[v] & mask)) for v in keep)
    return Graph(len(keep), adj)


def component_mask(g: Graph, start: int, within: Optional[int] = None) -> int:
    """Vertices reachable from ``start`` inside the vertex set ``within``."""
    allowed = g.full_mask if within is None else within
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in bits(frontier):
            nxt |= g.adj[v]
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_connected(g: Graph) -> bool:
    return component_mask(g, 0) == g.full_mask


def is_tree(g: Graph) -> bool:
    return g.edge_count() == g.n - 1 and is_connected(g)


def pendant_vertices(g: Graph) -> int:
    """Bitmask of the degree-1 vertices."""
    return mask_of(v for v in range(g.n) if g.degree(v) == 1)


def from_pattern(a, label: Optional[str] = None) -> Graph:
    """Graph whose edges are the non-zero off-diagonal entries of a symmetric matrix."""
    if a.rows != a.cols:
        raise ValueError(f"pattern matrix must be square, got {a.rows}x{a.cols}")
    if not a.is_symmetric():
        raise ValueError("pattern matrix must be symmetric")
    n = a.rows
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if a[i, j] != 0), label)


# -- small families used in tests and the CLI ---------------------------------

def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)), f"K{n}")


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)), f"P{n}")


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], f"C{n}")


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, ((0, i) for i in range(1, leaves + 1)), f"K1,{leaves}")


def empty_graph(n: int) -> Graph:
    return Graph(n, (0,) * n)
