"""Randomised exact search for low-dimensional vector representations.

Vertices are assigned one at a time. Each new vector is a random rational
combination of a basis for the orthogonal complement of the vectors already
placed on its non-neighbours, and is rejected if it is zero or orthogonal to
an already placed neighbour. Everything is exact, so a returned certificate
is a proof of msr(g) <= k.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .certkit import Certificate, verify_certificate
from .graph import Graph, is_connected, to_graph6
from .ratlinalg import RationalMatrix, inner, nullspace_basis, primitive

log = logging.getLogger(__name__)

DEFAULT_SEED = 20240601


@dataclass(frozen=True)
class SearchConfig:
    seed: int = DEFAULT_SEED
    restarts: int = 64
    coefficient_pool: tuple[int, ...] = tuple(range(-3, 4))
    # "degree": descending degree on the first restart, shuffled afterwards
    # "given": always 0..n-1; "random": shuffled on every restart
    vertex_order: str = "degree"
    resample_limit: int = 32
    backtrack_limit: int = 8

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")
        if len(set(self.coefficient_pool)) < 2:
            raise ValueError("coefficient pool needs at least two distinct values")
        if self.vertex_order not in ("degree", "given", "random"):
            raise ValueError(f"unknown vertex order {self.vertex_order!r}")


@dataclass(frozen=True)
class VectorRepresentation:
    k: int
    vectors: tuple[tuple[Fraction, ...], ...]

    def check(self, g: Graph) -> bool:
        if len(self.vectors) != g.n:
            return False
        for i, v in enumerate(self.vectors):
            if len(v) != self.k or not any(v):
                return False
            for j in range(i + 1, g.n):
                if (inner(v, self.vectors[j]) != 0) != g.has_edge(i, j):
                    return False
        return True

    def matrix(self) -> RationalMatrix:
        return RationalMatrix.from_columns(self.vectors)


@dataclass
class SearchStats:
    restarts_used: int = 0
    rejections: int = 0
    backtracks: int = 0
    extra: dict = field(default_factory=dict)


def _order(g: Graph, cfg: SearchConfig, restart: int, rng: random.Random) -> list[int]:
    order = list(range(g.n))
    if cfg.vertex_order == "given":
        return order
    if cfg.vertex_order == "degree" and restart == 0:
        return sorted(order, key=lambda v: (-g.degree(v), v))
    rng.shuffle(order)
    return order


def _attempt(g: Graph, k: int, order: Sequence[int], cfg: SearchConfig, rng: random.Random,
             stats: SearchStats) -> Optional[list]:
    vecs: list = [None] * g.n
    pos = 0
    backtracks = 0
    while pos < len(order):
        v = order[pos]
        placed = [u for u in order[:pos]]
        non_nbrs = [vecs[u] for u in placed if not g.has_edge(u, v)]
        nbrs = [vecs[u] for u in placed if g.has_edge(u, v)]
        if non_nbrs:
            basis = nullspace_basis(RationalMatrix.from_rows(non_nbrs))
        else:
            basis = [tuple(Fraction(int(i == j)) for i in range(k)) for j in range(k)]
        cand = None
        if basis:
            for _ in range(cfg.resample_limit):
                coeffs = [rng.choice(cfg.coefficient_pool) for _ in basis]
                x = tuple(sum((c * b[i] for c, b in zip(coeffs, basis)), Fraction(0)) for i in range(k))
                if any(x) and all(inner(x, y) != 0 for y in nbrs):
                    cand = primitive(x)
                    break
                stats.rejections += 1
        if cand is not None:
            vecs[v] = cand
            pos += 1
            continue
        if pos == 0 or backtracks >= cfg.backtrack_limit:
            return None
        backtracks += 1
        stats.backtracks += 1
        pos -= 1
        vecs[order[pos]] = None
    return vecs


def search_representation(g: Graph, k: int, cfg: Optional[SearchConfig] = None,
                          stats: Optional[SearchStats] = None) -> Optional[Certificate]:
    """Look for a k x n certificate for ``g``; None means nothing was found (not a proof)."""
    cfg = cfg or SearchConfig()
    stats = stats if stats is not None else SearchStats()
    if not is_connected(g):
        raise ValueError("search_representation needs a connected graph")
    if not 1 <= k <= g.n:
        raise ValueError(f"rank k={k} must be between 1 and n={g.n}")
    for restart in range(cfg.restarts):
        rng = random.Random(f"{cfg.seed}/{restart}")
        order = _order(g, cfg, restart, rng)
        vecs = _attempt(g, k, order, cfg, rng, stats)
        stats.restarts_used = restart + 1
        if vecs is None:
            continue
        rep = VectorRepresentation(k, tuple(vecs))
        cert = Certificate(label=g.label or to_graph6(g), b=rep.matrix(), claimed_msr=k)
        report = verify_certificate(cert)
        if not report.passed:
            # a full-row-rank check failure means the vectors only span a subspace
            log.debug("restart %d produced a degenerate certificate: %s", restart, report.reasons)
            continue
        log.info("search %s k=%d: found on restart %d (%d rejections, %d backtracks)",
                 to_graph6(g), k, restart, stats.rejections, stats.backtracks)
        return cert
    log.info("search %s k=%d: not found after %d restarts (%d rejections)",
             to_graph6(g), k, cfg.restarts, stats.rejections)
    return None


def upper_bound_scan(g: Graph, cfg: Optional[SearchConfig] = None,
                     floor: int = 1) -> tuple[int, Certificate]:
    """Search from k = n - 1 downwards while successful; stops early at ``floor``.

    Returns the smallest rank found and its certificate.
    """
    cfg = cfg or SearchConfig()
    start = max(g.n - 1, 1)
    best = search_representation(g, start, cfg)
    if best is None:
        best = search_representation(g, g.n, cfg)
        if best is None:
            raise RuntimeError(f"no representation found even at k={g.n}")
    k = best.claimed_msr
    while k - 1 >= max(floor, 1):
        cert = search_representation(g, k - 1, cfg)
        if cert is None:
            break
        best, k = cert, k - 1
    return k, best


def lift_pendants(g: Graph, core_vectors: dict[int, tuple], core_k: int,
                  peeled: Sequence[tuple[int, int]]) -> VectorRepresentation:
    """Re-attach peeled pendants, one new coordinate each.

    ``core_vectors`` maps the original labels of the core vertices to their
    vectors in dimension ``core_k``; ``peeled`` is the deletion order. The new
    coordinate e goes to the pendant as e and is added to its neighbour, which
    changes no other inner product.
    """
    vecs = {v: tuple(Fraction(x) for x in vec) for v, vec in core_vectors.items()}
    k = core_k
    for pend, nbr in reversed(peeled):
        vecs = {v: vec + (Fraction(0),) for v, vec in vecs.items()}
        vecs[nbr] = vecs[nbr][:-1] + (Fraction(1),)
        vecs[pend] = (Fraction(0),) * k + (Fraction(1),)
        k += 1
    return VectorRepresentation(k, tuple(vecs[v] for v in range(g.n)))
