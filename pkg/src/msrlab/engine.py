"""Combine lower bounds, corpus certificates and search into msr verdicts.

Pendants are peeled first (each one costs exactly one dimension), the core
gets a lower bound from :mod:`msrlab.bounds` and an upper bound from the
corpus or from search, and the core certificate is lifted back to the
original graph.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Optional, Sequence

from .bounds import BoundReport, RefuteBudget, msr_lower_bound, refute_rank, tree_size
from .bounds.structural import peel_sequence
from .certkit import Certificate, CorpusIndex, VerificationReport, verify_certificate
from .graph import Graph, bits, induced_subgraph, is_connected, to_graph6
from .repsearch import SearchConfig, lift_pendants, search_representation, upper_bound_scan

LOWER_BOUND_OPEN = "lower bound open"


@dataclass(frozen=True)
class MsrResult:
    label: str
    graph6: str
    lower: int
    upper: int
    lower_evidence: Optional[BoundReport] = field(repr=False, compare=False)
    upper_evidence: Certificate = field(repr=False, compare=False)
    peeled: int = 0
    lower_source: str = "ts"
    upper_source: str = "search"  # "corpus" | "search" | "trivial"
    paper_claim: Optional[int] = None
    reason: str = ""

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError(f"{self.label}: lower bound {self.lower} exceeds upper bound {self.upper}")

    @property
    def determined(self) -> bool:
        return self.lower == self.upper

    @property
    def status(self) -> str:
        return "determined" if self.determined else "interval"

    @property
    def value(self) -> Optional[int]:
        return self.lower if self.determined else None

    @property
    def agrees_with_paper(self) -> Optional[bool]:
        if self.paper_claim is None:
            return None
        return self.determined and self.value == self.paper_claim

    def describe(self) -> str:
        if self.determined:
            return f"msr = {self.value}"
        return f"{self.lower} <= msr <= {self.upper}"

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "graph6": self.graph6,
            "status": self.status,
            "lower": self.lower,
            "lower_source": self.lower_source,
            "upper": self.upper,
            "upper_source": self.upper_source,
            "peeled": self.peeled,
            "paper_claim": self.paper_claim,
            "agrees_with_paper": self.agrees_with_paper,
            "reason": self.reason,
        }


def _gram_in_pattern(c: Certificate, g: Graph) -> bool:
    # only B matters for an upper bound; the printed A is a separate cross-check
    return c.graph() == g and verify_certificate(replace(c, transcribed_a=None)).passed


def _core_upper(core: Graph, lower: int, cfg: SearchConfig,
                index: Optional[CorpusIndex]) -> tuple[int, Certificate, str]:
    known = index.lookup(core) if index is not None else None
    if known is not None and _gram_in_pattern(known, core):
        k, cert, source = known.claimed_msr, known, "corpus"
        # a corpus certificate can still be beaten by search, down to the lower bound
        while k - 1 >= max(lower, 1):
            better = search_representation(core, k - 1, cfg)
            if better is None:
                break
            k, cert, source = k - 1, better, "search"
        return k, cert, source
    k, cert = upper_bound_scan(core, cfg, floor=max(lower, 1))
    return k, cert, "search"


def determine_msr(g: Graph, budget: Optional[RefuteBudget] = None, cfg: Optional[SearchConfig] = None,
                  corpus_index: Optional[CorpusIndex] = None, label: Optional[str] = None) -> MsrResult:
    if not is_connected(g):
        raise ValueError("determine_msr needs a connected graph")
    if g.n < 2:
        raise ValueError("determine_msr needs at least two vertices")
    cfg = cfg or SearchConfig()
    g6 = to_graph6(g)
    label = label or g.label or g6
    seq = peel_sequence(g)
    alive = g.full_mask
    for pend, _ in seq:
        alive &= ~(1 << pend)
    core_vertices = list(bits(alive))
    core = induced_subgraph(g, alive)
    peeled = len(seq)

    if core.n == 1:
        # the zero 1x1 matrix lies in P(K1), so the peeled-down tree root costs
        # no dimension and each pendant adds exactly one
        report = None
        core_lower = core_upper = 0
        core_cert = None
        source, upper_source = "ts", "trivial"
    else:
        report = msr_lower_bound(core, budget)
        core_lower = report.best_lower
        source = report.source
        core_upper, core_cert, upper_source = _core_upper(core, core_lower, cfg, corpus_index)

    if peeled:
        core_vectors = {v: (core_cert.b.column(i) if core_cert else ()) for i, v in enumerate(core_vertices)}
        rep = lift_pendants(g, core_vectors, core_upper, seq)
        cert = Certificate(label=label, b=rep.matrix(), claimed_msr=rep.k)
        lower, upper = core_lower + peeled, core_upper + peeled
    else:
        cert, lower, upper = core_cert, core_lower, core_upper

    known = corpus_index.lookup(g) if corpus_index is not None else None
    claim = known.claimed_msr if known is not None else None
    if peeled and known is not None and _gram_in_pattern(known, g) and known.claimed_msr < upper:
        cert, upper, upper_source = known, known.claimed_msr, "corpus"

    reason = "" if lower == upper else LOWER_BOUND_OPEN
    return MsrResult(label=label, graph6=g6, lower=lower, upper=upper, lower_evidence=report,
                     upper_evidence=cert, peeled=peeled, lower_source=source, upper_source=upper_source,
                     paper_claim=claim, reason=reason)



# -- corpus report ------------------------------------------------------------

@dataclass(frozen=True)
class ReportRow:
    result: MsrResult
    tree_size: int
    claimed_tree_size: Optional[int]
    certificate_rank: int
    verification: VerificationReport = field(repr=False, compare=False)
    argued: bool = False
    # for rows with a prose lower-bound argument: did refute_rank(g, claim - 1) succeed?
    argued_refutation: Optional[bool] = None

    @property
    def label(self) -> str:
        return self.result.label

    @property
    def tree_size_matches(self) -> Optional[bool]:
        if self.claimed_tree_size is None:
            return None
        return self.tree_size == self.claimed_tree_size

    def to_dict(self) -> dict:
        d = self.result.to_dict()
        d.update({
            "tree_size": self.tree_size,
            "claimed_tree_size": self.claimed_tree_size,
            "certificate_rank": self.certificate_rank,
            "verification": self.verification.verdict,
            "a_crosscheck": self.verification.a_crosscheck,
            "argued": self.argued,
            "argued_refutation": self.argued_refutation,
        })
        return d


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]

    def __len__(self) -> int:
        return len(self.rows)

    def row(self, label: str) -> ReportRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)

    @property
    def all_agree(self) -> bool:
        return all(r.result.agrees_with_paper for r in self.rows)

    def a_mismatches(self) -> list[tuple[str, str]]:
        out = []
        for r in self.rows:
            for m in r.verification.mismatches:
                out.append((r.label, str(m)))
            if not r.verification.passed:
                out.append((r.label, "verification failed: " + "; ".join(r.verification.reasons)))
        return out

    def tree_size_mismatches(self) -> list[ReportRow]:
        return [r for r in self.rows if r.tree_size_matches is False]

    def unclosed(self) -> list[ReportRow]:
        return [r for r in self.rows if not r.result.agrees_with_paper]

    def to_jsonl(self) -> str:
        return "".join(json.dumps(r.to_dict(), sort_keys=False) + "\n" for r in self.rows)

    def to_text(self) -> str:
        head = ("label", "graph6", "ts", "ts_claimed", "lower", "source", "cert_rank", "upper",
                "status", "claimed", "agrees", "argued_refuted")
        table = [head]
        for r in self.rows:
            res = r.result
            table.append((
                res.label, res.graph6, str(r.tree_size), _opt(r.claimed_tree_size), str(res.lower),
                res.lower_source, str(r.certificate_rank), str(res.upper), res.status, _opt(res.paper_claim),
                _opt(res.agrees_with_paper), "-" if r.argued_refutation is None else _opt(r.argued_refutation),
            ))
        widths = [max(len(row[i]) for row in table) for i in range(len(head))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]

        lines += ["", "Discrepancy appendix", "", "Printed A versus B^T B:"]
        lines += [f"  {label}: {what}" for label, what in self.a_mismatches()] or ["  none"]
        lines += ["", "Tree sizes differing from the claimed value:"]
        lines += [f"  {r.label}: claimed {r.claimed_tree_size}, computed {r.tree_size}"
                  for r in self.tree_size_mismatches()] or ["  none"]
        lines += ["", "Claims not closed by the lower-bound engine:"]
        lines += [f"  {r.label}: {r.result.describe()}, claimed {r.result.paper_claim}"
                  + (f" ({r.result.reason})" if r.result.reason else "")
                  for r in self.unclosed()] or ["  none"]
        lines += ["", "Argued lower bounds whose refutation was not reproduced:"]
        lines += [f"  {r.label}: refute_rank at k={r.result.paper_claim - 1} returned unknown"
                  for r in self.rows if r.argued_refutation is False] or ["  none"]
        return "\n".join(lines) + "\n"


def _opt(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    return str(x)


def _row(c: Certificate, index: CorpusIndex, budget: Optional[RefuteBudget], cfg: SearchConfig) -> ReportRow:
    g = c.graph()
    ver = verify_certificate(c)
    res = determine_msr(g, budget, cfg, index, label=c.label)
    if res.paper_claim != c.claimed_msr:
        # two corpus entries share a pattern; keep this entry's own claim
        res = replace(res, paper_claim=c.claimed_msr)
    argued = None
    if c.paper_lower_bound_argued and c.claimed_msr >= 2:
        argued = refute_rank(g, c.claimed_msr - 1, budget).refuted
    return ReportRow(res, tree_size(g), c.claimed_tree_size, ver.rank_found, ver,
                     c.paper_lower_bound_argued, argued)


def thread_count() -> int:
    raw = os.environ.get("MSRLAB_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def batch_report(corpus: Sequence[Certificate], budget: Optional[RefuteBudget] = None,
                 cfg: Optional[SearchConfig] = None) -> Report:
    """One row per corpus entry, in corpus order. MSRLAB_THREADS caps the worker count."""
    cfg = cfg or SearchConfig()
    index = CorpusIndex(list(corpus))
    workers = thread_count()
    if workers == 1 or len(corpus) < 2:
        rows = [_row(c, index, budget, cfg) for c in corpus]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(lambda c: _row(c, index, budget, cfg), corpus))
    return Report(tuple(rows))
