"""Command-line interface: ``msrlab <command> ...``.

Exit codes: 0 when the command's predicate held for every input, 1 when it
did not (a certificate failed, a refutation came back unknown, msr stayed an
interval), 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import RefuteBudget, msr_lower_bound, refute_rank, singleton_table
from .bounds.dimension import describe_best
from .certkit import (CertificateFormatError, CorpusIndex, DuplicateLabelError, load_corpus, read_certificate,
                      serialize_certificate, verify_certificate)
from .engine import batch_report, determine_msr
from .graph import Graph, Graph6Error, SizeGateError, is_connected, parse_graph6
from .repsearch import DEFAULT_SEED, SearchConfig, search_representation


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _graph(text: str, label: Optional[str]) -> Graph:
    try:
        g = parse_graph6(text, label)
    except Graph6Error as exc:
        raise UsageError(f"malformed graph6 {text!r}: {exc}") from None
    if not is_connected(g):
        raise UsageError(f"graph {text!r} is disconnected")
    return g


def _emit(args, fields: dict) -> None:
    if args.json:
        print(json.dumps(fields))
    else:
        for k, v in fields.items():
            print(f"{k}: {v}")


def _budget(args) -> RefuteBudget:
    return RefuteBudget(max_depth=args.max_depth, max_facts=args.max_facts)


def _config(args) -> SearchConfig:
    return SearchConfig(seed=args.seed, restarts=args.restarts)


def cmd_verify(args) -> int:
    path = Path(args.path)
    try:
        certs = load_corpus(path) if path.is_dir() else [read_certificate(path)]
    except FileNotFoundError:
        raise UsageError(f"no such file or directory: {path}") from None
    ok = True
    for c in certs:
        rep = verify_certificate(c)
        ok &= rep.passed
        if args.json:
            print(json.dumps({
                "label": rep.label, "verdict": rep.verdict, "rank": rep.rank_found, "pattern_ok": rep.pattern_ok,
                "psd_ok": rep.psd_ok, "a_crosscheck": rep.a_crosscheck, "graph6": rep.graph6,
                "mismatches": [str(m) for m in rep.mismatches], "reasons": list(rep.reasons),
            }))
        else:
            print(rep.summary())
    return 0 if ok else 1


def cmd_bounds(args) -> int:
    g = _graph(args.graph6, args.label)
    rep = msr_lower_bound(g, _budget(args))
    _emit(args, {
        "graph6": args.graph6,
        "n": g.n,
        "tree_size": rep.tree_size,
        "ts_lower": rep.ts_lower,
        "dp_lower": rep.dp_lower,
        "refuted_up_to": rep.refuted_up_to,
        "best_lower": rep.best_lower,
        "source": rep.source,
        "dp_witness": describe_best(rep.dimension),
    })
    return 0


def cmd_refute(args) -> int:
    g = _graph(args.graph6, args.label)
    table = singleton_table(g) if args.singletons else None
    res = refute_rank(g, args.rank, _budget(args), table)
    if args.json:
        print(json.dumps({"graph6": args.graph6, "rank": args.rank, "status": res.status,
                          "nodes": res.nodes, "reason": res.reason,
                          "trace": res.trace.to_text() if res.trace else None}))
    else:
        print(f"status: {res.status}")
        print(f"rank: {args.rank}")
        print(f"nodes: {res.nodes}")
        if res.reason:
            print(f"reason: {res.reason}")
        if res.trace:
            print(res.trace.to_text(), end="" if res.trace.to_text().endswith("\n") else "\n")
    return 0 if res.refuted else 1


def cmd_search(args) -> int:
    g = _graph(args.graph6, args.label)
    if not 1 <= args.rank <= g.n:
        raise UsageError(f"--rank must be between 1 and {g.n}")
    cert = search_representation(g, args.rank, _config(args))
    if cert is None:
        if args.json:
            print(json.dumps({"graph6": args.graph6, "rank": args.rank, "status": "not found"}))
        else:
            print("status: not found")
        return 1
    text = serialize_certificate(cert)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    if args.json:
        print(json.dumps({"graph6": args.graph6, "rank": args.rank, "status": "found", "certificate": text}))
    else:
        print(text, end="")
    return 0


def cmd_msr(args) -> int:
    g = _graph(args.graph6, args.label)
    index = CorpusIndex(load_corpus(args.corpus)) if args.corpus else CorpusIndex(load_corpus())
    res = determine_msr(g, _budget(args), _config(args), index)
    _emit(args, res.to_dict())
    return 0 if res.determined else 1


def cmd_report(args) -> int:
    try:
        corpus = load_corpus(args.corpus_dir)
    except FileNotFoundError as exc:
        raise UsageError(str(exc)) from None
    rep = batch_report(corpus, _budget(args), _config(args))
    text = rep.to_jsonl() if args.json else rep.to_text()
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"rows: {len(rep)}")
        print(f"agree: {sum(1 for r in rep.rows if r.result.agrees_with_paper)}")
        print(f"written: {args.out}")
    else:
        print(text, end="")
    return 0 if rep.all_agree else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="msrlab", description="Minimum semidefinite rank of small graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, graph=True, refute=False, search=False):
        sp.add_argument("--json", action="store_true", help="emit JSON lines")
        if graph:
            sp.add_argument("graph6")
            sp.add_argument("--label", default=None)
        if refute:
            sp.add_argument("--max-depth", type=int, default=RefuteBudget.max_depth)
            sp.add_argument("--max-facts", type=int, default=RefuteBudget.max_facts)
        if search:
            sp.add_argument("--seed", type=int, default=DEFAULT_SEED,
                            help=f"search seed (default {DEFAULT_SEED})")
            sp.add_argument("--restarts", type=int, default=SearchConfig.restarts)

    sp = sub.add_parser("verify", help="verify a certificate file or a directory of them")
    sp.add_argument("path")
    common(sp, graph=False)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bounds", help="lower bounds for a graph")
    common(sp, refute=True)
    sp.set_defaults(func=cmd_bounds)

    sp = sub.add_parser("refute", help="try to prove msr > k")
    common(sp, refute=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--singletons", action="store_true",
                    help="use only single-vertex dimension bounds (forces dependent-set branching)")
    sp.set_defaults(func=cmd_refute)

    sp = sub.add_parser("search", help="search for a rank-k certificate")
    common(sp, search=True)
    sp.add_argument("--rank", type=int, required=True)
    sp.add_argument("--out", default=None, help="also write the certificate here")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("msr", help="determine msr or an interval for it")
    common(sp, refute=True, search=True)
    sp.add_argument("--corpus", default=None, help="certificate directory (default: bundled corpus)")
    sp.set_defaults(func=cmd_msr)

    sp = sub.add_parser("report", help="reproduce every corpus claim")
    common(sp, graph=False, refute=True, search=True)
    sp.add_argument("corpus_dir")
    sp.add_argument("--out", default=None)
    sp.set_defaults(func=cmd_report)
    return p


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                            format="%(levelname)s %(name)s: %(message)s")
        if getattr(args, "rank", 1) is not None and getattr(args, "rank", 1) < 1:
            raise UsageError("--rank must be at least 1")
        if getattr(args, "restarts", 1) < 1:
            raise UsageError("--restarts must be at least 1")
        return args.func(args)
    except UsageError as exc:
        print(f"msrlab: error: {exc}", file=sys.stderr)
        return 2
    except (CertificateFormatError, DuplicateLabelError, SizeGateError) as exc:
        print(f"msrlab: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
