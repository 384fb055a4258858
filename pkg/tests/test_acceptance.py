"""Acceptance criteria, one test each; every test prints a single PASS/FAIL line."""

import itertools
import json
import random
import time
from fractions import Fraction
from pathlib import Path

import sympy

from msrlab.bounds import check_trace, refute_rank, subset_dim_bound, tree_size
from msrlab.certkit import verify_certificate
from msrlab.engine import batch_report, determine_msr
from msrlab.graph import Graph, complete_graph, parse_graph6, path_graph, to_graph6
from msrlab.ratlinalg import RationalMatrix, gram, is_psd, rank
from msrlab.repsearch import SearchConfig, search_representation

PINNED = json.loads((Path(__file__).parent / "pinned_seeds.json").read_text())

ARGUED = [("G706", 4), ("G710", 4), ("G946", 3), ("G998", 3), ("G1006", 3), ("G1065", 3), ("G1069", 3),
          ("G1084", 3), ("G1091", 3), ("G1092", 3), ("G1097", 3), ("G1101", 3), ("G1145", 3), ("G1154", 3),
          ("G1222", 2), ("G1224", 2), ("G1228", 2), ("G1231", 2), ("G1233", 2)]


def _verdict(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {n}] {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, detail


def test_criterion_1_corpus_verification(capsys, corpus):
    t = time.perf_counter()
    reports = [verify_certificate(c) for c in corpus]
    elapsed = time.perf_counter() - t
    ranks = {r.label: r.rank_found for r in reports}
    spot = {"G706": 5, "G817": 4, "G1000": 3, "G1211": 2, "G1250": 2}
    appendix = batch_report([c for c, r in zip(corpus, reports) if not r.passed]).to_text()
    unexplained = []
    for c, r in zip(corpus, reports):
        if r.passed:
            continue
        # only a printed-A zero-pattern disagreement, with the entries in the appendix
        pattern_entries = [m for m in r.mismatches if (m.printed == 0) != (m.computed == 0) and m.i != m.j]
        explained = (r.rank_ok and r.psd_ok and pattern_entries
                     and all(f"{c.label}: {m}" in appendix for m in pattern_entries))
        if not explained:
            unexplained.append(c.label)
    failed = [r.label for r in reports if not r.passed]
    ok = (not unexplained and all(ranks[k] == v for k, v in spot.items())
          and all(r.rank_ok for r in reports) and elapsed < 5)
    _verdict(capsys, 1, ok, f"{len(reports)} certificates in {elapsed:.2f}s; failing {failed} "
                            f"(traced to printed-A entries: {not unexplained}); spot ranks ok")


def test_criterion_2_tree_sizes(capsys, corpus):
    t = time.perf_counter()
    rows = [(c.label, c.claimed_tree_size, tree_size(c.graph())) for c in corpus if c.claimed_tree_size is not None]
    elapsed = time.perf_counter() - t
    mismatches = [(label, claimed, got) for label, claimed, got in rows if claimed != got]
    detail = (f"{len(rows)} stated tree sizes in {elapsed:.2f}s; {len(mismatches)} mismatch(es) "
              + ", ".join(f"{label} stated {claimed} computed {got}" for label, claimed, got in mismatches))
    _verdict(capsys, 2, len(mismatches) <= 2 and elapsed < 10, detail)


def test_criterion_3_refutation_reproduction(capsys, corpus):
    by = {c.label: c for c in corpus}
    worst = 0.0
    bad = []
    for label, k in ARGUED:
        g = by[label].graph()
        t = time.perf_counter()
        res = refute_rank(g, k)
        dt = time.perf_counter() - t
        worst = max(worst, dt)
        if not (res.refuted and check_trace(g, res.trace) and dt < 1):
            bad.append(label)
    argued_in_corpus = sorted((c.label for c in corpus if c.paper_lower_bound_argued), key=lambda s: int(s[1:]))
    ok = not bad and argued_in_corpus == [label for label, _ in ARGUED]
    _verdict(capsys, 3, ok, f"{len(ARGUED) - len(bad)}/{len(ARGUED)} refuted and checked; slowest {worst:.3f}s")


def test_criterion_4_soundness_guard(capsys, corpus):
    bad = []
    for c in corpus:
        try:
            if refute_rank(c.graph(), c.claimed_msr).status != "unknown":
                bad.append(c.label)
        except Exception as exc:  # noqa: BLE001 - zero exceptions tolerated, so record them
            bad.append(f"{c.label} raised {exc!r}")
    _verdict(capsys, 4, not bad, f"{len(corpus)} graphs unknown at the claimed rank; offenders {bad}")


def test_criterion_5_lower_bound_closure(capsys, corpus):
    report = batch_report(corpus)
    with_source = []
    silent = []
    for c, row in zip(corpus, report.rows):
        res = row.result
        if c.paper_lower_bound_argued or (c.claimed_tree_size is not None and c.claimed_tree_size - 1 == c.claimed_msr):
            with_source.append((c.label, res.status == "determined" and res.value == c.claimed_msr))
        if res.agrees_with_paper and not (res.determined and res.value == c.claimed_msr):
            silent.append(c.label)
        if not res.determined and res.reason != "lower bound open":
            silent.append(c.label)
    closed = sum(ok for _, ok in with_source)
    all_rows = sum(r.result.agrees_with_paper for r in report.rows)
    ok = closed == len(with_source) and not silent
    _verdict(capsys, 5, ok, f"{closed}/{len(with_source)} rows with a stated lower-bound argument determined at the claim; "
                            f"{all_rows}/{len(report)} rows determined overall; unflagged {silent}")


def test_criterion_6_search_reproduction(capsys):
    t = time.perf_counter()
    found = []
    for p in PINNED:
        g = parse_graph6(p["graph6"])
        cert = search_representation(g, p["k"], SearchConfig(seed=p["seed"], restarts=p["restarts"]))
        found.append(cert is not None and verify_certificate(cert).passed and cert.b.rows == p["k"]
                     and cert.graph() == g)
    elapsed = time.perf_counter() - t
    names = {p["name"] for p in PINNED}
    ok = all(found) and {"K7", "G1211", "G1000", "G817", "G706"} <= names and elapsed < 60
    _verdict(capsys, 6, ok, f"{sum(found)}/{len(PINNED)} pinned searches succeeded in {elapsed:.2f}s")


def _rand_matrix(rng, rows, cols):
    return RationalMatrix.from_rows([[Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(cols)]
                                     for _ in range(rows)])


def _minors_psd(a):
    s = sympy.Matrix(3, 3, [sympy.Rational(x.numerator, x.denominator) for x in a.entries])
    return all(s.extract(list(i), list(i)).det() >= 0
               for k in (1, 2, 3) for i in itertools.combinations(range(3), k))


def test_criterion_7_property_suites(capsys):
    rng = random.Random(7)
    cases = 1000
    gram_rank = gram_psd = minors = 0
    for _ in range(cases):
        b = _rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 6))
        gram_rank += rank(gram(b)) == rank(b)
        gram_psd += is_psd(gram(b))
        e = [Fraction(rng.randint(-3, 3), rng.randint(1, 2)) for _ in range(6)]
        # bias towards PSD inputs so both outcomes are well represented
        if rng.random() < 0.5:
            v = _rand_matrix(rng, 2, 3)
            a = gram(v)
        else:
            a = RationalMatrix.from_rows([[e[0], e[1], e[2]], [e[1], e[3], e[4]], [e[2], e[4], e[5]]])
        minors += is_psd(a) == _minors_psd(a)
    t = time.perf_counter()
    graphs = 0
    for n in range(1, 7):
        pairs = list(itertools.combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            g = Graph.from_edges(n, [p for i, p in enumerate(pairs) if mask >> i & 1])
            assert parse_graph6(to_graph6(g)) == g
            graphs += 1
    g6_time = time.perf_counter() - t
    ok = gram_rank == gram_psd == minors == cases and g6_time < 10
    _verdict(capsys, 7, ok, f"rank(gram)={gram_rank}/{cases}, psd(gram)={gram_psd}/{cases}, "
                            f"minor oracle={minors}/{cases}, graph6 round-trip on {graphs} graphs in {g6_time:.2f}s")


def test_criterion_8_known_families(capsys):
    bad = []
    for n in range(2, 8):
        if determine_msr(complete_graph(n)).value != 1:
            bad.append(f"K{n}")
        p = path_graph(n)
        res = determine_msr(p)
        refuted = n == 2 or refute_rank(p, n - 2).refuted
        searched = search_representation(p, n - 1) is not None
        dp, _ = subset_dim_bound(p)
        if not (res.value == n - 1 and refuted and searched and dp == n - 1):
            bad.append(f"P{n}")
    _verdict(capsys, 8, not bad, f"K2..K7 = 1 and P2..P7 = n-1; failures {bad}")
