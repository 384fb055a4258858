import json
from dataclasses import replace

import pytest

from msrlab import engine
from msrlab.bounds import msr_lower_bound
from msrlab.certkit import verify_certificate
from msrlab.engine import LOWER_BOUND_OPEN, batch_report, determine_msr
from msrlab.graph import Graph, complete_graph, cycle_graph, path_graph, star_graph

ARGUED = ["G706", "G710", "G946", "G998", "G1006", "G1065", "G1069", "G1084", "G1091", "G1092", "G1097",
          "G1101", "G1145", "G1154", "G1222", "G1224", "G1228", "G1231", "G1233"]


@pytest.fixture(scope="module")
def report(corpus):
    return batch_report(corpus)


def test_known_families():
    for n in range(2, 8):
        assert determine_msr(complete_graph(n)).value == 1
        assert determine_msr(path_graph(n)).value == n - 1
    assert determine_msr(star_graph(5)).value == 5
    assert determine_msr(cycle_graph(6)).value == 4


def test_pendant_consistency():
    # a triangle with a two-vertex tail and a pendant on another corner
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (1, 5)])
    res = determine_msr(g)
    assert res.peeled == 3
    assert res.value == determine_msr(complete_graph(3)).value + 3
    cert = res.upper_evidence
    assert verify_certificate(cert).passed and cert.graph() == g


def test_corpus_examples(by_label, corpus_index):
    res = determine_msr(by_label["G817"].graph(), corpus_index=corpus_index)
    assert (res.value, res.lower_source, res.upper) == (4, "ts", 4)
    res = determine_msr(by_label["G706"].graph(), corpus_index=corpus_index)
    assert (res.value, res.lower_source, res.upper_source) == (5, "refutation", "corpus")
    assert res.agrees_with_paper is True


def test_errors():
    with pytest.raises(ValueError):
        determine_msr(Graph.from_edges(3, [(0, 1)]))
    with pytest.raises(ValueError):
        determine_msr(Graph(1, (0,)))


def test_open_lower_bound_is_flagged(monkeypatch, by_label, corpus_index):
    def weak(g, budget=None):
        rep = msr_lower_bound(g, budget)
        return replace(rep, best_lower=rep.best_lower - 1, source="ts")

    monkeypatch.setattr(engine, "msr_lower_bound", weak)
    monkeypatch.setattr(engine, "search_representation", lambda *a, **k: None)
    res = determine_msr(by_label["G706"].graph(), corpus_index=corpus_index)
    assert res.status == "interval" and res.reason == LOWER_BOUND_OPEN
    assert res.agrees_with_paper is False and res.value is None
    rep = batch_report([by_label["G706"]])
    assert not rep.all_agree
    assert "G706: 4 <= msr <= 5, claimed 5 (lower bound open)" in rep.to_text()


def test_report_rows(report, corpus):
    assert [r.label for r in report.rows] == [c.label for c in corpus]
    for r, c in zip(report.rows, corpus):
        res = r.result
        assert res.upper == c.claimed_msr == r.certificate_rank
        assert res.lower <= c.claimed_msr
        assert res.status == "determined" and res.agrees_with_paper


def test_argued_rows(report):
    for label in ARGUED:
        row = report.row(label)
        assert row.argued and row.argued_refutation
        # the source is refutation unless the exhaustive tree size already reaches msr
        expected = "ts" if row.tree_size - 1 == row.result.value else "refutation"
        assert row.result.lower_source == expected
    assert sum(report.row(label).result.lower_source == "refutation" for label in ARGUED) == 10


def test_appendix(report):
    text = report.to_text()
    assert "G1210: A[5,7] printed -1 but B^T B gives 0" in text
    assert "G946: claimed 3, computed 5" in text
    assert len(report.tree_size_mismatches()) == 11
    assert report.unclosed() == []


def test_jsonl(report, corpus):
    lines = report.to_jsonl().splitlines()
    assert len(lines) == len(corpus)
    first = json.loads(lines[0])
    assert first["label"] == "G706" and first["status"] == "determined" and first["lower_source"] == "refutation"


def test_report_is_deterministic_and_thread_independent(monkeypatch, corpus):
    sample = corpus[:12]
    serial = batch_report(sample)
    monkeypatch.setenv("MSRLAB_THREADS", "4")
    parallel = batch_report(sample)
    assert serial.to_text() == parallel.to_text() == batch_report(sample).to_text()
    assert serial.to_jsonl() == parallel.to_jsonl()


def test_empty_corpus():
    rep = batch_report([])
    assert len(rep) == 0 and rep.to_jsonl() == ""
