"""Gram-matrix certificates: data model, text codec, verifier and the bundled corpus.

A certificate is a k x n matrix B whose columns are a vector representation
of a graph: the Gram matrix B^T B has a nonzero off-diagonal entry exactly
where the graph has an edge, so it is a PSD matrix with that graph and rank
at most k.  The file grammar is line oriented::

    label G706
    claimed_msr 5
    tree_size 5                 # optional
    argued_lower_bound true
    B 5 7
    1 1 0 0 0 0 1
    ...
    A 7 7                       # optional printed Gram matrix, cross-check only
    ...
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Union

from .graph import Graph, from_pattern, is_connected, to_graph6
from .ratlinalg import RationalMatrix, format_rational, gram, is_psd, rank


class CertificateFormatError(ValueError):
    pass


class CertificateDimensionError(CertificateFormatError):
    pass


class DuplicateLabelError(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    label: str
    b: RationalMatrix
    claimed_msr: int
    transcribed_a: Optional[RationalMatrix] = None
    claimed_tree_size: Optional[int] = None
    paper_lower_bound_argued: bool = False

    @property
    def n(self) -> int:
        return self.b.cols

    def gram(self) -> RationalMatrix:
        return gram(self.b)

    def graph(self) -> Graph:
        """The graph this certificate defines: the off-diagonal pattern of B^T B."""
        return from_pattern(self.gram(), self.label)


@dataclass(frozen=True)
class EntryMismatch:
    i: int
    j: int
    printed: Fraction
    computed: Fraction

    def __str__(self) -> str:
        return (f"A[{self.i + 1},{self.j + 1}] printed {format_rational(self.printed)}"
                f" but B^T B gives {format_rational(self.computed)}")


@dataclass(frozen=True)
class VerificationReport:
    label: str
    pattern_ok: bool
    rank_found: int
    rank_ok: bool
    psd_ok: bool
    a_crosscheck: str  # "ok" | "mismatch" | "absent"
    mismatches: tuple[EntryMismatch, ...] = ()
    reasons: tuple[str, ...] = ()
    graph6: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.pattern_ok and self.rank_ok and self.psd_ok

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def summary(self) -> str:
        line = (f"{self.label}\t{self.verdict}\trank={self.rank_found}\tpattern={'ok' if self.pattern_ok else 'bad'}"
                f"\tpsd={'ok' if self.psd_ok else 'bad'}\tA={self.a_crosscheck}")
        if self.reasons:
            line += "\treasons=" + "; ".join(self.reasons)
        return line


def verify_certificate(c: Certificate) -> VerificationReport:
    """Check that gram(B) lies in P(G) for the graph G it defines, with rank = claimed."""
    reasons = []
    a = gram(c.b)
    g = from_pattern(a)
    pattern_ok = is_connected(g)
    if not pattern_ok:
        reasons.append("Gram pattern defines a disconnected graph")
    zero_cols = [j + 1 for j in range(c.n) if a[j, j] == 0]
    if zero_cols:
        pattern_ok = False
        reasons.append("zero column(s) " + ",".join(map(str, zero_cols)))

    mismatches: tuple[EntryMismatch, ...] = ()
    if c.transcribed_a is None:
        crosscheck = "absent"
    elif (c.transcribed_a.rows, c.transcribed_a.cols) != (c.n, c.n):
        crosscheck = "mismatch"
        pattern_ok = False
        reasons.append(f"printed A is {c.transcribed_a.rows}x{c.transcribed_a.cols}, expected {c.n}x{c.n}")
    else:
        mismatches = tuple(
            EntryMismatch(i, j, c.transcribed_a[i, j], a[i, j])
            for i in range(c.n) for j in range(c.n) if c.transcribed_a[i, j] != a[i, j]
        )
        crosscheck = "mismatch" if mismatches else "ok"
        if c.transcribed_a.is_symmetric():
            if from_pattern(c.transcribed_a) != g:
                pattern_ok = False
                reasons.append("Gram pattern differs from the printed A's pattern")
        else:
            # an asymmetric printed A has no graph; B stays authoritative
            reasons.append("printed A is not symmetric")

    found = rank(c.b)
    rank_ok = found == c.claimed_msr
    if not rank_ok:
        reasons.append(f"rank(B)={found} but claimed {c.claimed_msr}")
    psd_ok = is_psd(a)
    if not psd_ok:
        reasons.append("Gram matrix failed the PSD self-check")
    return VerificationReport(
        label=c.label,
        pattern_ok=pattern_ok,
        rank_found=found,
        rank_ok=rank_ok,
        psd_ok=psd_ok,
        a_crosscheck=crosscheck,
        mismatches=mismatches,
        reasons=tuple(reasons),
        graph6=to_graph6(g),
    )


# -- text codec ---------------------------------------------------------------

def serialize_certificate(c: Certificate) -> str:
    lines = [f"label {c.label}", f"claimed_msr {c.claimed_msr}"]
    if c.claimed_tree_size is not None:
        lines.append(f"tree_size {c.claimed_tree_size}")
    lines.append(f"argued_lower_bound {'true' if c.paper_lower_bound_argued else 'false'}")
    lines.append(f"B {c.b.rows} {c.b.cols}")
    lines.append(c.b.to_text())
    if c.transcribed_a is not None:
        lines.append(f"A {c.transcribed_a.rows} {c.transcribed_a.cols}")
        lines.append(c.transcribed_a.to_text())
    return "\n".join(lines) + "\n"


def _int_field(key: str, value: str, lineno: int) -> int:
    try:
        out = int(value)
    except ValueError:
        raise CertificateFormatError(f"line {lineno}: {key} expects an integer, got {value!r}") from None
    if out < 0:
        raise CertificateFormatError(f"line {lineno}: {key} must be non-negative")
    return out


def parse_certificate(text: str) -> Certificate:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append((lineno, line))

    fields: dict = {}
    matrices: dict[str, RationalMatrix] = {}
    pos = 0
    while pos < len(lines):
        lineno, line = lines[pos]
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        pos += 1
        if key in ("B", "A"):
            if key in matrices:
                raise CertificateFormatError(f"line {lineno}: matrix {key} given twice")
            dims = rest.split()
            if len(dims) != 2:
                raise CertificateFormatError(f"line {lineno}: expected '{key} <rows> <cols>'")
            nrows, ncols = (_int_field(key, d, lineno) for d in dims)
            if nrows == 0 or ncols == 0:
                raise CertificateDimensionError(f"line {lineno}: matrix {key} must be non-empty")
            rows = []
            while pos < len(lines) and len(rows) < nrows:
                rl, rtext = lines[pos]
                if not _looks_numeric(rtext):
                    break
                toks = rtext.split()
                if len(toks) != ncols:
                    raise CertificateDimensionError(
                        f"line {rl}: matrix {key} row has {len(toks)} entries, declared {ncols}")
                try:
                    rows.append([Fraction(t) for t in toks])
                except (ValueError, ZeroDivisionError):
                    raise CertificateFormatError(f"line {rl}: bad rational in {rtext!r}") from None
                pos += 1
            if len(rows) < nrows:
                raise CertificateDimensionError(f"matrix {key} declares {nrows} rows, found {len(rows)}")
            if pos < len(lines) and _looks_numeric(lines[pos][1]):
                raise CertificateDimensionError(
                    f"line {lines[pos][0]}: matrix {key} declares {nrows} rows but has more data rows")
            matrices[key] = RationalMatrix.from_rows(rows)
        elif key == "label":
            if not rest:
                raise CertificateFormatError(f"line {lineno}: empty label")
            fields["label"] = rest
        elif key in ("claimed_msr", "tree_size"):
            fields[key] = _int_field(key, rest, lineno)
        elif key == "argued_lower_bound":
            if rest not in ("true", "false"):
                raise CertificateFormatError(f"line {lineno}: argued_lower_bound must be true or false")
            fields[key] = rest == "true"
        else:
            raise CertificateFormatError(f"line {lineno}: unknown directive {key!r}")

    for need in ("label", "claimed_msr"):
        if need not in fields:
            raise CertificateFormatError(f"missing '{need}' line")
    if "B" not in matrices:
        raise CertificateFormatError("missing 'B' matrix")
    return Certificate(
        label=fields["label"],
        b=matrices["B"],
        claimed_msr=fields["claimed_msr"],
        transcribed_a=matrices.get("A"),
        claimed_tree_size=fields.get("tree_size"),
        paper_lower_bound_argued=fields.get("argued_lower_bound", False),
    )


def _looks_numeric(line: str) -> bool:
    tok = line.split()[0]
    return tok[0] in "+-0123456789"


def read_certificate(path: Union[str, os.PathLike]) -> Certificate:
    return parse_certificate(Path(path).read_text(encoding="utf-8"))


def write_certificate(c: Certificate, path: Union[str, os.PathLike]) -> None:
    Path(path).write_text(serialize_certificate(c), encoding="utf-8")


# -- corpus -------------------------------------------------------------------

def default_corpus_dir() -> Path:
    return Path(str(resources.files("msrlab") / "corpus"))


def _label_key(label: str):
    digits = "".join(ch for ch in label if ch.isdigit())
    return (int(digits) if digits else -1, label)


def load_corpus(directory: Union[str, os.PathLike, None] = None) -> list[Certificate]:
    """Load every ``*.cert`` file in ``directory``, ordered by the numeric part of the label."""
    root = Path(directory) if directory is not None else default_corpus_dir()
    if not root.is_dir():
        raise FileNotFoundError(f"corpus directory {root} does not exist")
    certs: dict[str, Certificate] = {}
    for path in sorted(root.glob("*.cert")):
        try:
            c = read_certificate(path)
        except CertificateFormatError as exc:
            raise CertificateFormatError(f"{path.name}: {exc}") from None
        if c.label in certs:
            raise DuplicateLabelError(f"label {c.label} appears more than once (second copy in {path.name})")
        certs[c.label] = c
    return [certs[k] for k in sorted(certs, key=_label_key)]


@dataclass
class CorpusIndex:
    """Look up corpus certificates by the graph6 string of their defining pattern."""

    certificates: list[Certificate]
    by_graph6: dict[str, Certificate] = field(init=False)

    def __post_init__(self):
        self.by_graph6 = {}
        for c in self.certificates:
            self.by_graph6.setdefault(to_graph6(c.graph()), c)

    def lookup(self, g: Graph) -> Optional[Certificate]:
        return self.by_graph6.get(to_graph6(g))
