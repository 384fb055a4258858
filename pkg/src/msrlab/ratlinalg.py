"""Exact dense linear algebra over the rationals.

Entries are :class:`fractions.Fraction`, so nothing here rounds or overflows.
Matrices are small (the intended inputs are at most 7x7), which keeps plain
Python lists fast enough.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Scalar = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational entry")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RationalMatrix:
    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        rows = [list(r) for r in rows]
        if not rows:
            raise ValueError("matrix needs at least one row")
        width = len(rows[0])
        for i, r in enumerate(rows):
            if len(r) != width:
                raise ValueError(f"row {i} has {len(r)} entries, expected {width}")
        return cls(len(rows), width, tuple(_frac(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Scalar]]) -> "RationalMatrix":
        return cls.from_rows(list(zip(*columns))) if columns and len(columns[0]) else cls(0, len(columns), ())

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        return cls(rows, cols, (Fraction(0),) * (rows * cols))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(n, n, tuple(Fraction(int(i == j)) for i in range(n) for j in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple[Fraction, ...]:
        return self.entries[j::self.cols] if self.cols else ()

    def to_rows(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(self.cols, self.rows, tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    T = property(transpose)

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = [other.column(j) for j in range(other.cols)]
        out = []
        for i in range(self.rows):
            r = self.row(i)
            out.extend(sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols)
        return RationalMatrix(self.rows, other.cols, tuple(out))

    def apply(self, v: Sequence[Scalar]) -> tuple[Fraction, ...]:
        """Matrix-vector product."""
        if len(v) != self.cols:
            raise ValueError("vector length does not match column count")
        return tuple(sum((a * _frac(x) for a, x in zip(self.row(i), v)), Fraction(0)) for i in range(self.rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_symmetric(self) -> bool:
        return self.is_square() and all(
            self[i, j] == self[j, i] for i in range(self.rows) for j in range(i + 1, self.cols)
        )

    def with_entry(self, i: int, j: int, value: Scalar) -> "RationalMatrix":
        e = list(self.entries)
        e[i * self.cols + j] = _frac(value)
        return RationalMatrix(self.rows, self.cols, tuple(e))

    def to_text(self) -> str:
        """One row per line, whitespace-separated integers or ``a/b`` rationals."""
        return "\n".join(" ".join(format_rational(x) for x in self.row(i)) for i in range(self.rows))

    def __str__(self) -> str:
        return self.to_text()


def parse_matrix_rows(lines: Iterable[str]) -> RationalMatrix:
    rows = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            rows.append([Fraction(tok) for tok in line.split()])
    return RationalMatrix.from_rows(rows)


def inner(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def gram(b: RationalMatrix) -> RationalMatrix:
    """``b.T @ b``: entry (i, j) is the inner product of columns i and j."""
    cols = [b.column(j) for j in range(b.cols)]
    n = b.cols
    out = [Fraction(0)] * (n * n)
    for i in range(n):
        for j in range(i, n):
            out[i * n + j] = out[j * n + i] = inner(cols[i], cols[j])
    return RationalMatrix(n, n, tuple(out))


def _integer_rows(m: RationalMatrix) -> list[list[int]]:
    # Row scaling does not change rank or the solution set of m x = 0.
    out = []
    for i in range(m.rows):
        r = m.row(i)
        den = reduce(lcm, (x.denominator for x in r), 1)
        out.append([int(x * den) for x in r])
    return out


def rank(m: RationalMatrix) -> int:
    """Exact rank via fraction-free (Bareiss) elimination with full pivoting."""
    a = _integer_rows(m)
    rows, cols = m.rows, m.cols
    prev = 1
    r = 0
    while r < min(rows, cols):
        pivot = None
        best = None
        for i in range(r, rows):
            for j in range(r, cols):
                if a[i][j] and (best is None or abs(a[i][j]) < best):
                    best, pivot = abs(a[i][j]), (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[r], a[pi] = a[pi], a[r]
        for row in a:
            row[r], row[pj] = row[pj], row[r]
        p = a[r][r]
        for i in range(r + 1, rows):
            for j in range(r + 1, cols):
                # exact division is guaranteed by Sylvester's identity
                a[i][j] = (p * a[i][j] - a[i][r] * a[r][j]) // prev
            a[i][r] = 0
        prev = p
        r += 1
    return r


def rref(m: RationalMatrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and the list of pivot columns."""
    a = m.to_rows()
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pr = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    return a, pivots


def nullspace_basis(m: RationalMatrix) -> list[tuple[Fraction, ...]]:
    """Basis of {x : m x = 0}, one vector per free column, scaled to coprime integers."""
    if m.rows == 0:
        return [tuple(Fraction(int(i == j)) for i in range(m.cols)) for j in range(m.cols)]
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -a[r][f]
        basis.append(primitive(v))
    return basis


def primitive(v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    """Scale a nonzero vector to coprime integer entries (zero vector returned as is)."""
    den = reduce(lcm, (x.denominator for x in v), 1)
    ints = [int(x * den) for x in v]
    g = reduce(gcd, ints, 0)
    if g == 0:
        return tuple(Fraction(0) for _ in v)
    return tuple(Fraction(x // g) for x in ints)


class NotSymmetricError(ValueError):
    pass


def is_psd(a: RationalMatrix) -> bool:
    """Decide positive semidefiniteness by symmetric Gaussian elimination.

    A zero pivot forces its whole row to vanish; a negative pivot is fatal;
    otherwise recurse on the Schur complement.
    """
    if not a.is_square():
        raise NotSymmetricError(f"matrix is {a.rows}x{a.cols}, not square")
    if not a.is_symmetric():
        raise NotSymmetricError("matrix is not symmetric")
    m = a.to_rows()
    while m:
        p = m[0][0]
        if p < 0:
            return False
        if p == 0:
            if any(x != 0 for x in m[0]):
                return False
            m = [row[1:] for row in m[1:]]
            continue
        head = m[0]
        m = [[m[i][j] - m[i][0] * head[j] / p for j in range(1, len(head))] for i in range(1, len(m))]
    return True
