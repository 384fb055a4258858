"""Facts about a hypothetical vector representation, and proof-trace containers.

All vertex sets are bitmasks. Printing uses v1..vn.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..graph import bits, fmt_vertices


@dataclass(frozen=True, order=True)
class Orth:
    """<v_i, v_j> = 0, stored with i < j."""

    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("ORTH needs two distinct vertices")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    def __str__(self):
        return f"v{self.i + 1} ⊥ v{self.j + 1}"


@dataclass(frozen=True, order=True)
class NonOrth:
    i: int
    j: int

    def __post_init__(self):
        if self.i == self.j:
            raise ValueError("NONORTH needs two distinct vertices")
        if self.i > self.j:
            a, b = self.j, self.i
            object.__setattr__(self, "i", a)
            object.__setattr__(self, "j", b)

    def __str__(self):
        return f"v{self.i + 1}·v{self.j + 1} ≠ 0"


@dataclass(frozen=True, order=True)
class NonZero:
    x: int

    def __str__(self):
        return f"v{self.x + 1} ≠ 0"


@dataclass(frozen=True, order=True)
class Member:
    """v_x lies in span{v_s : s in S}."""

    x: int
    s: int

    def __post_init__(self):
        if self.s >> self.x & 1:
            raise ValueError("MEMBER(x, S) needs x outside S")

    def __str__(self):
        return f"v{self.x + 1} ∈ span{fmt_vertices(self.s)}"


@dataclass(frozen=True, order=True)
class DimLB:
    """dim span{v_s : s in S} >= d."""

    s: int
    d: int

    def __str__(self):
        return f"dim span{fmt_vertices(self.s)} ≥ {self.d}"


Fact = Union[Orth, NonOrth, NonZero, Member, DimLB]

# rule names used in traces
DIM_BASE = "dim-base"
DIM_MONO = "dim-mono"
DIM_ORTH = "dim-orth"
DIM_WITNESS = "dim-witness"
DIM_REVERSE = "dim-reverse"
SPAN = "R3"
SPLIT = "R4"
PROPAGATE = "R5"
ELIMINATE = "R6"
ZERO_SPAN = "R7-empty"
SELF_ORTH = "R7-self"
FLIP = "R7-flip"


@dataclass(frozen=True)
class Step:
    """One rule application. ``conclusion`` is None when the step closes a branch."""

    rule: str
    conclusion: Optional[Fact]
    premises: tuple[Fact, ...]
    args: tuple[int, ...] = ()

    def render(self) -> str:
        head = "⊥ (contradiction)" if self.conclusion is None else str(self.conclusion)
        extra = ""
        if self.rule in (SPAN, SPLIT) and self.args:
            extra = f" [W={fmt_vertices(self.args[0])}]"
        elif self.rule in (DIM_WITNESS, DIM_REVERSE, PROPAGATE) and self.args:
            extra = f" [w=v{self.args[-1] + 1}]"
        elif self.rule == ELIMINATE:
            extra = f" [drop v{self.args[1] + 1}, w=v{self.args[2] + 1}]"
        prem = "; ".join(str(p) for p in self.premises)
        return f"{self.rule}: {head}{extra}  <= {prem}" if prem else f"{self.rule}: {head}{extra}"


@dataclass(frozen=True)
class Split:
    """Dependence branching: the vectors of ``members`` are linearly dependent."""

    members: int
    w: int
    premises: tuple[Fact, ...]

    def branches(self) -> list[Member]:
        return [Member(x, self.members & ~(1 << x)) for x in bits(self.members)]

    def render(self) -> str:
        prem = "; ".join(str(p) for p in self.premises)
        text = f"{SPLIT}: {fmt_vertices(self.members)} linearly dependent [W={fmt_vertices(self.w)}]"
        return f"{text}  <= {prem}" if prem else text


@dataclass(frozen=True)
class TraceNode:
    assumption: Optional[Member] = None
    steps: tuple[Step, ...] = ()
    closure: Optional[Step] = None
    split: Optional[Split] = None
    children: tuple["TraceNode", ...] = ()

    def depth(self) -> int:
        return 1 + max((c.depth() for c in self.children), default=0) if self.children else 0

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)


@dataclass(frozen=True)
class RefutationTrace:
    """Proof that a graph has no vector representation in dimension ``hypothesis_k``."""

    hypothesis_k: int
    root: TraceNode
    graph6: str = ""
    label: Optional[str] = field(default=None, compare=False)

    def to_text(self) -> str:
        name = self.label or self.graph6
        lines = [f"refutation of rank {self.hypothesis_k} for {name}"]
        _render(self.root, 1, lines)
        lines.append(f"=> no representation in dimension {self.hypothesis_k}; msr ≥ {self.hypothesis_k + 1}")
        return "\n".join(lines)

    def __str__(self):
        return self.to_text()


def _render(node: TraceNode, level: int, lines: list[str]) -> None:
    pad = "  " * level
    if node.assumption is not None:
        lines.append(f"{pad}case {node.assumption}:")
        pad += "  "
        level += 1
    for st in node.steps:
        lines.append(pad + st.render())
    if node.closure is not None:
        lines.append(pad + node.closure.render())
    elif node.split is not None:
        lines.append(pad + node.split.render())
        for child in node.children:
            _render(child, level + 1, lines)
