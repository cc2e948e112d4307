"""Decorated link graphs and the canonical open book pipeline.

Arrowheads attached to a vertex record binding components: n_i generic
fibers of the circle bundle over that vertex.  The pipeline turns a
fillable plumbing graph into its canonical decorated graph by way of the
minimal divisor, and certifies the properties that make the decorated data
a complete invariant (all n_i >= 1, automorphism invariance).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import AllZero, DimensionMismatch, InputError, NotMilnorFillable
from .divisors import (
    MultiplicityVector,
    binding_multiplicities,
    check_theorem_conditions,
    minimal_divisor,
)
from .graphs import Divisor, PlumbingGraph, is_milnor_fillable, valency

__all__ = [
    "DecoratedLinkGraph",
    "OpenBookReport",
    "decorate",
    "ubiquitous_open_book",
    "decorated_isomorphic",
]

UNIQUENESS_NOTE = (
    "every binding multiplicity is positive, so all horizontal open books "
    "with this binding are isomorphic; the decorated graph determines the "
    "open book"
)


@dataclass(frozen=True)
class DecoratedLinkGraph:
    """Plumbing graph plus per-vertex arrowhead counts.

    Arrowheads are a multiset per vertex (generic fibers are
    interchangeable), so only counts are stored.  At least one arrowhead is
    required; vertices with zero arrowheads are legal but flagged, since
    uniqueness of the horizontal open book needs every count positive.
    """

    base: PlumbingGraph
    arrowheads: tuple[int, ...]

    def __post_init__(self):
        if len(self.arrowheads) != self.base.vertex_count:
            raise DimensionMismatch(
                f"{len(self.arrowheads)} arrowhead counts for "
                f"{self.base.vertex_count} vertices"
            )
        for i, n in enumerate(self.arrowheads):
            if n < 0:
                raise InputError(f"arrowhead count n_{i} = {n} is negative")
        if all(n == 0 for n in self.arrowheads):
            raise AllZero("an open book needs at least one binding component")

    @property
    def binding_components(self) -> int:
        return sum(self.arrowheads)

    @property
    def has_zero_arrowheads(self) -> bool:
        return any(n == 0 for n in self.arrowheads)

    def to_text(self) -> str:
        """Vertex list with (genus, euler, arrows) labels plus edges."""
        lines = [
            f"vertex {i}: ({self.base.genus[i]}, {self.base.euler[i]}, "
            f"{self.arrowheads[i]} arrows)"
            for i in range(self.base.vertex_count)
        ]
        edges = " ".join(f"[{a},{b}]" for a, b in self.base.edges) or "(none)"
        lines.append(f"edges: {edges}")
        return "\n".join(lines)


@dataclass(frozen=True)
class OpenBookReport:
    """Full certificate bundle for the canonical open book of a graph."""

    graph: DecoratedLinkGraph
    divisor: Divisor
    binding_components: int
    per_vertex: tuple[tuple[int, int, int, int, int, int], ...]
    fillable: bool
    aut_invariant: bool
    commentary: str

    def to_dict(self) -> dict:
        return {
            "fillable": self.fillable,
            "divisor": list(self.divisor.multiplicities),
            "arrowheads": list(self.graph.arrowheads),
            "binding_components": self.binding_components,
            "per_vertex": [
                {
                    "valency": v,
                    "genus": g,
                    "euler": e,
                    "multiplicity": m,
                    "arrowheads": n,
                    "slack": s,
                }
                for v, g, e, m, n, s in self.per_vertex
            ],
            "aut_invariant": self.aut_invariant,
            "commentary": self.commentary,
        }


def decorate(g: PlumbingGraph, n: MultiplicityVector) -> DecoratedLinkGraph:
    """Attach n_i arrowheads at vertex i; the base graph is unchanged."""
    if len(n) != g.vertex_count:
        raise DimensionMismatch(
            f"{len(n)} arrowhead counts for {g.vertex_count} vertices"
        )
    return DecoratedLinkGraph(g, tuple(n.counts))


def ubiquitous_open_book(g: PlumbingGraph) -> OpenBookReport:
    """Fillability check, minimal divisor, binding data, certificates.

    The resulting arrowhead counts are always strictly positive, which is
    the hypothesis under which the decorated graph determines the open book
    up to isomorphism; that fact is recorded as commentary, not computed.
    """
    if not is_milnor_fillable(g):
        raise NotMilnorFillable(
            "the intersection form is not negative definite; "
            "no Milnor filling exists"
        )
    divisor = minimal_divisor(g)
    counts = binding_multiplicities(g, divisor)
    certificates = check_theorem_conditions(g, divisor)
    decorated = decorate(g, counts)
    per_vertex = tuple(
        (
            valency(g, i),
            g.genus[i],
            g.euler[i],
            divisor.multiplicities[i],
            counts.counts[i],
            certificates.inequality_slack[i],
        )
        for i in range(g.vertex_count)
    )
    return OpenBookReport(
        graph=decorated,
        divisor=divisor,
        binding_components=decorated.binding_components,
        per_vertex=per_vertex,
        fillable=True,
        aut_invariant=certificates.aut_invariant,
        commentary=UNIQUENESS_NOTE,
    )


def decorated_isomorphic(a: DecoratedLinkGraph, b: DecoratedLinkGraph) -> bool:
    """Existence of a vertex bijection preserving genus, Euler weight,
    edge multiplicities, and arrowhead counts.  Exhaustive backtracking
    with signature pruning; desk-scale inputs only."""
    ga, gb = a.base, b.base
    r = ga.vertex_count
    if gb.vertex_count != r or sorted(a.arrowheads) != sorted(b.arrowheads):
        return False

    def signature(g: PlumbingGraph, arrows, i: int):
        return (g.genus[i], g.euler[i], valency(g, i), arrows[i])

    sig_a = [signature(ga, a.arrowheads, i) for i in range(r)]
    sig_b = [signature(gb, b.arrowheads, i) for i in range(r)]
    if sorted(sig_a) != sorted(sig_b):
        return False
    mult_a = ga.edge_multiplicities()
    mult_b = gb.edge_multiplicities()

    def pair_mult(mult, x: int, y: int) -> int:
        return mult.get((min(x, y), max(x, y)), 0)

    images = [-1] * r
    used = [False] * r

    def extend(i: int) -> bool:
        if i == r:
            return True
        for j in range(r):
            if used[j] or sig_b[j] != sig_a[i]:
                continue
            if any(
                images[k] >= 0
                and pair_mult(mult_a, i, k) != pair_mult(mult_b, j, images[k])
                for k in range(i)
            ):
                continue
            images[i] = j
            used[j] = True
            if extend(i + 1):
                return True
            images[i] = -1
            used[j] = False
        return False

    return extend(0)
