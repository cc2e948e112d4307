"""Plumbing graphs: weighted multigraphs, intersection forms, exact
definiteness, adjunction degrees, and weighted automorphisms.

A plumbing graph is a finite connected multigraph whose vertices carry a
genus g_i >= 0 and an integer Euler weight e_i.  Loops are forbidden: the
curves a good resolution glues along are smooth, so a component never meets
itself, while two distinct components may meet several times (multi-edges).
The intersection form I has diagonal e_i and off-diagonal entries the edge
multiplicities; its negative definiteness is the fillability criterion and
is decided in exact integer arithmetic, never floating point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    InputError,
    LoopEdge,
    NegativeGenus,
    NonContiguousIds,
)

__all__ = [
    "PlumbingGraph",
    "IntersectionMatrix",
    "Divisor",
    "VertexPermutation",
    "validate_graph",
    "intersection_matrix",
    "is_negative_definite",
    "is_milnor_fillable",
    "valency",
    "canonical_degree",
    "automorphism_group",
    "graph_from_dict",
    "graph_to_dict",
    "load_graph",
    "save_graph",
    "chain_graph",
    "star_graph",
    "e8_graph",
]


@dataclass(frozen=True)
class PlumbingGraph:
    """Connected weighted multigraph with contiguous vertex ids 0..r-1.

    ``edges`` stores each unordered pair as (min, max); a pair repeated k
    times is an edge of multiplicity k.  Instances are validated on
    construction, so every reachable value satisfies the type invariants.
    """

    genus: tuple[int, ...]
    euler: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        r = len(self.genus)
        if len(self.euler) != r:
            raise InputError("genus and euler weight lists differ in length")
        for i, g in enumerate(self.genus):
            if g < 0:
                raise NegativeGenus(i, g)
        normalized = []
        for a, b in self.edges:
            if a == b:
                raise LoopEdge(a)
            if not (0 <= a < r and 0 <= b < r):
                raise NonContiguousIds(f"edge [{a}, {b}] references an unknown vertex")
            normalized.append((min(a, b), max(a, b)))
        object.__setattr__(self, "edges", tuple(sorted(normalized)))
        if r == 0:
            raise InputError("a plumbing graph needs at least one vertex")
        self._check_connected()

    def _check_connected(self):
        r = len(self.genus)
        seen = {0}
        frontier = [0]
        adjacency = {i: set() for i in range(r)}
        for a, b in self.edges:
            adjacency[a].add(b)
            adjacency[b].add(a)
        while frontier:
            v = frontier.pop()
            for w in adjacency[v]:
                if w not in seen:
                    seen.add(w)
                    frontier.append(w)
        if len(seen) != r:
            raise Disconnected(min(set(range(r)) - seen))

    @property
    def vertex_count(self) -> int:
        return len(self.genus)

    def edge_multiplicities(self) -> dict[tuple[int, int], int]:
        mult: dict[tuple[int, int], int] = {}
        for pair in self.edges:
            mult[pair] = mult.get(pair, 0) + 1
        return mult

    def relabel(self, images: Sequence[int]) -> "PlumbingGraph":
        """Push the graph forward along vertex map i -> images[i]."""
        r = self.vertex_count
        genus = [0] * r
        euler = [0] * r
        for i in range(r):
            genus[images[i]] = self.genus[i]
            euler[images[i]] = self.euler[i]
        edges = tuple((images[a], images[b]) for a, b in self.edges)
        return PlumbingGraph(tuple(genus), tuple(euler), edges)


@dataclass(frozen=True)
class IntersectionMatrix:
    """Symmetric integer matrix: diagonal e_i, off-diagonal edge counts."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        r = len(self.entries)
        for row in self.entries:
            if len(row) != r:
                raise InputError("intersection matrix must be square")
        for i in range(r):
            for j in range(i + 1, r):
                if self.entries[i][j] != self.entries[j][i]:
                    raise InputError("intersection matrix must be symmetric")
                if self.entries[i][j] < 0:
                    raise InputError("off-diagonal intersection numbers are counts")

    @property
    def size(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def apply(self, vector: Sequence[int]) -> tuple[int, ...]:
        """Exact integer product I . vector."""
        if len(vector) != self.size:
            from .errors import DimensionMismatch

            raise DimensionMismatch(
                f"vector of length {len(vector)} against {self.size} vertices"
            )
        return tuple(
            sum(row[j] * vector[j] for j in range(self.size)) for row in self.entries
        )


@dataclass(frozen=True)
class Divisor:
    """Effective divisor sum(m_i E_i), one multiplicity per vertex.

    The zero divisor is representable (``is_zero``) but is never a valid
    solver output: the existence theorem requires D != 0.
    """

    multiplicities: tuple[int, ...]

    def __post_init__(self):
        for i, m in enumerate(self.multiplicities):
            if m < 0:
                raise InputError(f"divisor multiplicity m_{i} = {m} is negative")

    @property
    def is_zero(self) -> bool:
        return all(m == 0 for m in self.multiplicities)

    def __len__(self) -> int:
        return len(self.multiplicities)


@dataclass(frozen=True)
class VertexPermutation:
    """Vertex bijection i -> images[i]; certified automorphisms preserve
    genus, Euler weight, and every edge multiplicity."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise InputError("images do not form a permutation of 0..r-1")

    def __call__(self, i: int) -> int:
        return self.images[i]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """self after other: (self.compose(other))(i) = self(other(i))."""
        return VertexPermutation(tuple(self.images[j] for j in other.images))

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return VertexPermutation(tuple(inv))

    def fixes_vector(self, values: Sequence) -> bool:
        """True iff the coordinate vector is constant on every orbit."""
        return all(values[self.images[i]] == values[i] for i in range(len(values)))


def validate_graph(vertices: Iterable, edges: Iterable) -> PlumbingGraph:
    """Build a PlumbingGraph from raw vertex/edge lists.

    Vertices may be (id, genus, euler) triples or mappings with those keys;
    ids must be exactly 0..r-1 in any order.  Edges are 2-element sequences
    of vertex ids; duplicates encode multi-edges.
    """
    triples = []
    for entry in vertices:
        if isinstance(entry, Mapping):
            try:
                triples.append((int(entry["id"]), int(entry["genus"]), int(entry["euler"])))
            except KeyError as missing:
                raise InputError(f"vertex record lacks key {missing}") from None
        else:
            vid, g, e = entry
            triples.append((int(vid), int(g), int(e)))
    ids = sorted(t[0] for t in triples)
    r = len(triples)
    if ids != list(range(r)):
        dupes = {i for i in ids if ids.count(i) > 1}
        if dupes:
            raise NonContiguousIds(f"duplicate id {min(dupes)}")
        raise NonContiguousIds(f"got ids {ids}")
    genus = [0] * r
    euler = [0] * r
    for vid, g, e in triples:
        genus[vid] = g
        euler[vid] = e
    pairs = []
    for edge in edges:
        seq = list(edge)
        if len(seq) != 2:
            raise InputError(f"edge {seq} is not a pair")
        pairs.append((int(seq[0]), int(seq[1])))
    return PlumbingGraph(tuple(genus), tuple(euler), tuple(pairs))


def intersection_matrix(g: PlumbingGraph) -> IntersectionMatrix:
    """I(Gamma): diagonal Euler weights, off-diagonal edge multiplicities."""
    r = g.vertex_count
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        rows[i][i] = g.euler[i]
    for (a, b), k in g.edge_multiplicities().items():
        rows[a][b] = k
        rows[b][a] = k
    return IntersectionMatrix(tuple(tuple(row) for row in rows))


def _as_rows(m) -> list[list[int]]:
    if isinstance(m, IntersectionMatrix):
        return [list(row) for row in m.entries]
    rows = [[int(x) for x in row] for row in m]
    r = len(rows)
    for row in rows:
        if len(row) != r:
            raise InputError("matrix must be square")
    for i in range(r):
        for j in range(i + 1, r):
            if rows[i][j] != rows[j][i]:
                raise InputError("matrix must be symmetric")
    return rows


def is_negative_definite(m) -> bool:
    """Exact test: the k-th leading principal minor has sign (-1)^k.

    Fraction-free (Bareiss) elimination over the integers; after step k the
    next pivot equals the (k+1)-st leading principal minor, so the sign
    pattern is read off the pivots.  A zero pivot is a zero minor, which
    already refutes definiteness, so elimination never needs to continue
    past one.
    """
    a = _as_rows(m)
    r = len(a)
    prev = 1
    for k in range(r):
        pivot = a[k][k]  # (k+1)-st leading principal minor
        wanted_negative = k % 2 == 0
        if pivot == 0 or (pivot < 0) != wanted_negative:
            return False
        for i in range(k + 1, r):
            for j in range(k + 1, r):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]) // prev
        prev = pivot
    return True


def is_milnor_fillable(g: PlumbingGraph) -> bool:
    """Fillability criterion: the intersection form is negative definite.

    Connectivity, the other hypothesis, is enforced by the graph type.
    """
    return is_negative_definite(intersection_matrix(g))


def valency(g: PlumbingGraph, i: int) -> int:
    """v_i = E_i . (E - E_i): edge-ends at vertex i, counting multiplicity."""
    if not 0 <= i < g.vertex_count:
        raise InputError(f"no vertex {i}")
    return sum((a == i) + (b == i) for a, b in g.edges)


def canonical_degree(g: PlumbingGraph, i: int) -> int:
    """Adjunction degree K . E_i = 2 g_i - 2 - e_i."""
    if not 0 <= i < g.vertex_count:
        raise InputError(f"no vertex {i}")
    return 2 * g.genus[i] - 2 - g.euler[i]


def automorphism_group(g: PlumbingGraph) -> list[VertexPermutation]:
    """All vertex permutations preserving weights and edge multiplicities.

    Backtracking over images, pruned by the (genus, euler, valency) class
    of each vertex; desk-scale graphs keep the search tiny.  The result is
    sorted by image tuple, starts with the identity, and is a group (closure
    is asserted in the test suite, not here).
    """
    r = g.vertex_count
    mult = g.edge_multiplicities()

    def pair_mult(a: int, b: int) -> int:
        return mult.get((min(a, b), max(a, b)), 0)

    signature = [(g.genus[i], g.euler[i], valency(g, i)) for i in range(r)]
    candidates = [
        [j for j in range(r) if signature[j] == signature[i]] for i in range(r)
    ]
    found: list[VertexPermutation] = []
    images = [-1] * r
    used = [False] * r

    def extend(i: int):
        if i == r:
            found.append(VertexPermutation(tuple(images)))
            return
        for j in candidates[i]:
            if used[j]:
                continue
            if any(
                images[k] >= 0 and pair_mult(i, k) != pair_mult(j, images[k])
                for k in range(i)
            ):
                continue
            images[i] = j
            used[j] = True
            extend(i + 1)
            images[i] = -1
            used[j] = False

    extend(0)
    found.sort(key=lambda p: p.images)
    return found


# serialization -------------------------------------------------------------

def graph_from_dict(doc: Mapping) -> PlumbingGraph:
    """Parse the graph document format: keys "vertices" and "edges"."""
    if not isinstance(doc, Mapping):
        raise InputError("graph document must be a mapping")
    try:
        vertices = doc["vertices"]
        edges = doc["edges"]
    except KeyError as missing:
        raise InputError(f"graph document lacks key {missing}") from None
    return validate_graph(vertices, edges)


def graph_to_dict(g: PlumbingGraph) -> dict:
    """Emit the document format, vertices ordered by id."""
    return {
        "vertices": [
            {"id": i, "genus": g.genus[i], "euler": g.euler[i]}
            for i in range(g.vertex_count)
        ],
        "edges": [[a, b] for a, b in g.edges],
    }


def load_graph(path) -> PlumbingGraph:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise InputError(f"cannot read graph file: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"graph file is not valid JSON: {exc}") from None
    return graph_from_dict(doc)


def save_graph(g: PlumbingGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        json.dump(graph_to_dict(g), handle, indent=1)
        handle.write("\n")


# small constructors used throughout the tests and scripts ------------------

def chain_graph(eulers: Sequence[int], genus: Sequence[int] | None = None) -> PlumbingGraph:
    """Linear chain 0 - 1 - ... - (r-1) with the given weights."""
    r = len(eulers)
    gs = tuple(genus) if genus is not None else (0,) * r
    return PlumbingGraph(gs, tuple(eulers), tuple((i, i + 1) for i in range(r - 1)))


def star_graph(center_euler: int, leg_eulers: Sequence[int]) -> PlumbingGraph:
    """One central vertex 0 joined to one vertex per leg, all genus 0."""
    r = 1 + len(leg_eulers)
    eulers = (center_euler,) + tuple(leg_eulers)
    return PlumbingGraph((0,) * r, eulers, tuple((0, i) for i in range(1, r)))


def e8_graph() -> PlumbingGraph:
    """The E8 tree: chain of seven (0,-2) vertices, eighth vertex on node 4."""
    edges = tuple((i, i + 1) for i in range(6)) + ((4, 7),)
    return PlumbingGraph((0,) * 8, (-2,) * 8, edges)
