"""k-partite k-uniform hypergraphs with per-part degree queries.

Vertices are addressed by (part, index) pairs. Every edge is transversal:
it contains exactly one vertex from each of the k parts, stored in part
order, so the tuple itself is the canonical form used for duplicate
detection.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, NamedTuple

from .errors import InvalidInputError


class Vertex(NamedTuple):
    part: int
    index: int


Edge = tuple  # tuple[Vertex, ...] of length k, position i holding the part-i vertex


def vertex_key(v: Vertex) -> str:
    """Render a vertex as the "part:index" string used by the JSON formats."""
    return f"{v[0]}:{v[1]}"


def parse_vertex_key(s: str) -> Vertex:
    try:
        part, index = s.split(":")
        return Vertex(int(part), int(index))
    except ValueError as exc:
        raise InvalidInputError(f"bad vertex key {s!r}, expected 'part:index'") from exc


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


class PartiteHypergraph:
    """Immutable k-partite k-uniform hypergraph.

    Construction checks all invariants (transversal edges, in-range
    vertices, no duplicates) and raises InvalidInputError on the first
    violation; pass ``check=False`` to skip, e.g. to build a deliberately
    broken instance and inspect it with :func:`validate`.
    """

    def __init__(self, k: int, part_sizes: Iterable[int],
                 edges: Iterable[Iterable[tuple[int, int]]] = (), *,
                 check: bool = True):
        self.k = int(k)
        self.part_sizes = tuple(int(s) for s in part_sizes)
        self.edges: list[Edge] = [
            tuple(Vertex(int(p), int(i)) for p, i in e) for e in edges
        ]
        if check:
            report = validate(self)
            if not report.ok:
                raise InvalidInputError(report.violations[0])
        self._incidence: dict[Vertex, list[int]] = {v: [] for v in self.vertices()}
        for rank, e in enumerate(self.edges):
            for v in e:
                # tolerate out-of-range vertices when check=False
                self._incidence.setdefault(v, []).append(rank)

    def vertices(self) -> list[Vertex]:
        return [Vertex(p, i) for p in range(self.k)
                for i in range(self.part_sizes[p])]

    def part(self, p: int) -> list[Vertex]:
        return [Vertex(p, i) for i in range(self.part_sizes[p])]

    @property
    def n_vertices(self) -> int:
        return sum(self.part_sizes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def has_vertex(self, v) -> bool:
        p, i = v
        return 0 <= p < self.k and 0 <= i < self.part_sizes[p]

    def incident_edges(self, v: Vertex) -> list[int]:
        """Indices of the edges containing v, in construction order."""
        self._require_vertex(v)
        return self._incidence.get(Vertex(*v), [])

    def neighbors(self, v: Vertex) -> set[Vertex]:
        """All vertices sharing an edge with v, v itself excluded."""
        out: set[Vertex] = set()
        for rank in self.incident_edges(v):
            out.update(self.edges[rank])
        out.discard(Vertex(*v))
        return out

    def _require_vertex(self, v) -> None:
        if not self.has_vertex(v):
            raise InvalidInputError(f"vertex {tuple(v)} not in hypergraph")

    # -- JSON instance format ------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "parts": list(self.part_sizes),
            "edges": [[[v.part, v.index] for v in e] for e in self.edges],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "PartiteHypergraph":
        try:
            k = data["k"]
            parts = data["parts"]
            raw_edges = data["edges"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"instance JSON missing key: {exc}") from exc
        edges = []
        for e in raw_edges:
            pairs = [tuple(v) for v in e]
            # the on-disk format requires edges pre-sorted by part
            if [p for p, _ in pairs] != sorted(p for p, _ in pairs):
                raise InvalidInputError(
                    f"edge {pairs} not sorted by part; loader does not reorder")
            edges.append(pairs)
        return cls(k, parts, edges)


def validate(h: PartiteHypergraph) -> ValidationReport:
    """Check every structural invariant of h.

    Returns a verdict rather than raising; the report names the first
    offending edge or vertex. Empty parts are reported as warnings.
    """
    violations: list[str] = []
    warnings: list[str] = []
    if h.k < 2:
        violations.append(f"k={h.k} < 2")
    if len(h.part_sizes) != h.k:
        violations.append(f"expected {h.k} part sizes, got {len(h.part_sizes)}")
        return ValidationReport(False, tuple(violations))
    for p, size in enumerate(h.part_sizes):
        if size < 0:
            violations.append(f"part {p} has negative size {size}")
        elif size == 0:
            warnings.append(f"part {p} is empty")
    seen: set[Edge] = set()
    for rank, e in enumerate(h.edges):
        if len(e) != h.k:
            violations.append(f"edge #{rank} {e} has {len(e)} vertices, expected {h.k}")
            break
        parts = [v.part for v in e]
        if parts != list(range(h.k)):
            violations.append(f"edge #{rank} {e} not transversal "
                              "(must hold one vertex per part, in part order)")
            break
        bad = next((v for v in e if not (0 <= v.index < h.part_sizes[v.part])), None)
        if bad is not None:
            violations.append(f"edge #{rank} vertex {tuple(bad)} out of range")
            break
        if e in seen:
            violations.append(f"edge #{rank} {e} is a duplicate")
            break
        seen.add(e)
    return ValidationReport(not violations, tuple(violations), tuple(warnings))


def degree(h: PartiteHypergraph, v: Vertex) -> int:
    """Number of edges containing v."""
    return len(h.incident_edges(v))


def set_degree(h: PartiteHypergraph, s: Iterable[Vertex]) -> int:
    """Number of edges containing every vertex of s (s nonempty)."""
    vs = [Vertex(*v) for v in s]
    if not vs:
        raise InvalidInputError("set_degree requires a nonempty vertex set")
    for v in vs:
        h._require_vertex(v)
    ranks = set(h.incident_edges(vs[0]))
    for v in vs[1:]:
        ranks &= set(h.incident_edges(v))
    return len(ranks)


def max_degrees(h: PartiteHypergraph) -> list[int]:
    """Per-part maximum degree (Delta_i); 0 for empty parts."""
    out = []
    for p in range(h.k):
        out.append(max((degree(h, v) for v in h.part(p)), default=0))
    return out


def is_proper_coloring(h: PartiteHypergraph, phi: Mapping[Vertex, int]) -> bool:
    """True iff every edge carries at least two distinct colors.

    phi must assign a color to every vertex; a partial map is an error.
    """
    missing = next((v for v in h.vertices() if v not in phi), None)
    if missing is not None:
        raise InvalidInputError(f"coloring is partial: vertex {tuple(missing)} unassigned")
    for e in h.edges:
        first = phi[e[0]]
        if all(phi[v] == first for v in e[1:]):
            return False
    return True
