"""List assignments, color-degrees, partial colorings and residual lists.

A color c is *blocked* at an uncolored vertex v when some edge through v
has all k-1 other vertices colored, all with color c. The residual list
L_phi(v) holds the unblocked members of L(v); assigning any of them keeps
the coloring extendable at v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .errors import InvalidInputError
from .hypergraph import PartiteHypergraph, Vertex, is_proper_coloring, \
    parse_vertex_key, vertex_key


class ListAssignment:
    """Per-vertex finite color sets. Colors are opaque non-negative ints.

    Every vertex of the host hypergraph must have an entry; an empty list
    is allowed and simply signals infeasibility at that vertex.
    """

    def __init__(self, h: PartiteHypergraph, lists: Mapping[Vertex, object]):
        self.lists: dict[Vertex, frozenset[int]] = {}
        for v in h.vertices():
            if v not in lists:
                raise InvalidInputError(f"no list for vertex {tuple(v)}")
            self.lists[v] = frozenset(int(c) for c in lists[v])
        for v in lists:
            if not h.has_vertex(v):
                raise InvalidInputError(f"list given for unknown vertex {tuple(v)}")

    def __getitem__(self, v) -> frozenset[int]:
        try:
            return self.lists[Vertex(*v)]
        except KeyError:
            raise InvalidInputError(f"vertex {tuple(v)} has no list") from None

    def __contains__(self, v) -> bool:
        return Vertex(*v) in self.lists

    def sizes_by_part(self, h: PartiteHypergraph) -> list[int]:
        """Minimum list size in each part (the instance's q_i); 0 if a part is empty."""
        return [min((len(self.lists[v]) for v in h.part(p)), default=0)
                for p in range(h.k)]

    def to_json_dict(self) -> dict:
        return {"lists": {vertex_key(v): sorted(cs)
                          for v, cs in sorted(self.lists.items())}}

    @classmethod
    def from_json_dict(cls, h: PartiteHypergraph, data: Mapping) -> "ListAssignment":
        try:
            raw = data["lists"]
        except (KeyError, TypeError) as exc:
            raise InvalidInputError("lists JSON missing key 'lists'") from exc
        parsed = {}
        for key, colors in raw.items():
            v = parse_vertex_key(key)
            for c in colors:
                if not isinstance(c, int) or c < 0:
                    raise InvalidInputError(
                        f"list for {key} holds {c!r}; colors are non-negative ints")
            parsed[v] = colors
        return cls(h, parsed)


def coloring_to_json_dict(phi: Mapping[Vertex, int]) -> dict:
    return {"colors": {vertex_key(Vertex(*v)): c for v, c in sorted(phi.items())}}


def coloring_from_json_dict(data: Mapping) -> dict[Vertex, int]:
    try:
        raw = data["colors"]
    except (KeyError, TypeError) as exc:
        raise InvalidInputError("coloring JSON missing key 'colors'") from exc
    return {parse_vertex_key(key): int(c) for key, c in raw.items()}


def check_partial_coloring(h: PartiteHypergraph, L: ListAssignment,
                           phi: Mapping[Vertex, int]) -> None:
    """Raise unless every assigned color belongs to its vertex's list."""
    for v, c in phi.items():
        if not h.has_vertex(v):
            raise InvalidInputError(f"coloring assigns unknown vertex {tuple(v)}")
        if c not in L[v]:
            raise InvalidInputError(
                f"vertex {tuple(v)} colored {c}, not in its list {sorted(L[v])}")


@dataclass(frozen=True)
class ColorDegreeProfile:
    """deg_H(v,c) for every vertex/list-color pair, plus per-part maxima D_i."""
    deg: dict
    part_max: tuple[int, ...]


def color_degree(h: PartiteHypergraph, L: ListAssignment, v: Vertex, c: int) -> int:
    """Edges through v in which every vertex's list contains c.

    c must be in L(v); asking about a foreign color is an error.
    """
    v = Vertex(*v)
    if c not in L[v]:
        raise InvalidInputError(f"color {c} not in list of {tuple(v)}")
    count = 0
    for rank in h.incident_edges(v):
        if all(c in L[u] for u in h.edges[rank]):
            count += 1
    return count


def color_degree_profile(h: PartiteHypergraph, L: ListAssignment) -> ColorDegreeProfile:
    deg = {}
    part_max = [0] * h.k
    for v in h.vertices():
        for c in L[v]:
            d = color_degree(h, L, v, c)
            deg[(v, c)] = d
            if d > part_max[v.part]:
                part_max[v.part] = d
    return ColorDegreeProfile(deg, tuple(part_max))


def sum_color_degrees(h: PartiteHypergraph, L: ListAssignment, v: Vertex) -> int:
    """Sum of deg_H(v,c) over c in L(v)."""
    v = Vertex(*v)
    return sum(color_degree(h, L, v, c) for c in L[v])


def blocked_colors(h: PartiteHypergraph, phi: Mapping[Vertex, int], v: Vertex) -> set[int]:
    """Colors carried monochromatically by some fully-colored edge remainder at v."""
    v = Vertex(*v)
    out: set[int] = set()
    for rank in h.incident_edges(v):
        others = [u for u in h.edges[rank] if u != v]
        it = iter(others)
        first = next(it)
        if first not in phi:
            continue
        c = phi[first]
        if all(u in phi and phi[u] == c for u in it):
            out.add(c)
    return out


def residual_lists(h: PartiteHypergraph, L: ListAssignment,
                   phi: Mapping[Vertex, int]) -> dict[Vertex, frozenset[int]]:
    """Residual list of every vertex under the partial coloring phi.

    Colored vertices map to their singleton. Edges with any uncolored
    vertex besides v never block a color at v.
    """
    check_partial_coloring(h, L, phi)
    out: dict[Vertex, frozenset[int]] = {}
    for v in h.vertices():
        if v in phi:
            out[v] = frozenset((phi[v],))
        else:
            out[v] = L[v] - blocked_colors(h, phi, v)
    return out


def is_proper_L_coloring(h: PartiteHypergraph, L: ListAssignment,
                         phi: Mapping[Vertex, int]) -> bool:
    """Proper coloring that also draws every color from the vertex's list."""
    if not all(Vertex(*v) in phi for v in h.vertices()):
        missing = next(v for v in h.vertices() if v not in phi)
        raise InvalidInputError(f"coloring is partial: vertex {tuple(missing)} unassigned")
    if any(phi[v] not in L[v] for v in h.vertices()):
        return False
    return is_proper_coloring(h, phi)
